"""Exact second-variation spectra of the biharmonic Clifford torus in S^4."""

__version__ = "0.1.0"
