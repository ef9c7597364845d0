"""Exact arithmetic over Q(sqrt 2): scalars, polynomials, symmetric matrices."""

from .matrix import SymMatrix, bareiss_rank, faddeev_leverrier, matmul, poly_at_matrix
from .poly import (
    Poly,
    Signature,
    descartes_signature,
    isolate_roots,
    poly_gcd,
    qs2_roots,
    real_root_signature,
    root_multiplicity,
    squarefree_decomposition,
    sturm_count_interval,
    sturm_signature,
)
from .qs2 import ONE, SQRT2, ZERO, QS2, pow2_half

__all__ = [
    "ONE", "SQRT2", "ZERO", "QS2", "pow2_half",
    "Poly", "Signature", "descartes_signature", "isolate_roots", "poly_gcd", "qs2_roots",
    "real_root_signature", "root_multiplicity", "squarefree_decomposition",
    "sturm_count_interval", "sturm_signature",
    "SymMatrix", "bareiss_rank", "faddeev_leverrier", "matmul", "poly_at_matrix",
]
