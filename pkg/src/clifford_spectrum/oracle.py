"""Floating-point oracle: bienergy by spectral quadrature and finite-difference variations.

Nothing here uses the exact operator pipeline; maps are sampled on a uniform
N x N grid in (gamma, theta), derivatives in (gamma, theta) are spectral and
derivatives in the variation parameters are Richardson-extrapolated central
differences.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exact import QS2
from .torus import S3, S4, Frame, Section, TrigPoly, ambient_map, to_ambient

PI2 = math.pi ** 2
DEFAULT_STEP = 1e-2
DEFAULT_GRID = 16
HESSIAN_GRID = 32
UNIT_TOL = 1e-12


def grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    t = 2 * np.pi * np.arange(n) / n
    return np.meshgrid(t, t, indexing="ij")


def _check_grid_size(n: int) -> None:
    if n < 8 or n & (n - 1):
        raise ValueError(f"grid size must be a power of two >= 8, got {n}")


@dataclass
class SampledMap:
    """Samples ``values[k, i, j]`` of a map into a round sphere, on S^1(R1) x S^1(R2).

    ``radius`` is the radius of the target sphere.
    """

    values: np.ndarray
    radii: tuple[float, float] = (0.5, 0.5)
    radius: float = 1.0

    def __post_init__(self) -> None:
        n = self.values.shape[-1]
        _check_grid_size(n)
        if self.values.shape[-2] != n:
            raise ValueError("grid must be square")
        norms = np.sqrt(np.sum(self.values ** 2, axis=0))
        err = float(np.max(np.abs(norms - self.radius)))
        if err > UNIT_TOL:
            raise ValueError(f"samples leave the sphere (max norm error {err:.3e})")

    @property
    def n(self) -> int:
        return self.values.shape[-1]

    @property
    def cell(self) -> float:
        """Riemannian area of one grid cell."""
        h = 2 * np.pi / self.n
        return self.radii[0] * self.radii[1] * h * h


def sample_trig(f: TrigPoly, n: int) -> np.ndarray:
    g, t = grid(n)
    return f.evaluate(g, t)


def sample_vector(vec: Sequence[TrigPoly], n: int) -> np.ndarray:
    return np.stack([sample_trig(f, n) for f in vec])


def sample_section(v: Section, n: int) -> np.ndarray:
    """Cartesian samples of a section along Phi (or phi)."""
    return sample_vector(to_ambient(v), n)


def sample_phi(n: int, target: str = S4) -> np.ndarray:
    return sample_vector(ambient_map(target), n)


def clifford_map(n: int = DEFAULT_GRID) -> SampledMap:
    return SampledMap(sample_phi(n))


def _spectral_derivative(a: np.ndarray, axis: int, order: int) -> np.ndarray:
    n = a.shape[axis]
    k = np.fft.fftfreq(n, 1.0 / n)
    if order % 2:
        k[n // 2] = 0.0  # Nyquist mode has no odd derivative on the grid
    shape = [1] * a.ndim
    shape[axis] = n
    mult = ((1j * k) ** order).reshape(shape)
    return np.real(np.fft.ifft(np.fft.fft(a, axis=axis) * mult, axis=axis))


def tension(m: SampledMap) -> np.ndarray:
    """``tau = -Delta phi + |d phi|^2 phi / r^2`` for a map into the sphere of radius r."""
    y = m.values
    s1, s2 = 1.0 / m.radii[0] ** 2, 1.0 / m.radii[1] ** 2
    yg = _spectral_derivative(y, 1, 1)
    yt = _spectral_derivative(y, 2, 1)
    lap = -(s1 * _spectral_derivative(y, 1, 2) + s2 * _spectral_derivative(y, 2, 2))
    energy = s1 * np.sum(yg ** 2, axis=0) + s2 * np.sum(yt ** 2, axis=0)
    return -lap + energy * y / m.radius ** 2


def tau_squared(m: SampledMap) -> np.ndarray:
    return np.sum(tension(m) ** 2, axis=0)


def bienergy(m: SampledMap) -> float:
    """``(1/2) int |tau|^2 dV`` by the trapezoid rule."""
    return 0.5 * float(np.sum(tau_squared(m))) * m.cell


# -- variations ----------------------------------------------------------------

def normalized_linear(base: np.ndarray, direction: np.ndarray, t: float) -> np.ndarray:
    y = base + t * direction
    return y / np.sqrt(np.sum(y ** 2, axis=0))


def sphere_exp(base: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Exponential map of the unit sphere applied pointwise."""
    r = np.sqrt(np.sum(u ** 2, axis=0))
    small = r < 1e-6
    r_safe = np.where(small, 1.0, r)
    sinc = np.where(small, 1.0 - r ** 2 / 6.0, np.sin(r_safe) / r_safe)
    return np.cos(r) * base + sinc * u


def phi_t(t: float, n: int = DEFAULT_GRID) -> SampledMap:
    """The normalised linear variation of Phi along V_nu."""
    base = sample_phi(n)
    nu = sample_section(Section.frame(S4, Frame.NU), n)
    return SampledMap(normalized_linear(base, nu, t))


def closed_form_bienergy_phi_t(t: float) -> float:
    return (2 + 4 * t * t) / (1 + t * t) ** 2 * PI2


def closed_form_tau_squared_phi_t(t: float) -> float:
    return (4 + 8 * t * t) / (1 + t * t) ** 2


_STENCILS = {
    1: ({1: 1, -1: -1}, 2),
    2: ({1: 1, 0: -2, -1: 1}, 1),
    3: ({2: 1, 1: -2, -1: 2, -2: -1}, 2),
    4: ({2: 1, 1: -4, 0: 6, -1: -4, -2: 1}, 1),
}


def central_difference(f: Callable[[float], float], order: int, h: float) -> float:
    weights, denom = _STENCILS[order]
    return sum(w * f(k * h) for k, w in weights.items()) / (denom * h ** order)


def richardson(estimate: Callable[[float], float], h: float, levels: int = 2) -> float:
    """Eliminate the h^2, h^4, ... error terms of a second-order estimate."""
    table = [estimate(h / 2 ** k) for k in range(levels + 1)]
    for lev in range(1, levels + 1):
        f = 4 ** lev
        table = [(f * table[k + 1] - table[k]) / (f - 1) for k in range(len(table) - 1)]
    return table[0]


def _roundoff_warning(scale: float, order: int, h: float, tol: float) -> None:
    h_min = h / 4
    noise = np.finfo(float).eps * max(abs(scale), 1.0) / h_min ** order
    if noise > tol:
        rec = (np.finfo(float).eps * max(abs(scale), 1.0) / tol) ** (1.0 / order) * 4
        warnings.warn(f"step {h:g} is roundoff-dominated for order {order}; use h >= {rec:.2g}",
                      RuntimeWarning, stacklevel=3)


def taylor_coefficients(order: int) -> list[Fraction]:
    """Exact Taylor coefficients of ``(2 + 4t^2)/(1 + t^2)^2`` up to ``t^order``."""
    # 1/(1+u)^2 = sum (-1)^k (k+1) u^k with u = t^2
    inv = [Fraction(0)] * (order + 1)
    for k in range(0, order // 2 + 1):
        inv[2 * k] = Fraction((-1) ** k * (k + 1))
    num = [Fraction(2), Fraction(0), Fraction(4)]
    out = [Fraction(0)] * (order + 1)
    for i, a in enumerate(num):
        for j, b in enumerate(inv):
            if i + j <= order:
                out[i + j] += a * b
    return out


def exact_variation_derivative(order: int) -> Fraction:
    """``d^order/dt^order E_2(Phi_t)`` at t = 0, in units of pi^2, from the closed form."""
    return taylor_coefficients(order)[order] * math.factorial(order)


@dataclass
class VariationResult:
    order: int
    value: float
    closed_form: float
    step: float


def variation_derivatives(order: int, h: float = DEFAULT_STEP, n: int = DEFAULT_GRID) -> VariationResult:
    """Derivative of ``t -> E_2(Phi_t)`` at 0 by Richardson-extrapolated central differences."""
    if order not in _STENCILS:
        raise ValueError("order must be 1, 2, 3 or 4")
    base = sample_phi(n)
    nu = sample_section(Section.frame(S4, Frame.NU), n)
    cache: dict[float, float] = {}

    def energy(t: float) -> float:
        if t not in cache:
            cache[t] = bienergy(SampledMap(normalized_linear(base, nu, t)))
        return cache[t]

    expected = float(exact_variation_derivative(order)) * PI2
    _roundoff_warning(energy(0.0), order, h, max(1e-6 * PI2, 1e-4 * abs(expected)))
    value = richardson(lambda s: central_difference(energy, order, s), h)
    return VariationResult(order, value, expected, h)


# -- Hessian -------------------------------------------------------------------

def _as_samples(v: Section | np.ndarray, n: int) -> np.ndarray:
    if isinstance(v, Section):
        if v.target != S4:
            raise ValueError("Hessian variations are sections along Phi")
        return sample_section(v, n)
    if v.shape != (5, n, n):
        raise ValueError(f"expected samples of shape (5, {n}, {n})")
    return v


def fd_hessian(v: Section | np.ndarray, w: Section | np.ndarray,
               h: float = DEFAULT_STEP, n: int = HESSIAN_GRID) -> float:
    """Mixed second derivative of the bienergy over ``exp_Phi(t V + s W)`` at (0, 0)."""
    _check_grid_size(n)
    base = sample_phi(n)
    vs, ws = _as_samples(v, n), _as_samples(w, n)

    def energy(t: float, s: float) -> float:
        return bienergy(SampledMap(sphere_exp(base, t * vs + s * ws)))

    def mixed(k: float) -> float:
        return (energy(k, k) - energy(k, -k) - energy(-k, k) + energy(-k, -k)) / (4 * k * k)

    _roundoff_warning(energy(0.0, 0.0), 2, h, 1e-6 * PI2)
    return richardson(mixed, h)


# -- conformal fields along phi -----------------------------------------------

def conformal_field(a: Sequence[float], n: int = DEFAULT_GRID) -> np.ndarray:
    """Samples of ``V_a = a - 2 <a, phi> phi`` along phi into S^3(1/sqrt 2)."""
    phi = sample_phi(n, S3)
    a = np.asarray(a, dtype=float).reshape(4, 1, 1)
    return a - 2 * np.sum(a * phi, axis=0) * phi


def _frame_samples(n: int) -> tuple[np.ndarray, np.ndarray]:
    return (sample_section(Section.frame(S3, Frame.GAMMA), n),
            sample_section(Section.frame(S3, Frame.THETA), n))


def jacobi_form(v: np.ndarray, w: np.ndarray | None = None) -> float:
    """``(J V, W)`` along phi via the weak form ``int <nabla V, nabla W> - 4 <V, W> + 2 <V^T, W^T>``."""
    w = v if w is None else w
    n = v.shape[-1]
    phi = sample_phi(n, S3)
    vg, vt = _frame_samples(n)
    cell = 0.25 * (2 * np.pi / n) ** 2

    def cov(x: np.ndarray, axis: int, dphi: np.ndarray) -> np.ndarray:
        # nabla_X V = dV(X) + 2 <V, dphi(X)> phi on the sphere of radius 1/sqrt 2
        return 2 * _spectral_derivative(x, axis, 1) + 2 * np.sum(x * dphi, axis=0) * phi

    grad = sum(np.sum(cov(v, ax, d) * cov(w, ax, d), axis=0) for ax, d in ((1, vg), (2, vt)))
    tang = sum(np.sum(v * d, axis=0) * np.sum(w * d, axis=0) for d in (vg, vt))
    integrand = grad - 4 * np.sum(v * w, axis=0) + 2 * tang
    return float(np.sum(integrand)) * cell


def l2_pairing(v: np.ndarray, w: np.ndarray) -> float:
    n = v.shape[-1]
    return float(np.sum(v * w)) * 0.25 * (2 * np.pi / n) ** 2


@dataclass
class RayleighResult:
    numerator: float
    denominator: float
    quotient: float


def conformal_rayleigh(a: Sequence[float], n: int = DEFAULT_GRID) -> RayleighResult:
    """``((J V_a, V_a), (V_a, V_a), ratio)`` by quadrature."""
    if len(a) != 4:
        raise ValueError("a must have four components")
    if not any(a):
        raise ValueError("a must be nonzero")
    v = conformal_field(a, n)
    num = jacobi_form(v)
    den = l2_pairing(v, v)
    return RayleighResult(num, den, num / den)


def mu1_eigenbasis() -> list[Section]:
    """Unnormalised basis of the J-eigenspace for the eigenvalue 4 - 4 sqrt 2."""
    cg, sg = TrigPoly.mono("cc", 1, 0), TrigPoly.mono("sc", 1, 0)
    ct, st = TrigPoly.mono("cc", 0, 1), TrigPoly.mono("cs", 0, 1)
    G, T, N = Frame.GAMMA, Frame.THETA, Frame.NU
    return [
        Section(S3, {G: cg, N: sg}),
        Section(S3, {G: -sg, N: cg}),
        Section(S3, {T: -ct, N: st}),
        Section(S3, {T: st, N: ct}),
    ]


MU1 = QS2(4, -4)


def conformal_mu1_gram(n: int = DEFAULT_GRID) -> np.ndarray:
    """8 x 8 quadrature Gram matrix of the conformal fields V_{e_k} and the mu_1-eigenfields."""
    fields = [conformal_field(np.eye(4)[k], n) for k in range(4)]
    fields += [sample_section(w, n) for w in mu1_eigenbasis()]
    return np.array([[l2_pairing(a, b) for b in fields] for a in fields])


def numeric_rank(mat: np.ndarray, rtol: float = 1e-10) -> int:
    s = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(s > rtol * s[0]))


__all__ = [
    "MU1", "PI2", "RayleighResult", "SampledMap", "VariationResult", "bienergy", "central_difference",
    "clifford_map", "closed_form_bienergy_phi_t", "closed_form_tau_squared_phi_t", "conformal_field",
    "conformal_mu1_gram", "conformal_rayleigh", "exact_variation_derivative", "fd_hessian",
    "jacobi_form", "l2_pairing", "mu1_eigenbasis", "normalized_linear", "numeric_rank", "phi_t",
    "richardson", "sample_phi", "sample_section", "sample_trig", "sample_vector", "sphere_exp",
    "tau_squared", "taylor_coefficients", "tension", "variation_derivatives",
]

