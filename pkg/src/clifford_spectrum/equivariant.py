"""The SO(2) x SO(2)-equivariant family Phi_{eta,nu} and its reduced bienergy."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exact import SQRT2, SymMatrix
from .oracle import SampledMap, bienergy, grid, richardson
from .operators import i2_apply
from .torus import S4, Frame, Section, TrigPoly, l2_inner, l2_scalar

ISOMETRY_TOL = 1e-12
GRADIENT_TOL = 1e-10
HESSIAN_ZERO_TOL = 1e-6


@dataclass(frozen=True)
class ReducedPoint:
    eta: float
    nu: float
    R1: float = 0.5
    R2: float = 0.5

    def __post_init__(self) -> None:
        if self.R1 <= 0 or self.R2 <= 0:
            raise ValueError("radii must be positive")
        if not (0 <= self.eta <= math.pi and 0 <= self.nu <= math.pi / 2):
            raise ValueError(f"({self.eta}, {self.nu}) lies outside the orbit-space sector")

    @property
    def isometric(self) -> bool:
        s = math.sin(self.eta)
        return (abs(self.R1 - s * math.sin(self.nu)) <= ISOMETRY_TOL
                and abs(self.R2 - s * math.cos(self.nu)) <= ISOMETRY_TOL)


def _coefficients(R1: float, R2: float) -> tuple[float, float, float, float, float]:
    a2, b2 = R1 * R1, R2 * R2
    c = 1.0 / (32 * a2 * a2 * b2 * b2)
    alpha = 5 * a2 * a2 - 2 * a2 * b2 + 5 * b2 * b2
    beta = 3 * a2 * a2 + 2 * a2 * b2 + 3 * b2 * b2
    delta2 = (a2 - b2) ** 2
    eps = a2 * a2 - b2 * b2
    return c, alpha, beta, delta2, eps


def reduced_bienergy(p: ReducedPoint) -> float:
    """Closed-form bienergy density of Phi_{eta,nu} (constant over the torus)."""
    c, alpha, beta, delta2, eps = _coefficients(p.R1, p.R2)
    se = math.sin(p.eta)
    return c * ((alpha + beta * math.cos(2 * p.eta)) * se ** 2
                - 2 * delta2 * math.cos(4 * p.nu) * se ** 4
                + 2 * eps * math.cos(2 * p.nu) * math.sin(2 * p.eta) ** 2)


def _gradient(eta, nu, R1: float, R2: float):
    """Partials of the reduced bienergy; accepts floats or numpy arrays for (eta, nu)."""
    c, alpha, beta, delta2, eps = _coefficients(R1, R2)
    se, ce = np.sin(eta), np.cos(eta)
    s2e = np.sin(2 * eta)
    d_eta = (-2 * beta * s2e * se ** 2
             + (alpha + beta * np.cos(2 * eta)) * s2e
             - 8 * delta2 * np.cos(4 * nu) * se ** 3 * ce
             + 4 * eps * np.cos(2 * nu) * np.sin(4 * eta))
    d_nu = 8 * delta2 * np.sin(4 * nu) * se ** 4 - 4 * eps * np.sin(2 * nu) * s2e ** 2
    return c * d_eta, c * d_nu


def reduced_gradient(p: ReducedPoint) -> tuple[float, float]:
    ge, gn = _gradient(p.eta, p.nu, p.R1, p.R2)
    return float(ge), float(gn)


def equivariant_map(p: ReducedPoint, n: int = 16) -> SampledMap:
    g, t = grid(n)
    a1 = math.sin(p.eta) * math.sin(p.nu)
    a2 = math.sin(p.eta) * math.cos(p.nu)
    vals = np.stack([a1 * np.cos(g), a1 * np.sin(g), a2 * np.cos(t), a2 * np.sin(t),
                     np.full_like(g, math.cos(p.eta))])
    return SampledMap(vals, radii=(p.R1, p.R2))


def quadrature_reduced_bienergy(p: ReducedPoint, n: int = 16) -> float:
    """Bienergy of the sampled Phi_{eta,nu} divided by the volume 4 pi^2 R1 R2."""
    return bienergy(equivariant_map(p, n)) / (4 * math.pi ** 2 * p.R1 * p.R2)


# -- critical points under the isometry constraint ------------------------------

def _residual(eta, nu, R1: float, R2: float) -> np.ndarray:
    """Stacked criticality and isometry residuals (vectorised over eta, nu)."""
    ge, gn = _gradient(eta, nu, R1, R2)
    s = np.sin(eta)
    return np.array([ge, gn, R1 - s * np.sin(nu), R2 - s * np.cos(nu)])


def _residual_jacobian(eta: float, nu: float, R1: float, R2: float, h: float = 1e-6) -> np.ndarray:
    cols = []
    for de, dn in ((h, 0.0), (0.0, h)):
        plus = _residual(eta + de, nu + dn, R1, R2)
        minus = _residual(eta - de, nu - dn, R1, R2)
        cols.append((plus - minus) / (2 * h))
    return np.stack(cols, axis=1)


def _in_open_sector(eta: float, nu: float) -> bool:
    return 0 < eta < math.pi / 2 and 0 < nu < math.pi / 2


def _gauss_newton(eta: float, nu: float, R1: float, R2: float, steps: int = 50) -> tuple[float, float] | None:
    for _ in range(steps):
        if not _in_open_sector(eta, nu):
            return None
        r = _residual(eta, nu, R1, R2)
        if np.max(np.abs(r)) < 1e-14:
            break
        jac = _residual_jacobian(eta, nu, R1, R2)
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        eta, nu = eta + step[0], nu + step[1]
    if not _in_open_sector(eta, nu):
        return None
    return eta, nu


def reduced_critical(R1: float, R2: float, coarse: int = 8) -> list[ReducedPoint]:
    """Isometric critical points of the reduced bienergy in the open sector."""
    if R1 <= 0 or R2 <= 0:
        raise ValueError("radii must be positive")
    found: list[ReducedPoint] = []
    ticks = [(k + 0.5) * (math.pi / 2) / coarse for k in range(coarse)]
    for e0 in ticks:
        for n0 in ticks:
            sol = _gauss_newton(e0, n0, R1, R2)
            if sol is None:
                continue
            p = ReducedPoint(float(sol[0]), float(sol[1]), R1, R2)
            grad = reduced_gradient(p)
            if max(abs(grad[0]), abs(grad[1])) > GRADIENT_TOL or not p.isometric:
                continue
            if all(abs(p.eta - q.eta) > 1e-8 or abs(p.nu - q.nu) > 1e-8 for q in found):
                found.append(p)
    return sorted(found, key=lambda q: (q.eta, q.nu))


def scan_isometric_critical(R1: float, R2: float, n: int = 400,
                            tol: float | None = None) -> list[tuple[float, float]]:
    """Dense grid scan of the open sector for near-zeros of the stacked residual.

    Returns the grid minimiser of each connected cluster of grid points whose
    residual lies below ``tol`` (by default a multiple of the grid spacing).
    """
    h = (math.pi / 2) / n
    tol = 20 * h if tol is None else tol
    ticks = (np.arange(n) + 0.5) * h
    e, v = np.meshgrid(ticks, ticks, indexing="ij")
    res = np.max(np.abs(_residual(e, v, R1, R2)), axis=0)
    mask = res < tol
    seen = np.zeros_like(mask)
    reps = []
    for i, j in zip(*np.nonzero(mask)):
        if seen[i, j]:
            continue
        stack, best = [(i, j)], (i, j)
        seen[i, j] = True
        while stack:
            a, b = stack.pop()
            if res[a, b] < res[best]:
                best = (a, b)
            for x in range(max(a - 1, 0), min(a + 2, n)):
                for y in range(max(b - 1, 0), min(b + 2, n)):
                    if mask[x, y] and not seen[x, y]:
                        seen[x, y] = True
                        stack.append((x, y))
        reps.append((float(ticks[best[0]]), float(ticks[best[1]])))
    return reps


# -- Hessian ---------------------------------------------------------------------

@dataclass
class ReducedHessian:
    point: ReducedPoint
    matrix: np.ndarray
    critical: bool
    note: str

    @property
    def index(self) -> int:
        return int(np.sum(np.linalg.eigvalsh(self.matrix) < -HESSIAN_ZERO_TOL))

    @property
    def nullity(self) -> int:
        return int(np.sum(np.abs(np.linalg.eigvalsh(self.matrix)) <= HESSIAN_ZERO_TOL))


def reduced_hessian(p: ReducedPoint, h: float = 1e-2) -> ReducedHessian:
    """Second partials of the reduced bienergy in (eta, nu) by Richardson central differences."""

    def f(e: float, v: float) -> float:
        return reduced_bienergy(ReducedPoint(e, v, p.R1, p.R2))

    e0, v0 = p.eta, p.nu
    f0 = f(e0, v0)
    hee = richardson(lambda k: (f(e0 + k, v0) - 2 * f0 + f(e0 - k, v0)) / (k * k), h)
    hvv = richardson(lambda k: (f(e0, v0 + k) - 2 * f0 + f(e0, v0 - k)) / (k * k), h)
    hev = richardson(lambda k: (f(e0 + k, v0 + k) - f(e0 + k, v0 - k)
                                - f(e0 - k, v0 + k) + f(e0 - k, v0 - k)) / (4 * k * k), h)
    grad = reduced_gradient(p)
    critical = max(abs(grad[0]), abs(grad[1])) <= 1e-8
    note = "" if critical else f"point is not critical: gradient = ({grad[0]:.3e}, {grad[1]:.3e})"
    if not critical:
        warnings.warn(note, RuntimeWarning, stacklevel=2)
    return ReducedHessian(p, np.array([[hee, hev], [hev, hvv]]), critical, note)


def exact_hessian_pairings() -> SymMatrix:
    """The reduced Hessian at the Clifford point from exact I2 pairings.

    The tangent vectors d/d eta and d/d nu of the orbit space correspond to
    V_eta and V_nu / sqrt 2; pairings are divided by the torus volume.
    """
    eta = Section.frame(S4, Frame.ETA)
    nu = Section.frame(S4, Frame.NU) * (SQRT2.inverse())
    vol = l2_scalar(TrigPoly.const(1), TrigPoly.const(1))
    vecs = (eta, nu)
    return SymMatrix([[l2_inner(i2_apply(a), b) / vol for b in vecs] for a in vecs])


CLIFFORD_POINT = ReducedPoint(math.pi / 4, math.pi / 4, 0.5, 0.5)

__all__ = [
    "CLIFFORD_POINT", "ReducedHessian", "ReducedPoint", "equivariant_map", "exact_hessian_pairings",
    "quadrature_reduced_bienergy", "reduced_bienergy", "reduced_critical", "reduced_gradient",
    "reduced_hessian", "scan_isometric_critical",
]
