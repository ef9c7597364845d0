"""Second-variation operators acting on band-limited sections.

``i2_apply`` assembles the bienergy Jacobi operator along Phi from its thirteen
generic terms; the ``*_closed_form`` functions are the eigenfunction formulas,
kept as an independent path for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Real

from .errors import ExactModeError, InconsistencyError, NotEigenfunctionError
from .exact import QS2, SQRT2, pow2_half
from .torus import (
    DIRECTIONS,
    GAMMA_DIR,
    S3,
    S4,
    THETA_DIR,
    Frame,
    Section,
    TrigPoly,
    covariant_derivative,
    directional,
    l2_inner,
    l2_scalar,
    pointwise_inner,
    rough_laplacian,
)

# dPhi(X_gamma) = V_gamma, dPhi(X_theta) = V_theta
_DPHI = {GAMMA_DIR: Frame.GAMMA, THETA_DIR: Frame.THETA}
ENERGY_DENSITY = 2  # |dPhi|^2 for an isometric immersion of a surface


@dataclass(frozen=True)
class OperatorKind:
    """Which second-variation operator: ``I2``, ``J``, ``Jp`` (with p) or ``I2Projected``."""

    name: str
    p: float | int | None = None

    def __post_init__(self) -> None:
        if self.name not in ("I2", "J", "Jp", "I2Projected"):
            raise ValueError(f"unknown operator {self.name!r}")
        if self.name == "Jp":
            if self.p is None or not isinstance(self.p, Real):
                raise ValueError("Jp needs a real exponent p")
            if self.p < 1:
                raise ValueError(f"p must be >= 1, got {self.p}")
            if float(self.p).is_integer():
                object.__setattr__(self, "p", int(self.p))

    @classmethod
    def i2(cls) -> OperatorKind:
        return cls("I2")

    @classmethod
    def j(cls) -> OperatorKind:
        return cls("J")

    @classmethod
    def jp(cls, p: float) -> OperatorKind:
        return cls("Jp", p)

    @classmethod
    def i2_projected(cls) -> OperatorKind:
        return cls("I2Projected")

    @property
    def target(self) -> str:
        return S4 if self.name == "I2" else S3

    @property
    def exact(self) -> bool:
        return self.name != "Jp" or isinstance(self.p, int)

    def __str__(self) -> str:
        return f"Jp(p={self.p})" if self.name == "Jp" else self.name


def _frame(target: str, e: Frame, coef=1) -> Section:
    return Section.frame(target, e, coef)


def tangent_part(v: Section) -> Section:
    """``trace <V, dPhi .> dPhi .``: keep the V_gamma and V_theta components."""
    comps = [v.comps[0], v.comps[1]] + [TrigPoly()] * (len(v.comps) - 2)
    return Section(v.target, comps)


def tension_s4() -> Section:
    """tau(Phi) = -2 V_eta."""
    return _frame(S4, Frame.ETA, -2)


def energy_pairing(v: Section) -> TrigPoly:
    """The function ``<dV, dPhi> = sum_i <nabla_{X_i} V, dPhi(X_i)>``."""
    acc = TrigPoly()
    for d in DIRECTIONS:
        acc = acc + covariant_derivative(d, v)[_DPHI[d]]
    return acc


def i2_terms(v: Section) -> dict[str, Section]:
    """The thirteen terms of the bienergy Jacobi operator along Phi, keyed I..XIII."""
    if v.target != S4:
        raise ValueError("I2 acts on sections along Phi (target S4)")
    tau = tension_s4()
    dphi2 = ENERGY_DENSITY
    tau2 = pointwise_inner(tau, tau)
    lap_v = rough_laplacian(v)
    tv = tangent_part(v)
    nabla = {d: covariant_derivative(d, v) for d in DIRECTIONS}
    dtau = {d: covariant_derivative(d, tau) for d in DIRECTIONS}
    dtau_dphi = TrigPoly()
    for d in DIRECTIONS:
        dtau_dphi = dtau_dphi + dtau[d][_DPHI[d]]

    def along_dphi(fn) -> Section:
        acc = Section(S4)
        for d in DIRECTIONS:
            acc = acc + _frame(S4, _DPHI[d], fn(d))
        return acc

    return {
        "I": rough_laplacian(lap_v),
        "II": rough_laplacian(tv - v * dphi2),
        "III": v * (dtau_dphi * 2),
        "IV": v * tau2,
        "V": along_dphi(lambda d: pointwise_inner(v, dtau[d]) * (-2)),
        "VI": along_dphi(lambda d: pointwise_inner(tau, nabla[d]) * (-2)),
        "VII": tau * (-pointwise_inner(tau, v)),
        "VIII": tangent_part(lap_v),
        "IX": tangent_part(tv),
        "X": tv * (-2 * dphi2),
        "XI": tau * (energy_pairing(v) * 2),
        "XII": lap_v * (-dphi2),
        "XIII": v * (dphi2 * dphi2),
    }


def i2_apply(v: Section) -> Section:
    acc = Section(S4)
    for term in i2_terms(v).values():
        acc = acc + term
    return acc


def _eigen_lambda(f: TrigPoly) -> int:
    lam = f.eigenvalue()
    if lam is None or f.laplace() != f.scale(lam):
        raise NotEigenfunctionError("closed forms need a Laplace eigenfunction")
    return lam


def i2_closed_form(f: TrigPoly, e: Frame) -> Section:
    """``I2(f V_e)`` from the eigenfunction formulas (f must satisfy Delta f = lambda f)."""
    lam = _eigen_lambda(f)
    fg, ft = f.d_gamma(), f.d_theta()
    fgg, ftt, fgt = fg.d_gamma(), ft.d_theta(), fg.d_theta()
    s2 = SQRT2
    cross = fgg.scale(-16 * s2) + ftt.scale(16 * s2)
    if e == Frame.GAMMA:
        comps = [f.scale(lam * (4 + lam)) - fgg.scale(48), fgt.scale(16),
                 fg.scale(8 * s2 * (2 + lam)), fg.scale(8 * lam)]
    elif e == Frame.THETA:
        comps = [fgt.scale(16), f.scale(lam * (4 + lam)) - ftt.scale(48),
                 ft.scale(-8 * s2 * (2 + lam)), ft.scale(8 * lam)]
    elif e == Frame.NU:
        comps = [fg.scale(-8 * s2 * (2 + lam)), ft.scale(8 * s2 * (2 + lam)),
                 f.scale(lam * (12 + lam)), cross]
    else:
        comps = [fg.scale(-8 * lam), ft.scale(-8 * lam), cross,
                 f.scale(lam * lam + 4 * lam - 16)]
    return Section(S4, comps)


# -- operators along phi: T -> S^3(1/sqrt 2) -----------------------------------

def jacobi_apply(v: Section) -> Section:
    """Harmonic-map Jacobi operator ``J V = rough_laplacian(V) - 4 V + 2 V^T``."""
    if v.target != S3:
        raise ValueError("J acts on sections along phi (target S3)")
    return rough_laplacian(v) - v * 4 + tangent_part(v) * 2


def jacobi_closed_form(f: TrigPoly, e: Frame) -> Section:
    lam = _eigen_lambda(f)
    fg, ft = f.d_gamma(), f.d_theta()
    s2 = SQRT2
    if e == Frame.GAMMA:
        comps = [f.scale(lam), TrigPoly(), fg.scale(4 * s2)]
    elif e == Frame.THETA:
        comps = [TrigPoly(), f.scale(lam), ft.scale(-4 * s2)]
    elif e == Frame.NU:
        comps = [fg.scale(-4 * s2), ft.scale(4 * s2), f.scale(lam)]
    else:
        raise ValueError("S3 sections have no V_eta component")
    return Section(S3, comps)


def divergence_function(v: Section) -> TrigPoly:
    """``h = <dV, dphi>``, which equals div(xi) with dphi(xi) = V^T."""
    return energy_pairing(v)


def dstar_term(v: Section) -> Section:
    """``d*(<dV, dphi> dphi) = -X_gamma(h) V_gamma - X_theta(h) V_theta``.

    The ``-h tau(phi)`` contribution vanishes because phi is minimal.
    """
    h = divergence_function(v)
    return Section(S3, [-directional(GAMMA_DIR, h), -directional(THETA_DIR, h), TrigPoly()])


def jp_coefficients(p) -> tuple[QS2, QS2]:
    """Exact ``((p-2) 2^((p-4)/2), 2^((p-2)/2))`` for integer p."""
    if not float(p).is_integer():
        raise ExactModeError(f"p={p} is not an integer; use the floating-point path")
    p = int(p)
    return pow2_half(p - 4) * (p - 2), pow2_half(p - 2)


def jp_coefficients_float(p: float) -> tuple[float, float]:
    return (p - 2) * 2.0 ** ((p - 4) / 2), 2.0 ** ((p - 2) / 2)


def jp_apply(p, v: Section) -> Section:
    """Jacobi operator of the p-energy at phi (exact for integer p)."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    c_div, c_jac = jp_coefficients(p)
    return dstar_term(v) * c_div + jacobi_apply(v) * c_jac


def jp_closed_form(p, f: TrigPoly, e: Frame) -> Section:
    c_div, c_jac = jp_coefficients(p)
    _eigen_lambda(f)
    fg, ft = f.d_gamma(), f.d_theta()
    j = jacobi_closed_form(f, e)
    if e == Frame.GAMMA:
        extra = Section(S3, [fg.d_gamma().scale(4), fg.d_theta().scale(4), TrigPoly()])
    elif e == Frame.THETA:
        extra = Section(S3, [fg.d_theta().scale(4), ft.d_theta().scale(4), TrigPoly()])
    else:
        extra = Section(S3)
    return extra * (-c_div) + j * c_jac


def i2_projected_apply(v: Section) -> Section:
    """Projected bienergy operator ``J^2 V + 4 J V + 4 d*(<dV, dphi> dphi)``."""
    jv = jacobi_apply(v)
    return jacobi_apply(jv) + jv * 4 + dstar_term(v) * 4


def divergence_pairing(v: Section) -> QS2:
    """``(d*(<dV, dphi> dphi), V)`` in units of pi^2, checked against ``int h^2``."""
    left = l2_inner(dstar_term(v), v)
    h = divergence_function(v)
    right = l2_scalar(h, h)
    if left != right:
        raise InconsistencyError(f"divergence identity fails: {left} != {right}")
    return left


def apply(op: OperatorKind, v: Section) -> Section:
    """Dispatch to the exact operator for ``op``."""
    if op.name == "I2":
        return i2_apply(v)
    if op.name == "J":
        return jacobi_apply(v)
    if op.name == "Jp":
        if not op.exact:
            raise ExactModeError(f"{op} has non-integer p; use the floating-point path")
        return jp_apply(op.p, v)
    return i2_projected_apply(v)


__all__ = [
    "OperatorKind", "apply", "divergence_function", "divergence_pairing", "dstar_term",
    "energy_pairing", "i2_apply", "i2_closed_form", "i2_projected_apply", "i2_terms",
    "jacobi_apply", "jacobi_closed_form", "jp_apply", "jp_closed_form", "jp_coefficients",
    "jp_coefficients_float", "tangent_part", "tension_s4",
]
