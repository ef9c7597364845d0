"""Killing-generated Jacobi fields along Phi and the exact structure of Ker(I2)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistencyError
from .exact import QS2, SQRT2, SymMatrix
from .operators import OperatorKind, apply, i2_apply
from .torus import S3, S4, Frame, Section, TrigPoly, ambient_map, from_ambient, l2_inner

_H = Fraction(1, 2)
_R = SQRT2 * _H  # 1/sqrt 2

# frame expansions: frame -> [(monomial kind, m, n, coefficient)]
_EXPANSIONS: dict[int, dict[Frame, list[tuple[str, int, int, QS2 | Fraction]]]] = {
    1: {Frame.GAMMA: [("cc", 0, 0, _H)]},
    2: {Frame.THETA: [("cc", 0, 0, _H)]},
    3: {Frame.GAMMA: [("ss", 1, 1, _H)], Frame.THETA: [("cc", 1, 1, _H)], Frame.NU: [("cs", 1, 1, -_R)]},
    4: {Frame.GAMMA: [("cc", 1, 1, -_H)], Frame.THETA: [("ss", 1, 1, -_H)], Frame.NU: [("sc", 1, 1, -_R)]},
    5: {Frame.GAMMA: [("sc", 1, 1, _H)], Frame.THETA: [("cs", 1, 1, -_H)], Frame.NU: [("cc", 1, 1, -_R)]},
    6: {Frame.GAMMA: [("cs", 1, 1, -_H)], Frame.THETA: [("sc", 1, 1, _H)], Frame.NU: [("ss", 1, 1, -_R)]},
    7: {Frame.GAMMA: [("cc", 1, 0, -_R)], Frame.NU: [("sc", 1, 0, -_H)], Frame.ETA: [("sc", 1, 0, -_R)]},
    8: {Frame.GAMMA: [("sc", 1, 0, _R)], Frame.NU: [("cc", 1, 0, -_H)], Frame.ETA: [("cc", 1, 0, -_R)]},
    9: {Frame.THETA: [("cc", 0, 1, -_R)], Frame.NU: [("cs", 0, 1, _H)], Frame.ETA: [("cs", 0, 1, -_R)]},
    10: {Frame.THETA: [("cs", 0, 1, _R)], Frame.NU: [("cc", 0, 1, _H)], Frame.ETA: [("cc", 0, 1, -_R)]},
}

# Z_i(y) = A_i y with A_i antisymmetric: A[row][col] = 1 and A[col][row] = -1
_GENERATORS: dict[int, tuple[int, int]] = {
    1: (1, 0), 2: (3, 2), 3: (3, 0), 4: (2, 1), 5: (2, 0),
    6: (3, 1), 7: (4, 1), 8: (4, 0), 9: (4, 3), 10: (4, 2),
}


def killing_generator(i: int) -> list[list[int]]:
    """The 5x5 antisymmetric matrix of the i-th rotation field on R^5."""
    if i not in _GENERATORS:
        raise ValueError(f"Killing field index must be in 1..10, got {i}")
    r, c = _GENERATORS[i]
    a = [[0] * 5 for _ in range(5)]
    a[r][c], a[c][r] = 1, -1
    return a


@dataclass(frozen=True)
class KillingSection:
    id: int
    frame_expr: Section


def _from_expansion(i: int) -> Section:
    comps = {e: sum((TrigPoly.mono(k, m, n, c) for k, m, n, c in terms), TrigPoly())
             for e, terms in _EXPANSIONS[i].items()}
    return Section(S4, comps)


def _from_generator(i: int) -> Section:
    a = killing_generator(i)
    y = ambient_map(S4)
    z = [sum((y[j].scale(a[r][j]) for j in range(5) if a[r][j]), TrigPoly()) for r in range(5)]
    normal = sum((z[k] * y[k] for k in range(5)), TrigPoly())
    if normal:
        raise InconsistencyError(f"Z_{i} is not tangent to the sphere along Phi")
    return from_ambient(z, S4)


def killing_sections() -> list[KillingSection]:
    """V_1..V_10, built from the frame expansions and checked against Z_i(Phi)."""
    out = []
    for i in range(1, 11):
        hard = _from_expansion(i)
        built = _from_generator(i)
        if hard != built:
            raise InconsistencyError(f"V_{i}: frame expansion {hard!r} != composed field {built!r}")
        out.append(KillingSection(i, hard))
    return out


def nu_section() -> Section:
    return Section.frame(S4, Frame.NU)


@dataclass
class KernelReport:
    i2_residuals: dict[str, Section]
    gram: SymMatrix
    rank: int
    orthogonal: bool
    dphi_ok: bool
    projected_kernel: dict[str, bool]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_kernel() -> KernelReport:
    """Exact checks that V_1..V_10 and V_nu span an 11-dimensional subspace of Ker(I2)."""
    fields = {f"V{k.id}": k.frame_expr for k in killing_sections()}
    fields["Vnu"] = nu_section()
    names = list(fields)
    failures = []

    residuals = {name: i2_apply(v) for name, v in fields.items()}
    for name, r in residuals.items():
        if r:
            failures.append(f"I2({name}) = {r!r} is not zero")

    gram_rows = [[l2_inner(fields[a], fields[b]) for b in names] for a in names]
    gram = SymMatrix(gram_rows)
    orthogonal = True
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if i != j and gram_rows[i][j]:
                orthogonal = False
                failures.append(f"({a}, {b}) = {gram_rows[i][j]} is not zero")
    rank = gram.rank()
    if rank != len(names):
        failures.append(f"Gram rank {rank} != {len(names)}")

    dphi_ok = (fields["V1"] * 2 == Section.frame(S4, Frame.GAMMA)
               and fields["V2"] * 2 == Section.frame(S4, Frame.THETA))
    if not dphi_ok:
        failures.append("dPhi(X_gamma) = 2 V1 or dPhi(X_theta) = 2 V2 fails")

    # the fields with no V_eta component live along phi and are killed by the projected operator
    projected = {}
    for name, v in fields.items():
        if v[Frame.ETA]:
            projected[name] = False
            continue
        projected[name] = not apply(OperatorKind.i2_projected(), v.restrict(S3))
        if not projected[name]:
            failures.append(f"I2Projected({name}) is not zero")
    return KernelReport(residuals, gram, rank, orthogonal, dphi_ok, projected, failures)


__all__ = ["KernelReport", "KillingSection", "killing_generator", "killing_sections",
           "nu_section", "verify_kernel"]
