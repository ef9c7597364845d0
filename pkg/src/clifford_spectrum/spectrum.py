"""Invariant-block spectra: index and nullity of the second-variation operators.

Every operator here preserves the subspaces S^{m,n} of sections whose
components lie in the Laplace eigenspace spanned by the frequency-(m, n)
product monomials.  Each restricted operator is assembled as an exact
symmetric matrix in the orthonormal basis ordered frame-major
(V_gamma, V_theta, V_nu[, V_eta]) and, within a frame, cc, cs, sc, ss.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ExactModeError, InconsistencyError
from .exact import ZERO, Poly, QS2, Signature, SymMatrix, real_root_signature
from .exact.poly import isolate_roots, qs2_roots, squarefree_decomposition, sturm_count_interval
from .operators import OperatorKind, apply, dstar_term, jacobi_apply, jp_coefficients, jp_coefficients_float
from .torus import Frame, Section, TrigPoly, frames_of

log = logging.getLogger(__name__)

BASIS_ORDER = (
    "frame-major: V_gamma, V_theta, V_nu, V_eta (V_eta only for I2); within each frame "
    "cos(m g)cos(n t), cos(m g)sin(n t), sin(m g)cos(n t), sin(m g)sin(n t), omitting "
    "monomials that vanish; each basis vector normalised to unit L2 norm"
)
DEFAULT_CUTOFF = 30
FLOAT_ZERO_TOL = 1e-8


@dataclass(frozen=True)
class BlockLabel:
    m: int
    n: int
    op: OperatorKind

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise ValueError("block frequencies must be nonnegative")


def monomial_kinds(m: int, n: int) -> list[str]:
    kinds = ["cc", "cs", "sc", "ss"]
    return [k for k in kinds if not ((k[0] == "s" and m == 0) or (k[1] == "s" and n == 0))]


def block_basis(m: int, n: int, target: str) -> list[tuple[str, Frame]]:
    return [(k, e) for e in frames_of(target) for k in monomial_kinds(m, n)]


def _from_cc(s: Section, kind: str, m: int, n: int) -> Section:
    """Image of the ``kind`` monomial obtained from that of ``cc`` by differentiation.

    Valid because every operator commutes with the torus translations.
    """
    if kind == "cc":
        return s
    if kind == "sc":
        return s.map(lambda f: f.d_gamma().scale(Fraction(-1, m)))
    if kind == "cs":
        return s.map(lambda f: f.d_theta().scale(Fraction(-1, n)))
    return s.map(lambda f: f.d_gamma().d_theta().scale(Fraction(1, m * n)))


def _assemble(m: int, n: int, target: str, op_fn) -> SymMatrix:
    basis = block_basis(m, n, target)
    cc_images = {e: op_fn(Section.frame(target, e, TrigPoly.mono("cc", m, n))) for e in frames_of(target)}
    rows = []
    for kind, e in basis:
        img = _from_cc(cc_images[e], kind, m, n)
        if not img.frequencies() <= {(m, n)}:
            raise InconsistencyError(f"operator leaves block ({m},{n}): {sorted(img.frequencies())}")
        # all basis monomials share one norm, so (Op e_i, e_j) is a coefficient
        rows.append([img[e2].terms.get((k2, m, n), ZERO) for k2, e2 in basis])
    try:
        return SymMatrix(rows)
    except ValueError as exc:
        raise InconsistencyError(f"block ({m},{n}) is not symmetric: {exc}") from exc


@lru_cache(maxsize=None)
def _exact_matrix(m: int, n: int, name: str) -> SymMatrix:
    if name == "I2":
        return _assemble(m, n, "S4", lambda v: apply(OperatorKind.i2(), v))
    if name == "J":
        return _assemble(m, n, "S3", jacobi_apply)
    if name == "D":
        return _assemble(m, n, "S3", dstar_term)
    if name == "I2Projected":
        return _assemble(m, n, "S3", lambda v: apply(OperatorKind.i2_projected(), v))
    raise ValueError(name)


def _combine(a: SymMatrix, ca: QS2, b: SymMatrix, cb: QS2) -> SymMatrix:
    return SymMatrix(
        [[x * ca + y * cb for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)], check=False
    )


def block_matrix_exact(label: BlockLabel) -> SymMatrix:
    """Exact matrix of ``(Op e_i, e_j)`` on the orthonormal basis of S^{m,n}."""
    op = label.op
    if op.name == "Jp":
        # J_p is the fixed combination c_div * D + c_jac * J of two symmetric operators
        c_div, c_jac = jp_coefficients(op.p)
        return _combine(_exact_matrix(label.m, label.n, "D"), c_div,
                        _exact_matrix(label.m, label.n, "J"), c_jac)
    return _exact_matrix(label.m, label.n, op.name)


def block_matrix_float(label: BlockLabel) -> np.ndarray:
    op = label.op
    if op.name == "Jp" and not op.exact:
        c_div, c_jac = jp_coefficients_float(float(op.p))
        return (c_div * _exact_matrix(label.m, label.n, "D").to_float()
                + c_jac * _exact_matrix(label.m, label.n, "J").to_float())
    return block_matrix_exact(label).to_float()


def float_signature(mat: np.ndarray, tol: float = FLOAT_ZERO_TOL) -> Signature:
    ev = np.linalg.eigvalsh(mat)
    return Signature(int(np.sum(ev < -tol)), int(np.sum(np.abs(ev) <= tol)), int(np.sum(ev > tol)))


# -- closed-form characteristic polynomials of the I2 blocks -------------------

def p3_coefficients(m: int) -> tuple[int, int, int, int]:
    m2 = m * m
    a0 = -4096 * m2 * (m - 1) * (m + 1) * (m ** 8 - 3 * m ** 6 + m ** 4 + 4 * m2 - 2)
    a1 = 256 * m2 * (3 * m ** 6 + 4 * m ** 4 + 7 * m2 - 9)
    a2 = -16 * (3 * m ** 4 + 8 * m2 - 1)
    return a0, a1, a2, 1


def q4_coefficients(m: int, n: int) -> tuple[int, int, int, int, int]:
    def s(a: int, b: int) -> int:
        # symmetric monomial m^a n^b + m^b n^a (a single term when a == b)
        return m ** a * n ** b + (m ** b * n ** a if a != b else 0)

    c0 = 65536 * (
        s(16, 0) + 8 * s(14, 2) + 28 * s(12, 4) + 56 * s(10, 6) + 70 * s(8, 8)
        - 3 * s(14, 0) - 21 * s(12, 2) - 63 * s(10, 4) - 105 * s(8, 6)
        + 16 * s(10, 2) + 64 * s(8, 4) + 96 * s(6, 6)
        + 7 * s(10, 0) - 21 * s(8, 2) - 98 * s(6, 4) - 3 * s(8, 0)
        + 12 * s(6, 2) + 94 * s(4, 4) - 4 * s(6, 0) - 12 * s(4, 2)
        + 2 * s(4, 0) + 12 * s(2, 2)
    )
    c1 = -4096 * (
        4 * s(12, 0) + 24 * s(10, 2) + 60 * s(8, 4) + 80 * s(6, 6)
        + 3 * s(10, 0) + 15 * s(8, 2) + 30 * s(6, 4) + 15 * s(8, 0)
        - 36 * s(6, 2) - 102 * s(4, 4) + s(6, 0) + 11 * s(4, 2) - 15 * s(4, 0)
        - 46 * s(2, 2) + 2 * s(2, 0)
    )
    c2 = 256 * (
        6 * s(8, 0) + 24 * s(6, 2) + 36 * s(4, 4) + 15 * s(6, 0)
        + 45 * s(4, 2) + 14 * s(4, 0) + 44 * s(2, 2) - 10 * s(2, 0)
    )
    c3 = -16 * (4 * s(4, 0) + 8 * s(2, 2) + 9 * s(2, 0) - 1)
    return c0, c1, c2, c3, 1


def i2_factored_char_poly(m: int, n: int) -> Poly:
    """The factored characteristic polynomial of the I2 block on S^{m,n}."""
    x = Poly.x()
    if m == 0 and n == 0:
        return Poly([0, 0, 0, 16, 1])  # x^3 (x + 16)
    if m == 0 or n == 0:
        k = m or n
        lin = x - Poly.const(16 * (k * k + k ** 4))
        return lin ** 2 * Poly(p3_coefficients(k)) ** 2
    return Poly(q4_coefficients(m, n)) ** 4


def j_factored_char_poly(m: int, n: int) -> Poly | None:
    """Factored J char poly on S^{m,0} (and S^{0,m}); None elsewhere."""
    if (m == 0) == (n == 0):
        return None
    k2 = (m or n) ** 2
    x = Poly.x()
    quad = Poly([16 * k2 * k2 - 32 * k2, -8 * k2, 1])
    return (x - Poly.const(4 * k2)) ** 2 * quad ** 2


def _i2_sign_pattern_ok(m: int, n: int) -> bool:
    """Coefficient sign pattern forcing an all-positive spectrum (non-exceptional blocks)."""
    if m == 0 or n == 0:
        a0, a1, a2, _ = p3_coefficients(m or n)
        return a0 < 0 < a1 and a2 < 0
    c0, c1, c2, c3, _ = q4_coefficients(m, n)
    return c0 > 0 and c1 < 0 and c2 > 0 and c3 < 0


# -- blocks --------------------------------------------------------------------

@dataclass
class Block:
    label: BlockLabel
    basis: list[tuple[str, Frame]]
    matrix: SymMatrix | None
    char_poly: Poly | None
    signature: Signature
    mode: str = "exact"

    @property
    def dim(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=None)
def _analyse(label: BlockLabel) -> Block:
    basis = block_basis(label.m, label.n, label.op.target)
    if not label.op.exact:
        sig = float_signature(block_matrix_float(label))
        return Block(label, basis, None, None, sig, mode="float")
    mat = block_matrix_exact(label)
    cp = mat.char_poly()
    if label.op.name == "I2":
        expected = i2_factored_char_poly(label.m, label.n)
        if cp != expected:
            raise InconsistencyError(
                f"I2 block ({label.m},{label.n}) char poly differs from the factored form"
            )
    elif label.op.name == "J":
        expected = j_factored_char_poly(label.m, label.n)
        if expected is not None and cp != expected:
            raise InconsistencyError(
                f"J block ({label.m},{label.n}) char poly differs from the factored form"
            )
    sig = real_root_signature(cp)
    return Block(label, basis, mat, cp, sig)


def block_matrix(label: BlockLabel) -> Block:
    """Assemble and analyse the restricted operator on S^{m,n} (exact mode only)."""
    if not label.op.exact:
        raise ExactModeError(f"{label.op} needs the floating-point path")
    return _analyse(label)


def block_signature(label: BlockLabel) -> Signature:
    """Exact ``(neg, zero, pos)`` eigenvalue counts of the block (float for non-integer p)."""
    return _analyse(label).signature


def block_info(label: BlockLabel) -> Block:
    return _analyse(label)


def enumerate_blocks(cutoff: int) -> list[tuple[int, int]]:
    out = [(0, 0)]
    out += [(m, 0) for m in range(1, cutoff + 1)]
    out += [(0, n) for n in range(1, cutoff + 1)]
    out += [(m, n) for m in range(1, cutoff + 1) for n in range(1, cutoff + 1)]
    return out


# -- reports -------------------------------------------------------------------

@dataclass
class BlockSummary:
    m: int
    n: int
    dim: int
    signature: Signature
    mode: str
    char_poly: Poly | None = None
    exact_roots: list[tuple[QS2, int]] = field(default_factory=list)

    @property
    def exceptional(self) -> bool:
        return self.signature.neg + self.signature.zero > 0


@dataclass
class SpectrumReport:
    op: OperatorKind
    cutoff: int
    per_block: list[BlockSummary]
    index: int
    nullity: int
    tail_certified: bool
    tail_note: str
    basis_order: str = BASIS_ORDER

    def contributions(self) -> list[BlockSummary]:
        """Blocks that contribute to index or nullity."""
        return [b for b in self.per_block if b.exceptional]


def _nonpositive_roots(cp: Poly) -> list[tuple[QS2, int]]:
    return [(r, k) for r, k in qs2_roots(cp) if r.sign() <= 0]


def index_nullity(op: OperatorKind, cutoff: int = DEFAULT_CUTOFF) -> SpectrumReport:
    """Index and nullity of ``op`` summed over all blocks with m, n <= cutoff."""
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    summaries = []
    tail_ok = True
    pattern_ok = True
    for m, n in enumerate_blocks(cutoff):
        blk = _analyse(BlockLabel(m, n, op))
        summ = BlockSummary(m, n, blk.dim, blk.signature, blk.mode, blk.char_poly)
        if summ.exceptional and blk.char_poly is not None:
            summ.exact_roots = _nonpositive_roots(blk.char_poly)
        summaries.append(summ)
        if max(m, n) >= 2:
            if blk.signature.pos != blk.dim:
                tail_ok = False
            if op.name == "I2" and not _i2_sign_pattern_ok(m, n):
                pattern_ok = False
        log.debug("block (%d,%d) %s: %s", m, n, op, tuple(blk.signature))
    index = sum(s.signature.neg for s in summaries)
    nullity = sum(s.signature.zero for s in summaries)
    certified = tail_ok and pattern_ok
    note = f"verified for all blocks with m, n <= {cutoff}: "
    note += "every block with max(m, n) >= 2 is positive definite" if tail_ok else \
        "some block with max(m, n) >= 2 is not positive definite"
    if op.name == "I2":
        note += "; P3/Q4 coefficient sign pattern " + ("observed" if pattern_ok else "violated") + \
            " on all enumerated non-exceptional blocks"
    note += "; no claim is made beyond the cutoff"
    return SpectrumReport(op, cutoff, summaries, index, nullity, certified, note)


@dataclass
class Witness:
    block: tuple[int, int] | int
    lo: Fraction
    hi: Fraction
    approx: float
    exact: QS2 | None


@dataclass
class CompositionResult:
    holds: bool
    interval: tuple[int, int]
    witness: Witness | None = None


def _interval_witness(p: Poly, lo: Fraction, hi: Fraction, tag) -> Witness | None:
    """First root of ``p`` strictly inside ``(lo, hi)``, if any."""
    for factor, _ in squarefree_decomposition(p):
        # roots in (lo, hi], minus a possible root exactly at hi
        k = sturm_count_interval(factor, lo, hi) - (0 if factor(hi) else 1)
        if k <= 0:
            continue
        for a, b in isolate_roots(factor, lo, hi, Fraction(1, 10 ** 12)):
            if b == hi and not factor(hi):
                continue
            exact = next((r for r, _ in qs2_roots(factor) if a < r <= b), None)
            return Witness(tag, a, b, float((a + b) / 2), exact)
    return None


def composition_condition(spectrum: SpectrumReport | Iterable[Poly], m_dim: int) -> CompositionResult:
    """Check that no Jacobi eigenvalue lies in the open interval ``(-2 m_dim, 0)``.

    ``spectrum`` is either a J :class:`SpectrumReport` or an iterable whose
    items are characteristic polynomials or individual exact eigenvalues.
    """
    lo, hi = Fraction(-2 * m_dim), Fraction(0)
    if isinstance(spectrum, SpectrumReport):
        items = []
        for s in spectrum.per_block:
            if s.signature.neg == 0:
                continue
            blk = _analyse(BlockLabel(s.m, s.n, spectrum.op))
            items.append(((s.m, s.n), blk.char_poly))
    else:
        items = [(i, p if isinstance(p, Poly) else Poly([-QS2.coerce(p), 1]))
                 for i, p in enumerate(spectrum)]
    for tag, p in items:
        w = _interval_witness(p, lo, hi, tag)
        if w is not None:
            return CompositionResult(False, (-2 * m_dim, 0), w)
    return CompositionResult(True, (-2 * m_dim, 0))


@dataclass
class SweepRow:
    p: float
    index: int
    nullity: int
    mode: str


def pharmonic_sweep(p_grid: Sequence[float], cutoff: int = DEFAULT_CUTOFF) -> list[SweepRow]:
    """Index and nullity of the p-energy Jacobi operator over a grid of exponents."""
    rows = []
    for p in p_grid:
        if p < 1:
            raise ValueError(f"p must be >= 1, got {p}")
        op = OperatorKind.jp(p)
        rep = index_nullity(op, cutoff)
        rows.append(SweepRow(float(p), rep.index, rep.nullity, "exact" if op.exact else "float"))
    return rows


def transition_points(rows: Sequence[SweepRow]) -> list[tuple[float, float]]:
    """Consecutive grid pairs across which (index, nullity) changes."""
    ordered = sorted(rows, key=lambda r: r.p)
    return [(a.p, b.p) for a, b in zip(ordered, ordered[1:])
            if (a.index, a.nullity) != (b.index, b.nullity)]


__all__ = [
    "BASIS_ORDER", "Block", "BlockLabel", "BlockSummary", "CompositionResult", "SpectrumReport",
    "SweepRow", "Witness", "block_basis", "block_info", "block_matrix", "block_matrix_exact",
    "block_matrix_float", "block_signature", "composition_condition", "enumerate_blocks",
    "float_signature", "i2_factored_char_poly", "index_nullity", "j_factored_char_poly",
    "monomial_kinds", "p3_coefficients", "pharmonic_sweep", "q4_coefficients", "transition_points",
]
