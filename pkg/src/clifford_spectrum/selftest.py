"""Regression table of known results plus seeded randomized property checks."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import equivariant, kernel, oracle, spectrum
from .errors import InconsistencyError
from .exact import QS2, SQRT2, Poly, SymMatrix, faddeev_leverrier, poly_at_matrix, real_root_signature
from .exact.poly import sturm_signature
from .operators import OperatorKind, apply
from .torus import KINDS, S4, Frame, Section, TrigPoly, frames_of, l2_inner


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


# expected (index, nullity); at p = 1 the pair (cos m gamma V_gamma, sin m gamma V_nu) with
# m = 2 is degenerate because p m^2 = 4, which adds four kernel directions
EXPECTED_TOTALS: dict[str, tuple[OperatorKind, tuple[int, int]]] = {
    "I2": (OperatorKind.i2(), (1, 11)),
    "J": (OperatorKind.j(), (4, 7)),
    "I2Projected": (OperatorKind.i2_projected(), (0, 7)),
    "Jp(p=1)": (OperatorKind.jp(1), (4, 11)),
    "Jp(p=2)": (OperatorKind.jp(2), (4, 7)),
    "Jp(p=3)": (OperatorKind.jp(3), (4, 7)),
    "Jp(p=4)": (OperatorKind.jp(4), (0, 11)),
    "Jp(p=5)": (OperatorKind.jp(5), (0, 7)),
    "Jp(p=6)": (OperatorKind.jp(6), (0, 7)),
    "Jp(p=1.5)": (OperatorKind.jp(1.5), (4, 7)),
    "Jp(p=3.9)": (OperatorKind.jp(3.9), (4, 7)),
    "Jp(p=4.1)": (OperatorKind.jp(4.1), (0, 7)),
}

MU1 = QS2(4, -4)


def random_trig(rng: random.Random, max_freq: int = 2, density: float = 0.35) -> TrigPoly:
    f = TrigPoly()
    for kind in KINDS:
        for m in range(max_freq + 1):
            for n in range(max_freq + 1):
                if rng.random() < density:
                    c = QS2(Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                            Fraction(rng.randint(-2, 2), rng.randint(1, 3)) if rng.random() < 0.3 else 0)
                    f = f + TrigPoly.mono(kind, m, n, c)
    return f


def random_section(rng: random.Random, target: str = S4, max_freq: int = 2) -> Section:
    return Section(target, [random_trig(rng, max_freq) for _ in frames_of(target)])


def _guard(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except (InconsistencyError, ValueError, ArithmeticError) as exc:
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, ok, detail)


def regression_checks(cutoff: int = spectrum.DEFAULT_CUTOFF) -> list[Check]:
    out = []
    for name, (op, want) in EXPECTED_TOTALS.items():
        def run(op=op, want=want):
            rep = spectrum.index_nullity(op, cutoff)
            return (rep.index, rep.nullity) == want, f"got ({rep.index}, {rep.nullity}), want {want}"
        out.append(_guard(f"totals {name}", run))

    def i2_breakdown():
        rep = spectrum.index_nullity(OperatorKind.i2(), cutoff)
        null = {(b.m, b.n): b.signature.zero for b in rep.per_block if b.signature.zero}
        idx = {(b.m, b.n): b.signature.neg for b in rep.per_block if b.signature.neg}
        want_null = {(0, 0): 3, (1, 0): 2, (0, 1): 2, (1, 1): 4}
        return null == want_null and idx == {(0, 0): 1}, f"nullity {null}, index {idx}"
    out.append(_guard("I2 per-block breakdown", i2_breakdown))

    def j_mu1():
        rep = spectrum.index_nullity(OperatorKind.j(), cutoff)
        mult = sum(k for b in rep.per_block for r, k in b.exact_roots if r == MU1)
        return mult == 4, f"multiplicity of 4 - 4 sqrt2: {mult}"
    out.append(_guard("J eigenvalue 4 - 4 sqrt2", j_mu1))

    def composition():
        res = spectrum.composition_condition(spectrum.index_nullity(OperatorKind.j(), cutoff), 2)
        w = res.witness
        return (not res.holds and w is not None and w.exact == MU1), f"holds={res.holds}, witness={w}"
    out.append(_guard("composition condition fails with witness", composition))

    def char_polys():
        cp = spectrum.block_info(spectrum.BlockLabel(1, 1, OperatorKind.i2())).char_poly
        c0 = spectrum.q4_coefficients(1, 1)[0]
        ok = cp == Poly(spectrum.q4_coefficients(1, 1)) ** 4 and c0 == 0
        for m in range(1, 11):
            blk = spectrum.block_matrix_exact(spectrum.BlockLabel(m, 0, OperatorKind.i2()))
            ok = ok and blk.char_poly() == spectrum.i2_factored_char_poly(m, 0)
        return ok, "Q4^4 at (1,1) and factored (m,0) forms for m <= 10"
    out.append(_guard("I2 characteristic polynomials", char_polys))

    def kernel_check():
        rep = kernel.verify_kernel()
        return rep.ok and rep.rank == 11, "; ".join(rep.failures) or "rank 11"
    out.append(_guard("kernel structure", kernel_check))

    def variation():
        vals = [oracle.variation_derivatives(k) for k in range(1, 5)]
        ok = all(abs(v.value) <= 1e-6 * oracle.PI2 for v in vals[:3])
        ok = ok and abs(vals[3].value + 48 * oracle.PI2) <= 1e-4 * 48 * oracle.PI2
        for t in (0.0, 0.3, 1.0):
            err = np.max(np.abs(oracle.tau_squared(oracle.phi_t(t)) - oracle.closed_form_tau_squared_phi_t(t)))
            ok = ok and err <= 1e-10
        return ok, "derivatives " + ", ".join(f"{v.value / oracle.PI2:.3e} pi^2" for v in vals)
    out.append(_guard("variation along V_nu", variation))

    def conformal():
        r = oracle.conformal_rayleigh((0, 0, 1, 1))
        ok = (abs(r.numerator + 2 * oracle.PI2) <= 1e-8 * 2 * oracle.PI2
              and abs(r.denominator - 1.5 * oracle.PI2) <= 1e-8 * 1.5 * oracle.PI2
              and abs(r.quotient + 4 / 3) <= 1e-8 * 4 / 3)
        return ok, f"quotient {r.quotient!r}"
    out.append(_guard("conformal Rayleigh quotient", conformal))

    def hessian_eta():
        eta = Section.frame(S4, Frame.ETA)
        v = oracle.fd_hessian(eta, eta)
        return abs(v + 16 * oracle.PI2) <= 1e-4 * 16 * oracle.PI2, f"{v / oracle.PI2!r} pi^2"
    out.append(_guard("finite-difference Hessian on V_eta", hessian_eta))

    def equivariant_check():
        crit = equivariant.reduced_critical(0.5, 0.5)
        scan = equivariant.scan_isometric_critical(0.5, 0.5)
        ok = len(crit) == 1 and abs(crit[0].eta - math.pi / 4) < 1e-10 and abs(crit[0].nu - math.pi / 4) < 1e-10
        ok = ok and len(scan) == 1
        h = equivariant.reduced_hessian(equivariant.CLIFFORD_POINT).matrix
        ok = ok and np.max(np.abs(h - np.diag([-16.0, 0.0]))) <= 1e-6
        exact = equivariant.exact_hessian_pairings()
        ok = ok and exact == SymMatrix.diagonal([-16, 0])
        return ok, f"critical {[(p.eta, p.nu) for p in crit]}, hessian {h.tolist()}"
    out.append(_guard("equivariant reduction", equivariant_check))
    return out


_PROPERTY_OPS = (OperatorKind.i2(), OperatorKind.j(), OperatorKind.jp(3), OperatorKind.i2_projected())


def property_checks(seed: int = 0, trials: int = 5) -> list[Check]:
    rng = random.Random(seed)
    out = []

    def self_adjoint():
        for _ in range(trials):
            for op in _PROPERTY_OPS:
                v, w = random_section(rng, op.target), random_section(rng, op.target)
                if l2_inner(apply(op, v), w) != l2_inner(v, apply(op, w)):
                    return False, f"{op} not symmetric on {v!r}, {w!r}"
        return True, f"{trials} random pairs per operator"
    out.append(_guard("self-adjointness", self_adjoint))

    def preservation():
        for _ in range(trials):
            m, n = rng.randint(0, 6), rng.randint(0, 6)
            for op in _PROPERTY_OPS:
                kinds = spectrum.monomial_kinds(m, n)
                v = Section(op.target, [TrigPoly.mono(rng.choice(kinds), m, n, rng.randint(1, 5))
                                        for _ in frames_of(op.target)])
                if not apply(op, v).frequencies() <= {(m, n)}:
                    return False, f"{op} leaves ({m},{n})"
        return True, f"{trials} random blocks per operator"
    out.append(_guard("block preservation", preservation))

    def cayley_hamilton():
        for _ in range(trials):
            m, n = rng.randint(0, 6), rng.randint(0, 6)
            for op in _PROPERTY_OPS:
                mat = spectrum.block_matrix_exact(spectrum.BlockLabel(m, n, op))
                if mat.dim > 8:
                    continue
                cp = mat.char_poly()
                if any(x for r in poly_at_matrix(cp, mat) for x in r):
                    return False, f"{op} ({m},{n})"
                if cp != faddeev_leverrier(mat):
                    return False, f"char poly paths disagree on {op} ({m},{n})"
        return True, "blocks of dimension <= 8"
    out.append(_guard("Cayley-Hamilton", cayley_hamilton))

    def descartes_sturm():
        for _ in range(trials * 4):
            roots = [QS2(Fraction(rng.randint(-9, 9), rng.randint(1, 3)), rng.randint(-2, 2))
                     for _ in range(rng.randint(1, 7))]
            p = Poly.from_roots(roots)
            want = (sum(r.sign() < 0 for r in roots), sum(r.sign() == 0 for r in roots),
                    sum(r.sign() > 0 for r in roots))
            if tuple(real_root_signature(p)) != want or tuple(sturm_signature(p)) != want:
                return False, f"roots {[str(r) for r in roots]}"
        return True, "random real-rooted polynomials"
    out.append(_guard("Descartes = Sturm", descartes_sturm))

    def float_vs_exact():
        for _ in range(trials):
            m, n = rng.randint(0, 8), rng.randint(0, 8)
            for op in _PROPERTY_OPS:
                label = spectrum.BlockLabel(m, n, op)
                f = spectrum.float_signature(spectrum.block_matrix_float(label))
                if f != spectrum.block_signature(label):
                    return False, f"{op} ({m},{n}): float {tuple(f)}"
        return True, "random blocks"
    out.append(_guard("float signature = exact signature", float_vs_exact))

    def sqrt2_field():
        for _ in range(trials * 10):
            a = QS2(Fraction(rng.randint(-50, 50), rng.randint(1, 9)), Fraction(rng.randint(-50, 50), rng.randint(1, 9)))
            if a and (a * a.inverse() != 1 or abs(float(a) - float(a.a) - float(a.b) * math.sqrt(2)) > 1e-9):
                return False, str(a)
            if a.sign() != (float(a) > 0) - (float(a) < 0):
                return False, f"sign of {a}"
        return SQRT2 * SQRT2 == 2, "field axioms and exact sign"
    out.append(_guard("Q(sqrt 2) arithmetic", sqrt2_field))
    return out


def run_selftest(cutoff: int = spectrum.DEFAULT_CUTOFF, seed: int = 0, trials: int = 5) -> list[Check]:
    return regression_checks(cutoff) + property_checks(seed, trials)


__all__ = ["Check", "EXPECTED_TOTALS", "property_checks", "random_section", "random_trig",
           "regression_checks", "run_selftest"]
