import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifford_spectrum import oracle, spectrum
from clifford_spectrum.errors import ExactModeError
from clifford_spectrum.exact import SQRT2, QS2, Poly, Signature, SymMatrix, real_root_signature
from clifford_spectrum.operators import OperatorKind, apply, jp_apply
from clifford_spectrum.spectrum import BlockLabel
from clifford_spectrum.torus import Section, TrigPoly, l2_inner

I2, J, IP = OperatorKind.i2(), OperatorKind.j(), OperatorKind.i2_projected()
EXACT_OPS = [I2, J, IP, OperatorKind.jp(1), OperatorKind.jp(3), OperatorKind.jp(4), OperatorKind.jp(5)]
X = Poly.x()


def test_negative_frequency_rejected():
    with pytest.raises(ValueError):
        BlockLabel(-1, 0, I2)


@pytest.mark.parametrize("m,n,w", [(0, 0, 1), (3, 0, 2), (0, 2, 2), (2, 5, 4)])
def test_block_dimensions(m, n, w):
    assert spectrum.block_matrix(BlockLabel(m, n, I2)).dim == 4 * w
    assert spectrum.block_matrix(BlockLabel(m, n, J)).dim == 3 * w


def test_i2_entry_48_sqrt2():
    mat = spectrum.block_matrix_exact(BlockLabel(1, 0, I2))
    assert mat[1, 4] == 48 * SQRT2


def test_i2_constant_block():
    assert spectrum.block_matrix_exact(BlockLabel(0, 0, I2)) == SymMatrix.diagonal([0, 0, 0, -16])


def test_i2_m1_char_poly_example():
    p3 = Poly([0, 256 * 5, -16 * 10, 1])
    want = (X - Poly.const(32)) ** 2 * p3 ** 2
    assert spectrum.block_matrix_exact(BlockLabel(1, 0, I2)).char_poly() == want
    assert real_root_signature(p3) == Signature(0, 1, 2)


def test_q4_at_one_one():
    q4 = Poly(spectrum.q4_coefficients(1, 1))
    assert q4[0] == 0
    assert real_root_signature(q4) == Signature(0, 1, 3)


@pytest.mark.parametrize("m", range(1, 9))
def test_j_m0_char_poly(m):
    k = m * m
    want = (X - Poly.const(4 * k)) ** 2 * (X * X - Poly([32 * k, 8 * k]) + Poly.const(16 * k * k)) ** 2
    assert spectrum.block_matrix_exact(BlockLabel(m, 0, J)).char_poly() == want


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 7) for n in range(0, 7)])
def test_i2_char_poly_factored(m, n):
    assert spectrum.block_matrix_exact(BlockLabel(m, n, I2)).char_poly() == spectrum.i2_factored_char_poly(m, n)


def test_signature_examples():
    assert spectrum.block_signature(BlockLabel(1, 1, I2)).zero == 4
    sig = spectrum.block_signature(BlockLabel(2, 0, I2))
    assert sig.pos == 8
    assert spectrum.block_signature(BlockLabel(1, 0, J)).neg == 2


def _direct_matrix(m, n, op, fn):
    basis = spectrum.block_basis(m, n, op.target)
    vecs = [Section.frame(op.target, e, TrigPoly.mono(k, m, n)) for k, e in basis]
    norm = l2_inner(vecs[0], vecs[0])
    return SymMatrix([[l2_inner(fn(v), w) / norm for w in vecs] for v in vecs])


@pytest.mark.parametrize("op", [I2, J, IP], ids=str)
@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4)])
def test_translation_assembly_equals_direct(op, m, n):
    direct = _direct_matrix(m, n, op, lambda v: apply(op, v))
    assert spectrum.block_matrix_exact(BlockLabel(m, n, op)) == direct


@pytest.mark.parametrize("p", [1, 3, 4, 6])
@pytest.mark.parametrize("m,n", [(0, 0), (1, 0), (2, 1), (3, 3)])
def test_jp_combination_equals_direct(p, m, n):
    op = OperatorKind.jp(p)
    assert spectrum.block_matrix_exact(BlockLabel(m, n, op)) == _direct_matrix(m, n, op, lambda v: jp_apply(p, v))


def test_non_integer_p_is_mode_error():
    with pytest.raises(ExactModeError):
        spectrum.block_matrix(BlockLabel(1, 0, OperatorKind.jp(2.5)))


@pytest.mark.parametrize("op", EXACT_OPS, ids=str)
@pytest.mark.parametrize("m,n", [(m, n) for m in range(7) for n in range(m + 1, 7)])
def test_swap_symmetry(op, m, n):
    assert spectrum.block_signature(BlockLabel(m, n, op)) == spectrum.block_signature(BlockLabel(n, m, op))


@pytest.mark.parametrize("op", EXACT_OPS + [OperatorKind.jp(2.5), OperatorKind.jp(4.5)], ids=str)
@given(m=st.integers(0, 10), n=st.integers(0, 10))
def test_float_signature_matches_exact(op, m, n):
    label = BlockLabel(m, n, op)
    f = spectrum.float_signature(spectrum.block_matrix_float(label))
    assert f == spectrum.block_info(label).signature


@pytest.mark.parametrize("op", [I2, J, IP, OperatorKind.jp(4)], ids=str)
def test_cutoff_stability(op):
    totals = {(r.index, r.nullity) for r in (spectrum.index_nullity(op, k) for k in range(2, 7))}
    assert len(totals) == 1


def test_small_cutoff_rejected():
    with pytest.raises(ValueError):
        spectrum.index_nullity(I2, 1)


def test_small_cutoff_totals():
    rep = spectrum.index_nullity(I2, 4)
    assert (rep.index, rep.nullity) == (1, 11)
    assert rep.tail_certified
    assert {(b.m, b.n) for b in rep.contributions()} == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_composition_fails_for_clifford_torus():
    res = spectrum.composition_condition(spectrum.index_nullity(J, 4), 2)
    assert not res.holds
    assert res.witness.exact == QS2(4, -4)
    assert res.witness.block in ((1, 0), (0, 1))
    assert abs(res.witness.approx - (4 - 4 * 2 ** 0.5)) < 1e-9


def test_composition_hypothetical_spectra():
    assert spectrum.composition_condition([QS2(-4), QS2(0), QS2(3)], 2).holds
    assert spectrum.composition_condition([], 2).holds
    assert not spectrum.composition_condition([QS2(-1)], 2).holds
    assert spectrum.composition_condition([Poly.from_roots([-4, 0, 0, 5])], 2).holds


def test_sweep_and_transition():
    rows = spectrum.pharmonic_sweep([2, 3.9, 4, 4.1, 5], cutoff=4)
    assert [(r.index, r.nullity) for r in rows] == [(4, 7), (4, 7), (0, 11), (0, 7), (0, 7)]
    assert [r.mode for r in rows] == ["exact", "float", "exact", "float", "exact"]
    assert spectrum.transition_points(rows) == [(3.9, 4.0), (4.0, 4.1)]


def test_sweep_rejects_small_p():
    with pytest.raises(ValueError):
        spectrum.pharmonic_sweep([0.5], cutoff=2)


def test_p_one_degenerate_pair():
    # at p = 1 the (2,0) block has a kernel because p m^2 = 4
    sig = spectrum.block_signature(BlockLabel(2, 0, OperatorKind.jp(1)))
    assert sig.zero == 2
    assert spectrum.block_signature(BlockLabel(2, 0, OperatorKind.jp(2))).zero == 0


def _sampled_eigvecs(label):
    mat = spectrum.block_matrix_float(label)
    ev, vecs = np.linalg.eigh(mat)
    basis = spectrum.block_basis(label.m, label.n, label.op.target)
    samples = [oracle.sample_section(Section.frame(label.op.target, e, TrigPoly.mono(k, label.m, label.n)), 16)
               for k, e in basis]
    return ev, [sum(c * s for c, s in zip(vec, samples)) for vec in vecs.T]


@pytest.mark.parametrize("m,n", [(m, n) for m in range(3) for n in range(3)])
def test_j_eigenpairs_against_quadrature(m, n):
    ev, fields = _sampled_eigvecs(BlockLabel(m, n, J))
    for lam, v in zip(ev, fields):
        assert abs(oracle.jacobi_form(v) / oracle.l2_pairing(v, v) - lam) < 1e-8 * max(1, abs(lam))


@pytest.mark.parametrize("m,n", [(0, 0), (1, 0), (1, 1), (2, 1)])
def test_i2_eigenpairs_against_finite_differences(m, n):
    label = BlockLabel(m, n, I2)
    mat = spectrum.block_matrix_float(label)
    ev, vecs = np.linalg.eigh(mat)
    basis = spectrum.block_basis(m, n, "S4")
    samples = [oracle.sample_section(Section.frame("S4", e, TrigPoly.mono(k, m, n)), 32) for k, e in basis]
    norm = float(l2_inner(*(2 * [Section.frame("S4", basis[0][1], TrigPoly.mono(basis[0][0], m, n))])))
    for i in itertools.islice(range(len(ev)), 0, None, 3):
        v = sum(c * s for c, s in zip(vecs[:, i], samples))
        fd = oracle.fd_hessian(v, v) / (oracle.PI2 * norm)
        assert abs(fd - ev[i]) < 1e-4 * max(1, abs(ev[i]))
