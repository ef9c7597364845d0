from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifford_spectrum.exact import (
    ONE, SQRT2, QS2, Poly, Signature, SymMatrix, bareiss_rank, descartes_signature, faddeev_leverrier,
    poly_at_matrix, qs2_roots, real_root_signature, squarefree_decomposition, sturm_signature,
)

from conftest import nonzero_qs2, qs2, small_qs2


def test_norm_of_one_plus_sqrt2():
    assert QS2(1, 1) * QS2(1, -1) == QS2(-1, 0)


def test_inverse_of_sqrt2():
    assert SQRT2.inverse() == QS2(0, Fraction(1, 2))


def test_mu1_is_negative():
    assert QS2(4, -4).sign() == -1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QS2(1, 1) / QS2(0)


def test_json_round_trip_qs2():
    x = QS2(Fraction(-3, 7), Fraction(5, 2))
    assert QS2.from_json(x.to_json()) == x


@given(qs2, qs2, qs2)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(nonzero_qs2)
def test_inverse(x):
    assert x * x.inverse() == ONE


@given(qs2)
def test_exact_sign_matches_float(x):
    f = float(x.a) + float(x.b) * np.sqrt(2)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
    else:
        assert x.sign() == 0 or abs(f) < 1e-9


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_sign_near_sqrt2(p, q):
    # p/q approximates sqrt 2 closely for convergents; exact sign still decided
    x = QS2(Fraction(p, q), -1)
    want = (p * p > 2 * q * q) if p > 0 else False
    assert (x.sign() > 0) == want


def test_char_poly_one_by_one():
    assert SymMatrix([[-16]]).char_poly() == Poly([16, 1])


def test_char_poly_identity():
    assert SymMatrix.identity(2).char_poly() == Poly([1, -2, 1])


def test_signature_examples():
    assert real_root_signature(Poly([16, 1])) == Signature(1, 0, 0)
    p3 = Poly([0, 256 * 5, -16 * 10, 1])
    assert real_root_signature(p3) == Signature(0, 1, 2)


def test_asymmetric_matrix_rejected():
    with pytest.raises(ValueError):
        SymMatrix([[1, 2], [3, 4]])


def _random_sym(draw_entries, n):
    rows = [[None] * n for _ in range(n)]
    it = iter(draw_entries)
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = next(it)
    return SymMatrix(rows)


@st.composite
def sym_matrices(draw, max_dim=6):
    n = draw(st.integers(1, max_dim))
    entries = draw(st.lists(small_qs2, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    return _random_sym(entries, n)


@given(sym_matrices())
def test_cayley_hamilton(mat):
    cp = mat.char_poly()
    assert cp.degree == mat.dim and cp.lead == ONE
    assert not any(x for r in poly_at_matrix(cp, mat) for x in r)


@given(sym_matrices())
def test_char_poly_paths_agree(mat):
    assert mat.char_poly() == faddeev_leverrier(mat)


@given(sym_matrices())
def test_signature_matches_eigensolve(mat):
    sig = real_root_signature(mat.char_poly())
    ev = np.linalg.eigvalsh(mat.to_float())
    assert sum(sig) == mat.dim
    # exact zero eigenvalues can appear as tiny floats, so only check clear cases
    assert sig.neg >= int(np.sum(ev < -1e-6))
    assert sig.pos >= int(np.sum(ev > 1e-6))
    assert sig.neg <= int(np.sum(ev < 1e-6))


@given(sym_matrices())
def test_rank_matches_nullity(mat):
    sig = real_root_signature(mat.char_poly())
    assert mat.rank() == mat.dim - sig.zero
    assert bareiss_rank([list(r) for r in mat.rows]) == mat.rank()


@given(st.lists(small_qs2, min_size=1, max_size=7))
def test_descartes_equals_sturm(roots):
    p = Poly.from_roots(roots)
    want = Signature(sum(r.sign() < 0 for r in roots), sum(r.sign() == 0 for r in roots),
                     sum(r.sign() > 0 for r in roots))
    assert descartes_signature(p) == want
    assert sturm_signature(p) == want
    assert real_root_signature(p) == want


@given(st.lists(small_qs2, min_size=1, max_size=6))
def test_qs2_roots_recovers_roots(roots):
    p = Poly.from_roots(roots)
    got = {r: k for r, k in qs2_roots(p)}
    want: dict = {}
    for r in roots:
        want[r] = want.get(r, 0) + 1
    assert got == want


@given(st.lists(small_qs2, min_size=1, max_size=6))
def test_squarefree_decomposition_reassembles(roots):
    p = Poly.from_roots(roots)
    prod = Poly([1])
    for g, k in squarefree_decomposition(p):
        prod = prod * g ** k
    assert prod.monic() == p.monic()


def test_poly_json_round_trip():
    p = Poly([QS2(1, 2), 0, QS2(Fraction(-1, 3))])
    assert Poly.from_json(p.to_json()) == p
