import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifford_spectrum.errors import ExactModeError, NotEigenfunctionError
from clifford_spectrum.exact import SQRT2, QS2
from clifford_spectrum.operators import (
    OperatorKind, apply, divergence_pairing, dstar_term, i2_apply, i2_closed_form, i2_projected_apply,
    jacobi_apply, jacobi_closed_form, jp_apply, jp_closed_form,
)
from clifford_spectrum.torus import KINDS, S3, S4, Frame, Section, TrigPoly, frames_of, l2_inner

from conftest import sections

G, T, N, E = Frame.GAMMA, Frame.THETA, Frame.NU, Frame.ETA
MU1 = QS2(4, -4)


def mono_sections(target, max_freq=5):
    for m, n in itertools.product(range(max_freq + 1), repeat=2):
        for kind in KINDS:
            f = TrigPoly.mono(kind, m, n)
            if f:
                for e in frames_of(target):
                    yield f, e


def w1() -> Section:
    return Section(S3, {G: TrigPoly.mono("cc", 1, 0), N: TrigPoly.mono("sc", 1, 0)})


def test_i2_on_frame_fields():
    assert i2_apply(Section.frame(S4, E)) == Section.frame(S4, E, -16)
    assert not i2_apply(Section.frame(S4, N))


def test_i2_closed_form_examples():
    assert i2_closed_form(TrigPoly.const(1), E) == Section.frame(S4, E, -16)
    assert not i2_closed_form(TrigPoly.const(1), N)
    f = TrigPoly.mono("cs", 0, 1)
    assert i2_closed_form(f, T) == i2_apply(Section.frame(S4, T, f))


def test_i2_cos_gamma_gamma():
    f = TrigPoly.mono("cc", 1, 0)
    lam = 4
    fg = f.d_gamma()
    want = Section(S4, {G: f.scale(lam * (4 + lam)) - fg.d_gamma().scale(48),
                        N: fg.scale(8 * SQRT2 * (2 + lam)), E: fg.scale(8 * lam)})
    assert i2_apply(Section.frame(S4, G, f)) == want


def test_closed_form_needs_eigenfunction():
    f = TrigPoly.mono("cc", 1, 0) + TrigPoly.mono("cc", 2, 0)
    with pytest.raises(NotEigenfunctionError):
        i2_closed_form(f, G)


@pytest.mark.parametrize("f,e", list(mono_sections(S4)))
def test_i2_generic_equals_closed_form(f, e):
    assert i2_apply(Section.frame(S4, e, f)) == i2_closed_form(f, e)


@pytest.mark.parametrize("f,e", list(mono_sections(S3)))
def test_jacobi_generic_equals_closed_form(f, e):
    assert jacobi_apply(Section.frame(S3, e, f)) == jacobi_closed_form(f, e)


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize("f,e", list(mono_sections(S3, 3)))
def test_jp_generic_equals_closed_form(p, f, e):
    assert jp_apply(p, Section.frame(S3, e, f)) == jp_closed_form(p, f, e)


def test_jacobi_examples():
    assert not jacobi_apply(Section.frame(S3, N))
    v = Section.frame(S3, G, TrigPoly.mono("cc", 1, 0))
    want = Section(S3, {G: TrigPoly.mono("cc", 1, 0, 4), N: TrigPoly.mono("sc", 1, 0, -4 * SQRT2)})
    assert jacobi_apply(v) == want


def test_w1_is_mu1_eigenvector():
    assert jacobi_apply(w1()) == w1() * MU1


@given(sections(S3))
def test_jp_at_two_is_jacobi(v):
    assert jp_apply(2, v) == jacobi_apply(v)


def test_jp_at_four_on_nu():
    v = Section.frame(S3, N, TrigPoly.mono("cs", 2, 1))
    assert jp_apply(4, v) == jacobi_apply(v) * 2


def test_jp_at_four_cos_gamma():
    f = TrigPoly.mono("cc", 1, 0)
    # (p-2) 2^((p-4)/2) = 2 and 2^((p-2)/2) = 2 at p = 4
    extra = Section(S3, {G: f.d_gamma().d_gamma().scale(4)})
    want = jacobi_apply(Section.frame(S3, G, f)) * 2 - extra * 2
    assert jp_apply(4, Section.frame(S3, G, f)) == want


def test_jp_non_integer_is_mode_error():
    with pytest.raises(ExactModeError):
        jp_apply(2.5, Section.frame(S3, N))
    with pytest.raises(ValueError):
        OperatorKind.jp(0.5)


def test_projected_examples():
    assert not i2_projected_apply(Section.frame(S3, N))
    assert not i2_projected_apply(Section.frame(S3, G, 7))
    w = w1()
    want = w * (MU1 * MU1 + 4 * MU1) + dstar_term(w) * 4
    assert i2_projected_apply(w) == want
    assert l2_inner(i2_projected_apply(w), w).sign() >= 0


def test_divergence_pairing_examples():
    assert divergence_pairing(Section.frame(S3, N)) == 0
    assert divergence_pairing(Section.frame(S3, G, TrigPoly.mono("cc", 1, 0))) == 2
    assert divergence_pairing(Section.frame(S3, G)) == 0


@given(sections(S3))
def test_divergence_pairing_identity(v):
    assert divergence_pairing(v).sign() >= 0


_OPS = [OperatorKind.i2(), OperatorKind.j(), OperatorKind.jp(1), OperatorKind.jp(3),
        OperatorKind.jp(4), OperatorKind.i2_projected()]


@pytest.mark.parametrize("op", _OPS, ids=str)
@given(data=st.data())
def test_self_adjoint(op, data):
    v, w = data.draw(sections(op.target)), data.draw(sections(op.target))
    assert l2_inner(apply(op, v), w) == l2_inner(v, apply(op, w))


@pytest.mark.parametrize("op", _OPS, ids=str)
@given(m=st.integers(0, 6), n=st.integers(0, 6), kind=st.sampled_from(KINDS),
       c=st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_block_preservation(op, m, n, kind, c):
    f = TrigPoly.mono(kind, m, n, c)
    for e in frames_of(op.target):
        assert apply(op, Section.frame(op.target, e, f)).frequencies() <= {(m, n)}


def test_operator_kind_normalises_integer_p():
    assert OperatorKind.jp(3.0) == OperatorKind.jp(3)
    assert OperatorKind.jp(3.0).exact and not OperatorKind.jp(3.5).exact
