from fractions import Fraction

import pytest

from clifford_spectrum import kernel
from clifford_spectrum.exact import SQRT2, QS2
from clifford_spectrum.operators import i2_apply
from clifford_spectrum.torus import S4, Frame, Section, TrigPoly

G, T, N, E = Frame.GAMMA, Frame.THETA, Frame.NU, Frame.ETA
R = SQRT2 / 2  # 1/sqrt 2


@pytest.fixture(scope="module")
def fields():
    return {k.id: k.frame_expr for k in kernel.killing_sections()}


def test_v1(fields):
    assert fields[1] == Section.frame(S4, G, Fraction(1, 2))


def test_v7(fields):
    cg, sg = TrigPoly.mono("cc", 1, 0), TrigPoly.mono("sc", 1, 0)
    want = Section(S4, {G: cg.scale(-R), N: sg.scale(Fraction(-1, 2)), E: sg.scale(-R)})
    assert fields[7] == want


def test_v10(fields):
    ct, st = TrigPoly.mono("cc", 0, 1), TrigPoly.mono("cs", 0, 1)
    want = Section(S4, {T: st.scale(R), N: ct.scale(Fraction(1, 2)), E: ct.scale(-R)})
    assert fields[10] == want


@pytest.mark.parametrize("i", range(1, 11))
def test_killing_fields_in_kernel(fields, i):
    assert not i2_apply(fields[i])


def test_generators_are_skew():
    for i in range(1, 11):
        a = kernel.killing_generator(i)
        assert all(a[r][c] == -a[c][r] for r in range(5) for c in range(5))


def test_bad_generator_index():
    with pytest.raises(ValueError):
        kernel.killing_generator(11)


def test_verify_kernel():
    rep = kernel.verify_kernel()
    assert rep.ok, rep.failures
    assert rep.rank == 11 and rep.orthogonal and rep.dphi_ok
    assert rep.gram[0, 0] == Fraction(1, 4)
    assert rep.gram[6, 6] == Fraction(5, 8)
    assert rep.gram[10, 10] == QS2(1)
    # fields along the S3 factor are also killed by the projected operator
    assert [k for k, v in rep.projected_kernel.items() if v] == ["V1", "V2", "V3", "V4", "V5", "V6", "Vnu"]
