import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifford_spectrum import equivariant as eq
from clifford_spectrum.exact import SymMatrix

P4 = math.pi / 4


def test_clifford_value():
    assert abs(eq.reduced_bienergy(eq.CLIFFORD_POINT) - 2) < 1e-14
    assert abs(eq.quadrature_reduced_bienergy(eq.CLIFFORD_POINT) - 2) < 1e-12


def test_minimal_clifford_in_equator():
    r = 1 / math.sqrt(2)
    assert abs(eq.reduced_bienergy(eq.ReducedPoint(math.pi / 2, P4, r, r))) < 1e-14


def test_radius_validation():
    with pytest.raises(ValueError):
        eq.ReducedPoint(P4, P4, 0.0, 0.5)
    with pytest.raises(ValueError):
        eq.reduced_critical(-1.0, 0.5)


points = st.builds(eq.ReducedPoint, st.floats(0.05, math.pi - 0.05), st.floats(0.05, math.pi / 2 - 0.05),
                   st.floats(0.2, 1.5), st.floats(0.2, 1.5))


@given(points)
def test_closed_form_matches_quadrature(p):
    q = eq.quadrature_reduced_bienergy(p)
    assert abs(eq.reduced_bienergy(p) - q) <= 1e-10 * max(1.0, abs(q))


@given(points)
def test_factor_swap_symmetry(p):
    swapped = eq.ReducedPoint(p.eta, math.pi / 2 - p.nu, p.R2, p.R1)
    assert abs(eq.reduced_bienergy(p) - eq.reduced_bienergy(swapped)) <= 1e-10 * max(1.0, eq.reduced_bienergy(p))


@given(points)
def test_gradient_matches_differences(p):
    h = 1e-6
    if not (h < p.eta < math.pi - h and h < p.nu < math.pi / 2 - h):
        return
    f = lambda e, v: eq.reduced_bienergy(eq.ReducedPoint(e, v, p.R1, p.R2))
    ge = (f(p.eta + h, p.nu) - f(p.eta - h, p.nu)) / (2 * h)
    gv = (f(p.eta, p.nu + h) - f(p.eta, p.nu - h)) / (2 * h)
    got = eq.reduced_gradient(p)
    scale = max(1.0, abs(f(p.eta, p.nu)))
    assert abs(got[0] - ge) <= 1e-5 * scale and abs(got[1] - gv) <= 1e-5 * scale


def test_unique_critical_point():
    crit = eq.reduced_critical(0.5, 0.5)
    assert len(crit) == 1
    p = crit[0]
    assert abs(p.eta - P4) < 1e-10 and abs(p.nu - P4) < 1e-10 and p.isometric
    assert max(map(abs, eq.reduced_gradient(p))) < 1e-10


def test_scan_finds_single_cluster():
    scan = eq.scan_isometric_critical(0.5, 0.5)
    assert len(scan) == 1
    e, v = scan[0]
    assert abs(e - P4) < 0.1 and abs(v - P4) < 0.1


def test_hessian_at_clifford_point():
    h = eq.reduced_hessian(eq.CLIFFORD_POINT)
    assert h.critical and not h.note
    assert np.max(np.abs(h.matrix - np.diag([-16.0, 0.0]))) <= 1e-6
    assert (h.index, h.nullity) == (1, 1)


def test_exact_pairings():
    assert eq.exact_hessian_pairings() == SymMatrix.diagonal([-16, 0])


def test_non_critical_point_annotated():
    with pytest.warns(RuntimeWarning):
        h = eq.reduced_hessian(eq.ReducedPoint(1.0, 0.5))
    assert not h.critical and "not critical" in h.note
