import math

import pytest

from torsionlab.alexl2 import (NotAdmissibleError, VacuousSymmetryError,
                               complex_torsion_function, monomial_offset, real_scale,
                               symmetry_report, torsion_function, torsion_quadrature,
                               torsion_roots, triple_from_knot)
from torsionlab.chain import BasedChainComplex, torus_complex
from torsionlab.groupring import LaurentMatrix
from torsionlab.knot import KnotRecord, get_knot, parse_braid

GOLDEN = (1 + math.sqrt(5)) / 2


@pytest.fixture(scope="module")
def trefoil():
    return triple_from_knot(get_knot("trefoil"))


@pytest.fixture(scope="module")
def figure_eight():
    return triple_from_knot(get_knot("figure-eight"))


def test_roots_backend_fixtures(trefoil, figure_eight):
    assert torsion_roots(trefoil, 2.0) == pytest.approx(2.0)
    assert torsion_roots(trefoil, 0.5) == pytest.approx(1.0)
    assert torsion_roots(figure_eight, 2.0) == pytest.approx(GOLDEN ** 2)
    # value at 1 is the Mahler measure of Delta
    assert torsion_roots(figure_eight, 1.0) == pytest.approx(GOLDEN ** 2)


def test_unknot_quadrature():
    U = triple_from_knot(KnotRecord("unknot", braid=parse_braid("strands=1;")))
    for t in (0.5, 2.0, 3.0):
        assert torsion_quadrature(U, t) == pytest.approx(1 / max(1.0, t), rel=1e-9)
    with pytest.raises(NotAdmissibleError):
        symmetry_report(U, [2, 3, 5])


@pytest.mark.parametrize("name", ["trefoil", "figure-eight"])
def test_backends_differ_by_a_fixed_monomial(name):
    T = triple_from_knot(get_knot(name))
    m, resid = monomial_offset(torsion_function(T, "quadrature"), torsion_function(T, "roots"),
                               [0.5, 2.0, 3.0])
    assert resid <= 1e-5
    ratio = torsion_quadrature(T, 1.0) / torsion_roots(T, 1.0)
    assert ratio == pytest.approx(1.0, rel=1e-6)


@pytest.mark.parametrize("backend", ["roots", "quadrature"])
def test_symmetry_reports(trefoil, figure_eight, backend):
    for T, grid in ((trefoil, [2, 3, 5]), (figure_eight, [2, 3])):
        rep = symmetry_report(T, grid, backend)
        assert rep.n == -1
        assert rep.parity == "odd" and rep.expected_parity == "odd"
        assert rep.integrality_residual <= (1e-9 if backend == "roots" else 1e-6)
        assert rep.passed


def test_grid_validation(trefoil, figure_eight):
    with pytest.raises(ValueError, match="avoid t = 1"):
        symmetry_report(trefoil, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError, match="positive"):
        symmetry_report(trefoil, [-2.0, 2.0, 3.0])
    rep = symmetry_report(figure_eight, [GOLDEN ** 2, 2, 3])
    assert rep.excluded == (GOLDEN ** 2,)
    with pytest.raises(ValueError, match="two usable"):
        symmetry_report(trefoil, [3.0])


def test_vacuous_symmetry():
    zero = lambda t: BasedChainComplex((1, 1), (LaurentMatrix.zeros(1, 1),), t=t)
    with pytest.raises(VacuousSymmetryError, match="symmetry vacuous"):
        symmetry_report(complex_torsion_function(zero), [2, 3, 5])


def test_torus_symmetry_exponent_is_zero():
    f = complex_torsion_function(lambda t: torus_complex((1, 1), t))
    rep = symmetry_report(f, [2, 3, 5])
    assert rep.n == 0 and rep.passed


@pytest.mark.parametrize("r", [0.5, 2.0, -1.0])
def test_real_scale(trefoil, figure_eight, r):
    for T in (trefoil, figure_eight):
        S = real_scale(T, r)
        for t in (0.5, 2.0, 3.0):
            assert torsion_roots(S, t) == pytest.approx(torsion_roots(T, t ** r), rel=1e-9)
        rep = symmetry_report(S, [2, 3, 5])
        assert rep.fitted == pytest.approx(-r, abs=1e-9)
        assert rep.integral == float(r).is_integer()


def test_real_scale_examples(trefoil):
    assert torsion_roots(real_scale(trefoil, 2), 2.0) == pytest.approx(4.0)
    assert real_scale(trefoil, 1) == trefoil
    with pytest.raises(NotAdmissibleError, match="nonzero"):
        real_scale(trefoil, 0)


def test_euler_actions_keep_the_parity(trefoil):
    base = symmetry_report(trefoil, [2, 3, 5], "quadrature")
    f = torsion_function(trefoil, "quadrature", euler_actions=[(1, 0, 2), (2, 1, -1), (0, 0, 3)])
    rep = symmetry_report(f, [2, 3, 5])
    assert rep.integrality_residual <= 1e-5
    assert rep.parity == base.parity
    assert rep.n != base.n
