import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsionlab.groupring import GroupWord, RingElement
from torsionlab.knot import (DiagramError, KnotParseError, alexander_coefficients,
                             alexander_polynomial, braid_to_pd, fox_derivative, get_knot,
                             is_alexander_symmetric, parse_braid, parse_pd, presentation_complex,
                             wirtinger)
from torsionlab.verify import random_knot_braid

TREFOIL_PD = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]"
FIGURE_EIGHT_PD = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"
X, Y = GroupWord.gen(0), GroupWord.gen(1)


def torus_knot_alexander(p, q):
    # (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)), by polynomial division
    def mono(n):
        c = np.zeros(n + 1)
        c[0], c[n] = -1, 1
        return c
    num = np.polynomial.polynomial.polymul(mono(p * q), mono(1))
    den = np.polynomial.polynomial.polymul(mono(p), mono(q))
    quo, rem = np.polynomial.polynomial.polydiv(num, den)
    assert np.allclose(rem, 0)
    return [int(round(c)) for c in quo]


def test_braid_grammar():
    b = parse_braid("strands=3; s1 s2^-1 s1 s2^-1")
    assert b.strands == 3 and b.letters == (1, -2, 1, -2)
    assert parse_braid(str(b)) == b
    assert parse_braid("s1 s1 s1") == parse_braid("strands=2; s1^3")
    with pytest.raises(KnotParseError, match="out of range") as err:
        parse_braid("strands=2; s1 s3")
    assert err.value.position == 14
    with pytest.raises(KnotParseError, match="unexpected token"):
        parse_braid("s1 t2")


def test_pd_grammar_round_trip():
    pd = parse_pd(TREFOIL_PD)
    assert str(pd) == TREFOIL_PD
    with pytest.raises(KnotParseError):
        parse_pd("PD[X[1,2,3]")
    with pytest.raises(DiagramError):
        parse_pd("PD[X[1,2,3,4]]")


def test_braid_closures():
    assert len(braid_to_pd(parse_braid("strands=2; s1 s1 s1"))) == 3
    assert len(braid_to_pd(parse_braid("strands=1;"))) == 0
    curl = braid_to_pd(parse_braid("strands=2; s1"))
    assert len(curl) == 1 and wirtinger(curl).is_trivial_group()
    with pytest.raises(DiagramError, match="link closures unsupported"):
        braid_to_pd(parse_braid("strands=2; s1 s1"))


def test_wirtinger_sizes():
    P = get_knot("trefoil").presentation
    assert P.generator_count == 3 and len(P.retained) == 2
    assert get_knot("figure-eight").presentation.generator_count == 4
    assert len(get_knot("figure-eight").presentation.retained) == 3
    U = wirtinger(braid_to_pd(parse_braid("strands=1;")))
    assert U.generator_count == 1 and U.retained == ()


def test_fox_examples():
    assert fox_derivative(X * Y, 0) == RingElement.scalar(1)
    assert fox_derivative(X.inverse(), 0) == RingElement.from_word(X.inverse(), -1)
    comm = X * Y * X.inverse() * Y.inverse()
    assert fox_derivative(comm, 1) == RingElement.from_word(X) - RingElement.from_word(comm)


@pytest.mark.parametrize("source, expected", [
    ("trefoil", [1, -1, 1]),
    ("figure-eight", [1, -3, 1]),
])
def test_bundled_alexander(source, expected):
    k = get_knot(source)
    assert alexander_coefficients(k.alexander) == expected
    assert k.genus == 1


@pytest.mark.parametrize("text, expected", [
    (TREFOIL_PD, [1, -1, 1]),
    (FIGURE_EIGHT_PD, [1, -3, 1]),
])
def test_pd_alexander(text, expected):
    assert alexander_coefficients(alexander_polynomial(wirtinger(parse_pd(text)))) == expected


@pytest.mark.parametrize("word, p, q", [
    ("strands=2; s1^5", 2, 5),
    ("strands=2; s1^-7", 2, 7),
    ("strands=3; s1 s2 s1 s2 s1 s2 s1 s2", 3, 4),
    ("strands=3; s1 s2 s1 s2 s1 s2 s1 s2 s1 s2", 3, 5),
])
def test_torus_knot_alexander(word, p, q):
    delta = alexander_polynomial(wirtinger(braid_to_pd(parse_braid(word))))
    assert alexander_coefficients(delta) == torus_knot_alexander(p, q)


@pytest.mark.parametrize("name", ["trefoil", "figure-eight"])
def test_column_deletion_independence(name):
    P = get_knot(name).presentation
    polys = {tuple(alexander_coefficients(alexander_polynomial(P, c)))
             for c in range(P.generator_count)}
    assert len(polys) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_closures_have_symmetric_alexander(seed):
    b = random_knot_braid(np.random.default_rng(seed))
    P = wirtinger(braid_to_pd(b))
    delta = alexander_polynomial(P)
    assert is_alexander_symmetric(delta)
    assert abs(delta(1.0)) == pytest.approx(1.0)
    C = presentation_complex(P, 1.3)
    assert C.dd_residual() <= 1e-12 * max(1.0, C.boundaries[1].max_abs())


def test_unknot_presentation_complex():
    C = presentation_complex(wirtinger(braid_to_pd(parse_braid("strands=1;"))), 2.0)
    assert C.ranks == (1, 1, 0)
