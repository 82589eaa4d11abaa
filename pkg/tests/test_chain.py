import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsionlab.chain import (EULER_SIGN, BasedChainComplex, ChainComplexError, act_euler,
                              direct_sum, dualize, l2_betti_generic, scalar_complex, torsion,
                              torus_complex)
from torsionlab.groupring import LaurentMatrix, LaurentPoly
from torsionlab.verify import random_acyclic_complex


def one_step(p: LaurentPoly, t: float = 1.0) -> BasedChainComplex:
    return BasedChainComplex((1, 1), (LaurentMatrix.from_entries([[p]]),), t=t)


def test_betti_numbers():
    assert l2_betti_generic(one_step(LaurentPoly([-1, 1]))) == (0, 0)
    assert l2_betti_generic(one_step(LaurentPoly())) == (1, 1)
    assert l2_betti_generic(torus_complex((1, 0), 2.0)) == (0, 0, 0)


def test_torsion_fixtures():
    assert torsion(one_step(LaurentPoly([-1, 2]))).value == pytest.approx(0.5, rel=1e-9)
    res = torsion(one_step(LaurentPoly()))
    assert res.value == 0.0 and not res.acyclic
    empty = BasedChainComplex((0, 0), (LaurentMatrix.zeros(0, 0),))
    assert torsion(empty).value == 1.0


@pytest.mark.parametrize("ab", [(1, 0), (1, 1), (0, 1), (2, -3)])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 5.0])
def test_torus_torsion_is_one(ab, t):
    assert torsion(torus_complex(ab, t)).value == pytest.approx(1.0, abs=1e-6)


def test_torus_boundaries():
    C = torus_complex((1, 0), 2.0)
    A1, A2 = C.boundaries
    assert A2.entry(0, 0).is_zero() and A2.entry(0, 1) == LaurentPoly([1, -2])
    assert A1.entry(0, 0) == LaurentPoly([1, -2]) and A1.entry(1, 0).is_zero()
    with pytest.raises(ChainComplexError, match="nonvanishing"):
        torus_complex((0, 0), 1.0)


def test_boundary_of_boundary_is_checked():
    A1 = LaurentMatrix.constant([[1.0]])
    A2 = LaurentMatrix.constant([[1.0]])
    with pytest.raises(ChainComplexError, match="boundary of boundary"):
        BasedChainComplex((1, 1, 1), (A1, A2))
    with pytest.raises(ChainComplexError, match="shape"):
        BasedChainComplex((1, 2), (A1,))


def test_euler_sign_fixture():
    # 0 -> C[Z] --(tz)--> C[Z] -> 0, decorate the degree-1 generator by z
    t = 3.0
    C = one_step(LaurentPoly.monomial(1, t), t)
    before = torsion(C, method="exact").value
    after = torsion(act_euler(C, 1, 0, 1), method="exact").value
    assert before == pytest.approx(1 / t)
    assert after == pytest.approx(t ** EULER_SIGN / t)
    assert EULER_SIGN == 1


def test_euler_trivial_and_inverse_actions():
    C = torus_complex((1, 1), 2.0)
    base = torsion(C).value
    assert torsion(act_euler(C, 1, 0, 0)).value == pytest.approx(base)
    D = act_euler(act_euler(C, 2, 0, 1), 2, 0, -1)
    assert D.decorations == C.decorations
    assert torsion(act_euler(C, 0, 0, 1, sign=-1)).value == pytest.approx(2.0 * base, rel=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.integers(-3, 3), st.floats(0.3, 3.0))
def test_euler_action_on_torus(degree, k, t):
    C = torus_complex((1, 2), t)
    idx = 1 if degree == 1 else 0
    shift = torsion(act_euler(C, degree, idx, k)).log_value - torsion(C).log_value
    assert shift == pytest.approx(EULER_SIGN * k * math.log(t), abs=1e-5)


def test_duality_fixtures():
    C = scalar_complex([[[2.0]]])
    D = dualize(C)
    assert D.boundaries[0].coeffs[0, 0, 0] == -2
    assert torsion(C).value == pytest.approx(0.5)
    assert torsion(D).value == pytest.approx(0.5)

    C = BasedChainComplex((0, 1, 1), (LaurentMatrix.zeros(1, 0), LaurentMatrix.constant([[3.0]])))
    assert torsion(C).value == pytest.approx(3.0)
    assert torsion(dualize(C)).value == pytest.approx(1 / 3)

    T = torus_complex((1, 1), 2.0)
    assert torsion(dualize(T)).value == pytest.approx(1.0, abs=1e-6)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_duality_on_random_complexes(seed):
    rng = np.random.default_rng(seed)
    C = random_acyclic_complex(rng, laurent=bool(seed % 2), max_length=3, max_rank=4)
    tc, td = torsion(C).value, torsion(dualize(C)).value
    assert math.log(td) == pytest.approx((-1) ** (C.length + 1) * math.log(tc), abs=1e-6)
    assert torsion(dualize(dualize(C))).value == pytest.approx(tc, rel=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_defective_complexes_dualize_to_zero(seed):
    C = random_acyclic_complex(np.random.default_rng(seed), defect=True)
    assert torsion(C).value == 0.0
    assert torsion(dualize(C)).value == 0.0


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_direct_sum_is_multiplicative(seed):
    rng = np.random.default_rng(seed)
    C, D = random_acyclic_complex(rng), random_acyclic_complex(rng)
    assert torsion(direct_sum(C, D)).value == pytest.approx(
        torsion(C).value * torsion(D).value, rel=1e-9)


def test_exact_and_quadrature_methods_agree():
    rng = np.random.default_rng(2)
    M = LaurentMatrix(rng.normal(size=(3, 3, 3)), -1)
    C = BasedChainComplex((3, 3), (M,), t=1.7)
    C = act_euler(C, 0, 1, 2)
    assert torsion(C, method="exact").value == pytest.approx(torsion(C).value, rel=1e-6)
