import json

import numpy as np
import pytest

from torsionlab.chain import torsion
from torsionlab.verify import (SUITES, SuiteResult, random_acyclic_complex, random_knot_braid,
                               run_suite)


@pytest.mark.parametrize("name", SUITES)
def test_suites_pass_and_are_reproducible(name):
    a = run_suite(name, 8, seed=123)
    b = run_suite(name, 8, seed=123)
    assert a.ok, a.counterexample
    assert json.dumps(a.as_dict()) == json.dumps(b.as_dict())


def test_random_complexes_are_acyclic_and_exact():
    rng = np.random.default_rng(0)
    for laurent in (False, True):
        for _ in range(10):
            C = random_acyclic_complex(rng, laurent=laurent, max_length=3, max_rank=4)
            assert C.dd_residual() <= 1e-9 * max(1.0, max(A.max_abs() for A in C.boundaries) ** 2)
            assert torsion(C).value > 0
            if laurent:
                assert max(A.span for A in C.boundaries) <= 4


def test_random_braids_close_to_knots():
    rng = np.random.default_rng(0)
    for _ in range(20):
        b = random_knot_braid(rng)
        assert b.closure_components() == 1 and len(b.letters) <= 8


def test_counterexample_is_recorded_once():
    res = SuiteResult("demo", 5)
    res.record("item", True, 0, lambda: {})
    res.record("item", False, 1, lambda: {"x": 1})
    res.record("item", False, 2, lambda: {"x": 2})
    assert not res.ok
    assert res.counterexample == {"item": "item", "case": 1, "seed": 5, "x": 1}
    assert res.as_dict()["items"]["item"] == {"passed": 1, "total": 3}
    json.dumps(res.as_dict())


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("nope")
