"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (bypassing pytest capture)
before asserting.  Run directly with ``python tests/test_acceptance.py`` for
the summary alone.
"""
import math
import sys
import time

import numpy as np
import pytest

from torsionlab.alexl2 import (monomial_offset, real_scale, symmetry_report, torsion_function,
                               torsion_roots, triple_from_knot)
from torsionlab.chain import torsion, torus_complex
from torsionlab.knot import alexander_coefficients, get_knot
from torsionlab.verify import suite_alexander, suite_duality, suite_euler, suite_fkdet

KNOTS = ("trefoil", "figure-eight")
SEED = 20240101


def report(capsys, number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def check_1():
    t0 = time.perf_counter()
    worst = 0.0
    for ab in [(1, 0), (1, 1)]:
        for t in (0.5, 1.0, 2.0, 5.0):
            worst = max(worst, abs(torsion(torus_complex(ab, t)).value - 1.0))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 5
    return ok, f"torus torsion max |tau-1| = {worst:.2e}, {elapsed:.2f} s"


def check_2():
    t0 = time.perf_counter()
    ok, parts = True, []
    for name in KNOTS:
        T = triple_from_knot(get_knot(name))
        for backend, tol in (("roots", 1e-9), ("quadrature", 1e-6)):
            rep = symmetry_report(T, [2.0, 3.0, 5.0], backend)
            good = (rep.integrality_residual <= tol and rep.n == -1 and rep.parity == "odd"
                    and rep.expected_parity == "odd" and get_knot(name).genus == 1)
            ok &= good
            parts.append(f"{name}/{backend} n={rep.fitted:.12f}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 5
    return ok, "; ".join(parts) + f"; {elapsed:.2f} s"


def check_3():
    t0 = time.perf_counter()
    res = suite_duality(cases=200, laurent_cases=50, seed=SEED)
    elapsed = time.perf_counter() - t0
    items = res.items
    ok = (res.ok and items["scalar"].total == 200 and items["laurent"].total == 50
          and items["zero-torsion"].total > 0 and elapsed < 60)
    counts = ", ".join(f"{k} {v.passed}/{v.total}" for k, v in items.items())
    return ok, f"duality {counts}; {elapsed:.2f} s"


def check_4():
    res = suite_fkdet(cases=100, seed=SEED, tol=1e-6)
    ok = res.ok and all(v.total == 100 for v in res.items.values())
    return ok, "determinant identities " + ", ".join(f"{k} {v.passed}/{v.total}"
                                                   for k, v in res.items.items())


def check_5():
    res = suite_euler(cases=50, seed=SEED)
    rng = np.random.default_rng(SEED)
    parity_ok, trials = True, 0
    for name in KNOTS:
        T = triple_from_knot(get_knot(name))
        base = symmetry_report(T, [2.0, 3.0, 5.0], "quadrature")
        ranks = (1, T.presentation.generator_count, len(T.presentation.retained))
        for _ in range(5):
            acts = []
            for _ in range(int(rng.integers(1, 5))):
                deg = int(rng.integers(0, 3))
                acts.append((deg, int(rng.integers(ranks[deg])), int(rng.integers(-3, 4))))
            rep = symmetry_report(torsion_function(T, "quadrature", euler_actions=acts),
                                  [2.0, 3.0, 5.0])
            parity_ok &= rep.integrality_residual <= 1e-5 and rep.parity == base.parity
            trials += 1
    ok = res.ok and parity_ok
    counts = ", ".join(f"{k} {v.passed}/{v.total}" for k, v in res.items.items())
    return ok, f"Euler action {counts}; parity kept in {trials} action sequences: {parity_ok}"


def check_6():
    ok, parts = True, []
    for name in KNOTS:
        T = triple_from_knot(get_knot(name))
        m, resid = monomial_offset(torsion_function(T, "quadrature"), torsion_function(T, "roots"),
                                   [0.5, 2.0, 3.0])
        ok &= resid <= 1e-5
        parts.append(f"{name} m={m} residual={resid:.1e}")
    return ok, "backend offsets " + "; ".join(parts)


def check_7():
    t0 = time.perf_counter()
    tre = alexander_coefficients(get_knot("trefoil").alexander)
    fig = alexander_coefficients(get_knot("figure-eight").alexander)
    res = suite_alexander(cases=20, seed=SEED, max_crossings=8)
    elapsed = time.perf_counter() - t0
    ok = tre == [1, -1, 1] and fig == [1, -3, 1] and res.ok and elapsed < 30
    counts = ", ".join(f"{k} {v.passed}/{v.total}" for k, v in res.items.items())
    return ok, f"Delta trefoil {tre}, figure-eight {fig}; random closures {counts}; {elapsed:.2f} s"


def check_8():
    ok, worst = True, 0.0
    fits = []
    for name in KNOTS:
        T = triple_from_knot(get_knot(name))
        n = symmetry_report(T, [2.0, 3.0, 5.0]).fitted
        for r in (0.5, 2.0, -1.0):
            S = real_scale(T, r)
            for t in (0.5, 2.0, 3.0, 5.0):
                a, b = torsion_roots(S, t), torsion_roots(T, t ** r)
                worst = max(worst, abs(a - b) / b)
            fit = symmetry_report(S, [2.0, 3.0, 5.0]).fitted
            ok &= abs(fit - r * n) <= 1e-9
            fits.append(f"{name} r={r:g}: {fit:.6f}")
    ok &= worst <= 1e-9
    return ok, f"real classes max rel err {worst:.1e}; exponents " + ", ".join(fits)


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8]


@pytest.mark.parametrize("number", range(1, 9))
def test_criterion(number, capsys):
    ok, detail = CHECKS[number - 1]()
    assert report(capsys, number, ok, detail), detail


if __name__ == "__main__":
    results = [report(None, i, *check()) for i, check in enumerate(CHECKS, start=1)]
    sys.exit(0 if all(results) else 1)
