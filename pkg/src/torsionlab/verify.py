"""Randomized invariant suites.

Every suite draws its cases from ``numpy.random.default_rng(seed)``, so a
(seed, cases) pair reproduces a run exactly.  A suite reports one pass count
per checked identity and keeps the first counterexample it meets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chain import (EULER_SIGN, BasedChainComplex, act_euler, direct_sum, dualize,
                    torsion, torus_complex)
from .fkdet import DEFAULT_SETTINGS, QuadratureSettings, fk_det, fk_det_square_poly
from .groupring import LaurentMatrix, LaurentPoly
from .knot import BraidWord, alexander_polynomial, braid_to_pd, is_alexander_symmetric, wirtinger

SUITES = ("fkdet", "duality", "torus", "euler", "alexander")


@dataclass
class ItemResult:
    passed: int = 0
    total: int = 0

    @property
    def ok(self) -> bool:
        return self.passed == self.total


@dataclass
class SuiteResult:
    suite: str
    seed: int
    items: dict[str, ItemResult] = field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return all(it.ok for it in self.items.values())

    def record(self, item: str, ok: bool, case: int, detail: Callable[[], dict]):
        it = self.items.setdefault(item, ItemResult())
        it.total += 1
        if ok:
            it.passed += 1
        elif self.counterexample is None:
            self.counterexample = {"item": item, "case": case, "seed": self.seed, **detail()}

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.ok,
            "items": {k: {"passed": v.passed, "total": v.total} for k, v in self.items.items()},
            "counterexample": self.counterexample,
        }


def _rel(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def matrix_dump(M: LaurentMatrix) -> dict:
    return {"low": M.low,
            "coeffs": [[[[c.real, c.imag] for c in e] for e in row] for row in M.coeffs.tolist()]}


def complex_dump(C: BasedChainComplex) -> dict:
    return {"ranks": list(C.ranks), "t": C.t,
            "boundaries": [matrix_dump(A) for A in C.boundaries]}


# ---------------------------------------------------------------------------
# random inputs
# ---------------------------------------------------------------------------

def _cnum(rng, size=None):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_poly(rng, max_span: int = 2, low_range: int = 1) -> LaurentPoly:
    span = int(rng.integers(0, max_span + 1))
    c = _cnum(rng, span + 1)
    return LaurentPoly(c, int(rng.integers(-low_range, low_range + 1)))


def random_laurent_matrix(rng, rows: int, cols: int, max_span: int = 3) -> LaurentMatrix:
    span = int(rng.integers(0, max_span + 1))
    low = int(rng.integers(-1, 2))
    return LaurentMatrix(_cnum(rng, (rows, cols, span + 1)), low)


def _elementary(rng, n: int, laurent: bool) -> tuple[LaurentMatrix, LaurentMatrix]:
    """``G = I + c z^k e_ab`` and its inverse ``I - c z^k e_ab``."""
    if n < 2:
        u = complex(_cnum(rng)) if rng.random() < 0.5 else 1.0
        return LaurentMatrix.constant([[u]]), LaurentMatrix.constant([[1 / u]])
    a, b = rng.choice(n, size=2, replace=False)
    k = int(rng.integers(-1, 2)) if laurent else 0
    c = complex(_cnum(rng))
    E = [[LaurentPoly() for _ in range(n)] for _ in range(n)]
    E[a][b] = LaurentPoly.monomial(k, c)
    E = LaurentMatrix.from_entries(E, shape=(n, n))
    eye = LaurentMatrix.identity(n)
    return eye + E, eye - E


def random_acyclic_complex(rng, max_length: int = 4, max_rank: int = 6, laurent: bool = False,
                           defect: bool = False) -> BasedChainComplex:
    """Random complex ``A_i = G_i A0_i G_{i-1}^-1`` with ``A0`` in normal form.

    Degree ``i`` splits as ``r_i`` lift coordinates followed by ``r_{i+1}``
    boundary coordinates; ``A0_i`` maps the lifts of degree ``i`` onto the
    boundary block of degree ``i-1`` by a diagonal of nonzero entries.  With
    ``defect`` one diagonal entry is zero, so the complex is not acyclic.
    """
    m = int(rng.integers(1, max_length + 1))
    cap = max(1, max_rank // 2)
    while True:
        r = [0] + [int(rng.integers(0, cap + 1)) for _ in range(m)] + [0]
        if sum(r) > 0:
            break
    ranks = [r[i] + r[i + 1] for i in range(m + 1)]
    gs = []
    for n in ranks:
        G, Gi = LaurentMatrix.identity(n), LaurentMatrix.identity(n)
        for _ in range(2 if not laurent else 1):
            E, Ei = _elementary(rng, n, laurent) if n else (G, Gi)
            G, Gi = E @ G, Gi @ Ei
        gs.append((G, Gi))
    kill = None
    if defect:
        opts = [(i, j) for i in range(1, m + 1) for j in range(r[i])]
        kill = opts[int(rng.integers(len(opts)))]
    bds = []
    for i in range(1, m + 1):
        rows = [[LaurentPoly() for _ in range(ranks[i - 1])] for _ in range(ranks[i])]
        for j in range(r[i]):
            if (i, j) == kill:
                continue
            # low exponent 0 keeps the span of A_i at most 4
            p = random_poly(rng, 2, 0) if laurent else LaurentPoly.constant(complex(_cnum(rng)))
            rows[j][r[i - 1] + j] = p
        A0 = LaurentMatrix.from_entries(rows, shape=(ranks[i], ranks[i - 1]))
        bds.append(gs[i][0] @ A0 @ gs[i - 1][1])
    t = float(np.exp(rng.uniform(-1, 1))) if laurent else 1.0
    return BasedChainComplex(tuple(ranks), tuple(bds), t=t)


def random_knot_braid(rng, max_crossings: int = 8, max_strands: int = 4) -> BraidWord:
    """Random braid word whose closure is a knot."""
    while True:
        n = int(rng.integers(2, max_strands + 1))
        length = int(rng.integers(n - 1, max_crossings + 1))
        letters = tuple(int(rng.integers(1, n)) * int(rng.choice([-1, 1])) for _ in range(length))
        b = BraidWord(n, letters)
        if b.closure_components() == 1:
            return b


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_fkdet(cases: int = 100, seed: int = 0,
                settings: QuadratureSettings = DEFAULT_SETTINGS, tol: float = 1e-6) -> SuiteResult:
    """Determinant identities: constant matrices, swaps, monomial columns, adjoints."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("fkdet", seed)
    for case in range(cases):
        n = int(rng.integers(1, 5))
        A = _cnum(rng, (n, n))
        expect = abs(np.linalg.det(A))
        got = fk_det(LaurentMatrix.constant(A), settings).value
        exact = fk_det_square_poly(LaurentMatrix.constant(A)).value
        res.record("constant", _rel(got, expect) <= 1e-12 and _rel(exact, expect) <= 1e-12, case,
                   lambda: {"matrix": matrix_dump(LaurentMatrix.constant(A)), "expected": expect, "quadrature": got, "exact": exact})

        rows, cols = (int(v) for v in rng.integers(1, 4, size=2))
        M = random_laurent_matrix(rng, rows, cols)
        base = fk_det(M, settings).value

        if rows > 1 and rng.random() < 0.5:
            i, j = rng.choice(rows, size=2, replace=False)
            N = M.swap_rows(int(i), int(j))
        elif cols > 1:
            i, j = rng.choice(cols, size=2, replace=False)
            N = M.swap_cols(int(i), int(j))
        else:
            N = M
        val = fk_det(N, settings).value
        res.record("swap", _rel(val, base) <= tol, case,
                   lambda: {"matrix": matrix_dump(M), "base": base, "swapped": val})

        j = int(rng.integers(cols))
        k = int(rng.integers(-3, 4))
        sign = float(rng.choice([-1, 1]))
        N = M.scale_col(j, LaurentPoly.monomial(k, sign))
        val2 = fk_det(N, settings).value
        res.record("monomial-column", _rel(val2, base) <= tol, case,
                   lambda: {"matrix": matrix_dump(M), "column": j, "k": k, "sign": sign,
                            "base": base, "scaled": val2})

        val3 = fk_det(M.adjoint(), settings).value
        ok = _rel(val3, base) <= tol
        if rows == cols:
            ok = ok and _rel(fk_det_square_poly(M.adjoint()).value, fk_det_square_poly(M).value) <= 1e-9
        res.record("adjoint", ok, case,
                   lambda: {"matrix": matrix_dump(M), "base": base, "adjoint": val3})
    return res


def suite_duality(cases: int = 200, seed: int = 0, laurent_cases: int | None = None,
                  settings: QuadratureSettings = DEFAULT_SETTINGS) -> SuiteResult:
    """``tau(C#) = tau(C)^((-1)^(m+1))`` on random acyclic and defective complexes."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("duality", seed)
    if laurent_cases is None:
        laurent_cases = max(1, cases // 4)

    def check(item, C, tol, case):
        tc = torsion(C, settings).value
        td = torsion(dualize(C), settings).value
        m = C.length
        if tc == 0:
            ok = td == 0
        else:
            ok = td > 0 and abs(math.log(td) - (-1) ** (m + 1) * math.log(tc)) <= tol
        res.record(item, ok, case,
                   lambda: {"complex": complex_dump(C), "tau": tc, "tau_dual": td})

    for case in range(cases):
        check("scalar", random_acyclic_complex(rng), 1e-9, case)
    for case in range(laurent_cases):
        C = random_acyclic_complex(rng, max_length=3, max_rank=4, laurent=True)
        check("laurent", C, 1e-6, case)
    for case in range(max(1, cases // 10)):
        check("zero-torsion", random_acyclic_complex(rng, defect=True), 0.0, case)
    for case in range(max(1, cases // 10)):
        C = random_acyclic_complex(rng, max_length=3)
        D = random_acyclic_complex(rng, max_length=3)
        tc, td = torsion(C).value, torsion(D).value
        ts = torsion(direct_sum(C, D)).value
        res.record("direct-sum", _rel(ts, tc * td) <= 1e-9, case,
                   lambda: {"C": complex_dump(C), "D": complex_dump(D), "sum": ts})
    return res


TORUS_GRID = (0.5, 1.0, 2.0, 5.0)


def suite_torus(cases: int = 20, seed: int = 0, settings: QuadratureSettings = DEFAULT_SETTINGS,
                tol: float = 1e-6) -> SuiteResult:
    """Torus complexes have torsion 1: the fixed classes plus random nonzero ones."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("torus", seed)
    classes = [(1, 0), (1, 1), (0, 1)]
    while len(classes) < max(cases, 3):
        a, b = (int(v) for v in rng.integers(-3, 4, size=2))
        if (a, b) != (0, 0):
            classes.append((a, b))
    for case, ab in enumerate(classes[:max(cases, 3)]):
        for t in TORUS_GRID:
            val = torsion(torus_complex(ab, t), settings).value
            res.record("tau=1", abs(val - 1.0) <= tol, case,
                       lambda: {"phi": list(ab), "t": t, "tau": val})
    return res


def suite_euler(cases: int = 50, seed: int = 0, settings: QuadratureSettings = DEFAULT_SETTINGS
                ) -> SuiteResult:
    """``act_euler`` by ``z^k`` multiplies torsion by ``t^(EULER_SIGN * k)``.

    Square length-one complexes go through the exact path (``1e-9``), random
    Laurent complexes through quadrature (``1e-5``).
    """
    rng = np.random.default_rng(seed)
    res = SuiteResult("euler", seed)
    for case in range(cases):
        n = int(rng.integers(1, 4))
        t = float(np.exp(rng.uniform(-1.5, 1.5)))
        M = random_laurent_matrix(rng, n, n, max_span=2)
        C = BasedChainComplex((n, n), (M,), t=t)
        deg, idx = int(rng.integers(0, 2)), int(rng.integers(n))
        k = int(rng.integers(-3, 4))
        base = torsion(C, method="exact").log_value
        moved = torsion(act_euler(C, deg, idx, k), method="exact").log_value
        resid = abs(moved - base - EULER_SIGN * k * math.log(t))
        res.record("exact", resid <= 1e-9, case,
                   lambda: {"matrix": matrix_dump(M), "t": t, "degree": deg, "k": k, "residual": resid})

        C = random_acyclic_complex(rng, max_length=3, max_rank=4, laurent=True)
        acts = []
        D = C
        for _ in range(int(rng.integers(1, 4))):
            deg = int(rng.integers(0, C.length + 1))
            if C.ranks[deg] == 0:
                continue
            idx, k = int(rng.integers(C.ranks[deg])), int(rng.integers(-3, 4))
            D = act_euler(D, deg, idx, k)
            acts.append((deg, idx, k))
        base = torsion(C, settings).log_value
        moved = torsion(D, settings).log_value
        total = sum(k for _, _, k in acts)
        resid = abs(moved - base - EULER_SIGN * total * math.log(C.t))
        res.record("quadrature", resid <= 1e-5, case,
                   lambda: {"complex": complex_dump(C), "actions": acts, "residual": resid})
    return res


def suite_alexander(cases: int = 20, seed: int = 0, max_crossings: int = 8) -> SuiteResult:
    """Random braid closures that are knots have symmetric Delta with |Delta(1)| = 1."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("alexander", seed)
    for case in range(cases):
        b = random_knot_braid(rng, max_crossings)
        delta = alexander_polynomial(wirtinger(braid_to_pd(b)))
        res.record("symmetric", is_alexander_symmetric(delta), case,
                   lambda: {"braid": str(b), "alexander": [complex(c).real for c in delta.coeffs]})
        one = abs(delta(1.0))
        res.record("unit-at-1", abs(one - 1.0) <= 1e-9, case,
                   lambda: {"braid": str(b), "delta(1)": one})
    return res


_RUNNERS = {
    "fkdet": suite_fkdet,
    "duality": suite_duality,
    "torus": suite_torus,
    "euler": suite_euler,
    "alexander": suite_alexander,
}


def run_suite(name: str, cases: int | None = None, seed: int = 0, **kwargs) -> SuiteResult:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if cases is not None:
        kwargs["cases"] = cases
    return _RUNNERS[name](seed=seed, **kwargs)
