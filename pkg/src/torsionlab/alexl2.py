"""Abelian L2-Alexander torsion of knot exteriors and its symmetry exponent.

Two backends evaluate ``t -> tau(t)`` for the triple (knot exterior,
meridian class, abelianization):

``roots``
    closed form from the Alexander polynomial ``Delta = c prod (z - a_i)``:
    ``|c| prod max(t, |a_i|) / max(t, 1)`` (the pinned "canonical"
    representative);
``quadrature``
    L2-torsion of the Fox presentation complex specialized at ``t``,
    computed with the rectangular Fuglede-Kadison quadrature.

The two agree up to a factor ``t^m`` with ``m`` an integer fixed per
presentation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .chain import BasedChainComplex, act_euler, torsion
from .fkdet import DEFAULT_SETTINGS, QuadratureSettings, _cluster_moduli, polynomial_roots
from .groupring import AbelianizationMap, LaurentPoly
from .knot import KnotRecord, WirtingerPresentation, alexander_polynomial, presentation_complex

#: grid points closer than this to 1 or to a kink of the roots formula are excluded
KINK_RADIUS = 1e-3

BACKENDS = ("roots", "quadrature")


class NotAdmissibleError(ValueError):
    pass


class VacuousSymmetryError(ArithmeticError):
    """The torsion vanishes on the grid, so both sides of the symmetry are zero."""


@dataclass(frozen=True)
class AdmissibleTripleAbelian:
    """Knot exterior with ``phi`` = meridian class and ``gamma`` = ``phi``.

    ``real_scale`` replaces ``phi`` by ``real_scale * phi``; for a
    non-integral scale the triple is a real class.
    """

    presentation: WirtingerPresentation
    real_scale: float = 1.0
    genus: int | None = None
    name: str = ""

    def __post_init__(self):
        if self.real_scale == 0:
            raise NotAdmissibleError("phi must be nonzero (real_scale = 0)")

    @property
    def phi(self) -> AbelianizationMap:
        return self.presentation.phi

    @cached_property
    def alexander(self) -> LaurentPoly:
        return alexander_polynomial(self.presentation)

    @cached_property
    def root_moduli(self) -> np.ndarray:
        return _cluster_moduli(polynomial_roots(self.alexander.coeffs))

    def is_admissible(self) -> bool:
        # the trivial knot has exterior S^1 x D^2, which is excluded
        return not self.presentation.is_trivial_group()

    def parameter(self, t: float) -> float:
        """The specialization parameter ``t^real_scale``."""
        if not t > 0:
            raise ValueError(f"t must be positive, got {t}")
        return float(t) ** self.real_scale

    def thurston_norm(self) -> float | None:
        """``|r| * (2 genus - 1)`` when the genus is known."""
        if self.genus is None or self.genus < 1:
            return None
        return abs(self.real_scale) * (2 * self.genus - 1)


def triple_from_knot(record: KnotRecord, real_scale: float = 1.0) -> AdmissibleTripleAbelian:
    return AdmissibleTripleAbelian(record.presentation, real_scale, record.genus, record.name)


def real_scale(triple: AdmissibleTripleAbelian, r: float) -> AdmissibleTripleAbelian:
    """Triple for the class ``r * phi``."""
    if r == 0:
        raise NotAdmissibleError("phi must be nonzero (r = 0)")
    return replace(triple, real_scale=triple.real_scale * float(r))


def torsion_roots(triple: AdmissibleTripleAbelian, t: float) -> float:
    s = triple.parameter(t)
    lead = abs(triple.alexander.leading())
    return float(lead * np.prod(np.maximum(s, triple.root_moduli)) / max(s, 1.0))


def torsion_quadrature(triple: AdmissibleTripleAbelian, t: float,
                       settings: QuadratureSettings = DEFAULT_SETTINGS,
                       euler_actions: Sequence[tuple[int, int, int]] = ()) -> float:
    """Torsion of the presentation complex at ``t``.

    ``euler_actions`` is a sequence of ``(degree, index, k)`` applied with
    :func:`~torsionlab.chain.act_euler` before evaluation.
    """
    C = presentation_complex(triple.presentation, triple.parameter(t))
    for degree, index, k in euler_actions:
        C = act_euler(C, degree, index, k)
    return torsion(C, settings).value


@dataclass(frozen=True)
class TorsionFunction:
    """``t -> tau(t)`` together with its backend and representative tag."""

    evaluator: Callable[[float], float]
    backend: str
    normalization: str

    def __call__(self, t: float) -> float:
        if not t > 0:
            raise ValueError(f"t must be positive, got {t}")
        return self.evaluator(float(t))


def torsion_function(triple: AdmissibleTripleAbelian, backend: str = "roots",
                     settings: QuadratureSettings = DEFAULT_SETTINGS,
                     euler_actions: Sequence[tuple[int, int, int]] = ()) -> TorsionFunction:
    if backend == "roots":
        if euler_actions:
            raise ValueError("Euler actions only apply to the quadrature backend")
        return TorsionFunction(lambda t: torsion_roots(triple, t), "roots", "canonical")
    if backend == "quadrature":
        tag = "presentation-complex" + ("+euler" if euler_actions else "")
        acts = tuple(euler_actions)
        return TorsionFunction(lambda t: torsion_quadrature(triple, t, settings, acts),
                               "quadrature", tag)
    raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")


def complex_torsion_function(build: Callable[[float], BasedChainComplex],
                             settings: QuadratureSettings = DEFAULT_SETTINGS,
                             normalization: str = "chain") -> TorsionFunction:
    """Torsion function of a family of complexes ``t -> build(t)``."""
    return TorsionFunction(lambda t: torsion(build(t), settings).value, "quadrature", normalization)


@dataclass(frozen=True)
class SymmetryReport:
    grid: tuple[float, ...]
    exponents: tuple[float, ...]
    fitted: float
    constancy: float
    integral: bool
    integrality_residual: float | None
    parity: str | None
    expected_parity: str | None
    excluded: tuple[float, ...] = ()
    backend: str = ""
    tol: float = field(default=1e-6, repr=False)

    @property
    def n(self) -> int | None:
        return round(self.fitted) if self.integral else None

    @property
    def passed(self) -> bool:
        if self.integral:
            if self.integrality_residual is None or self.integrality_residual > self.tol:
                return False
            if self.expected_parity is not None and self.parity != self.expected_parity:
                return False
            return True
        return self.constancy <= self.tol

    def as_dict(self) -> dict:
        return {
            "grid": list(self.grid),
            "exponents": list(self.exponents),
            "fitted_n": self.fitted,
            "n": self.n,
            "constancy": self.constancy,
            "integral": self.integral,
            "integrality_residual": self.integrality_residual,
            "parity": self.parity,
            "expected_parity": self.expected_parity,
            "excluded": list(self.excluded),
            "backend": self.backend,
            "passed": self.passed,
        }


def _parity(n: float) -> str:
    return "odd" if round(n) % 2 else "even"


def symmetry_report(source, grid: Sequence[float], backend: str = "roots",
                    settings: QuadratureSettings = DEFAULT_SETTINGS,
                    tol: float | None = None) -> SymmetryReport:
    """Estimate ``n`` in ``tau(1/t) = t^n tau(t)`` on a grid.

    ``source`` is an :class:`AdmissibleTripleAbelian` (evaluated with
    ``backend``) or a ready :class:`TorsionFunction`.  Each grid point gives
    ``n(t) = log(tau(1/t)/tau(t)) / log t``.
    """
    triple = None
    if isinstance(source, AdmissibleTripleAbelian):
        triple = source
        if not triple.is_admissible():
            raise NotAdmissibleError("not an admissible triple: the exterior is S^1 x D^2 (unknot)")
        func = torsion_function(triple, backend, settings)
    elif isinstance(source, TorsionFunction):
        func = source
    else:
        raise TypeError("source must be a triple or a TorsionFunction")
    if tol is None:
        tol = 1e-9 if func.backend == "roots" else 1e-6

    pts = [float(t) for t in grid]
    if any(not t > 0 for t in pts):
        raise ValueError("grid values must be positive")
    if any(abs(t - 1.0) < KINK_RADIUS for t in pts):
        raise ValueError("grid must avoid t = 1")
    kept, excluded = [], []
    kinks = []
    if triple is not None:
        mods = triple.root_moduli[triple.root_moduli > 0]
        kinks = list(np.abs(mods) ** (1.0 / triple.real_scale))
    for t in pts:
        if any(abs(t - k) < KINK_RADIUS or abs(1 / t - k) < KINK_RADIUS for k in kinks):
            excluded.append(t)
        else:
            kept.append(t)
    if len(kept) < 2:
        raise ValueError("need at least two usable grid points")

    exps = []
    for t in kept:
        a, b = func(t), func(1.0 / t)
        if a == 0 or b == 0:
            raise VacuousSymmetryError("non-acyclic specialization, symmetry vacuous (both sides zero)")
        exps.append(math.log(b / a) / math.log(t))
    fitted = float(np.mean(exps))
    constancy = float(max(abs(e - fitted) for e in exps))

    scale = triple.real_scale if triple is not None else 1.0
    integral = float(scale).is_integer()
    residual = parity = expected = None
    if integral:
        residual = float(max(abs(e - round(fitted)) for e in exps))
        parity = _parity(fitted)
        if triple is not None and triple.thurston_norm() is not None:
            expected = _parity(triple.thurston_norm())
    return SymmetryReport(tuple(kept), tuple(exps), fitted, constancy, integral, residual,
                          parity, expected, tuple(excluded), func.backend, tol)


def monomial_offset(f: TorsionFunction, g: TorsionFunction, grid: Sequence[float]
                    ) -> tuple[int, float]:
    """Integer ``m`` with ``f(t) = t^m g(t)`` and the largest log residual."""
    ests = []
    for t in grid:
        if abs(math.log(t)) < KINK_RADIUS:
            raise ValueError("grid must avoid t = 1")
        ests.append((math.log(f(t)) - math.log(g(t))) / math.log(t))
    m = round(float(np.mean(ests)))
    resid = max(abs(math.log(f(t)) - math.log(g(t)) - m * math.log(t)) for t in grid)
    return m, float(resid)
