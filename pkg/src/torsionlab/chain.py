"""Based chain complexes over C[Z] and their L2-torsion.

A complex of length ``m`` has ranks ``n_0, ..., n_m`` and boundary matrices
``A_1, ..., A_m`` where ``A_i`` has shape ``n_i x n_{i-1}`` and acts on row
vectors from the right.  Basis elements may carry an Euler-lift decoration,
a group element ``z^k`` (with a sign) recording which lift of the cell is
used; decorations are specialized with the complex's parameter ``t``
(``z^k -> t^k z^k``) and folded into the matrices when the torsion is
computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .fkdet import (DEFAULT_SETTINGS, FkResult, QuadratureSettings, fk_det,
                    fk_det_square_poly, generic_rank)
from .groupring import LaurentMatrix, LaurentPoly

#: residual allowed in the boundary-of-boundary check
DD_TOLERANCE = 1e-9

#: torsion(act_euler(C, i, j, z^k)) = t^(EULER_SIGN * k) * torsion(C)
EULER_SIGN = 1


class ChainComplexError(ValueError):
    pass


@dataclass(frozen=True)
class TorsionValue:
    value: float
    acyclic: bool
    dets: tuple[FkResult, ...] = ()
    betti: tuple[int, ...] = ()

    @property
    def log_value(self) -> float:
        return float(np.log(self.value)) if self.value > 0 else -np.inf


@dataclass(frozen=True)
class BasedChainComplex:
    """Finite based chain complex ``0 -> C_m -> ... -> C_0 -> 0``.

    Parameters
    ----------
    ranks : sequence of int
        ``n_0, ..., n_m``.
    boundaries : sequence of LaurentMatrix
        ``A_1, ..., A_m``; ``A_i`` has shape ``(n_i, n_{i-1})``.
    t : float
        Specialization parameter used to turn decorations ``z^k`` into
        ``t^k z^k``.
    decorations : sequence of sequences of (sign, exponent), optional
        One entry per basis element of each degree; defaults to all ``(1, 0)``.
    check : bool
        Verify ``A_{i+1} A_i = 0`` on construction.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[LaurentMatrix, ...]
    t: float = 1.0
    decorations: tuple[tuple[tuple[int, int], ...], ...] | None = None
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        ranks = tuple(int(n) for n in self.ranks)
        if not ranks or any(n < 0 for n in ranks):
            raise ChainComplexError("ranks must be a nonempty sequence of nonnegative integers")
        bds = tuple(self.boundaries)
        if len(bds) != len(ranks) - 1:
            raise ChainComplexError(f"need {len(ranks) - 1} boundary matrices, got {len(bds)}")
        for i, A in enumerate(bds, start=1):
            if A.shape != (ranks[i], ranks[i - 1]):
                raise ChainComplexError(
                    f"A_{i} has shape {A.shape}, expected {(ranks[i], ranks[i - 1])}")
        if not self.t > 0:
            raise ChainComplexError("t must be positive")
        decs = self.decorations
        if decs is None:
            decs = tuple(((1, 0),) * n for n in ranks)
        else:
            decs = tuple(tuple((int(s), int(k)) for s, k in d) for d in decs)
            if tuple(len(d) for d in decs) != ranks:
                raise ChainComplexError("decorations do not match the ranks")
            if any(s not in (1, -1) for d in decs for s, _ in d):
                raise ChainComplexError("decoration signs must be +1 or -1")
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "boundaries", bds)
        object.__setattr__(self, "decorations", decs)
        object.__setattr__(self, "t", float(self.t))
        if self.check:
            res = self.dd_residual()
            if res > DD_TOLERANCE * max(1.0, self._scale()):
                raise ChainComplexError(f"boundary of boundary is not zero (residual {res:.3g})")

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def _scale(self) -> float:
        return max((A.max_abs() for A in self.boundaries), default=0.0) ** 2

    def dd_residual(self) -> float:
        """Largest coefficient of any ``A_{i+1} A_i``."""
        res = 0.0
        for A, B in zip(self.boundaries[1:], self.boundaries[:-1]):
            res = max(res, (A @ B).max_abs())
        return res

    def decoration_poly(self, degree: int, index: int) -> LaurentPoly:
        sign, k = self.decorations[degree][index]
        return LaurentPoly.monomial(k, sign * self.t ** k)

    def folded_boundaries(self) -> tuple[LaurentMatrix, ...]:
        """Boundary matrices with respect to the decorated bases."""
        out = []
        for i, A in enumerate(self.boundaries, start=1):
            for j, (s, k) in enumerate(self.decorations[i]):
                if (s, k) != (1, 0):
                    A = A.scale_row(j, self.decoration_poly(i, j))
            for j, (s, k) in enumerate(self.decorations[i - 1]):
                if (s, k) != (1, 0):
                    A = A.scale_col(j, LaurentPoly.monomial(-k, s * self.t ** (-k)))
            out.append(A)
        return tuple(out)

    def is_trivially_decorated(self) -> bool:
        return all(d == (1, 0) for deg in self.decorations for d in deg)


def l2_betti_generic(C: BasedChainComplex) -> tuple[int, ...]:
    """L2-Betti numbers ``n_i - rank A_i - rank A_{i+1}`` from generic ranks."""
    ranks = [0] + [generic_rank(A) for A in C.boundaries] + [0]
    betti = tuple(C.ranks[i] - ranks[i] - ranks[i + 1] for i in range(len(C.ranks)))
    if any(b < 0 for b in betti):
        raise ChainComplexError(f"negative Betti number {betti}; is the complex exact at the chain level?")
    return betti


def torsion(C: BasedChainComplex, settings: QuadratureSettings = DEFAULT_SETTINGS,
            method: str = "quadrature") -> TorsionValue:
    """L2-torsion ``prod_i det(A_i)^((-1)^i)``, or 0 for non-acyclic complexes.

    ``method="exact"`` uses the Jensen route for square boundary matrices
    and falls back to quadrature for rectangular ones.
    """
    if method not in ("quadrature", "exact"):
        raise ValueError(f"unknown method {method!r}")
    betti = l2_betti_generic(C)
    if any(betti):
        return TorsionValue(0.0, False, (), betti)
    dets = []
    log_tau = 0.0
    for i, A in enumerate(C.folded_boundaries(), start=1):
        if method == "exact" and A.shape[0] == A.shape[1]:
            d = fk_det_square_poly(A)
        else:
            d = fk_det(A, settings)
        dets.append(d)
        if not d.det_class:
            return TorsionValue(0.0, True, tuple(dets), betti)
        log_tau += (-1) ** i * d.log_value
    return TorsionValue(float(np.exp(log_tau)), True, tuple(dets), betti)


def act_euler(C: BasedChainComplex, degree: int, index: int, k: int, sign: int = 1
              ) -> BasedChainComplex:
    """Act on the Euler lift of one cell by the group element ``z^k``.

    As for Euler structures, a cell of degree ``i`` is translated by
    ``g^((-1)^i)``.  The torsion changes by the factor
    ``t^(EULER_SIGN * k)``.
    """
    if not 0 <= degree <= C.length or not 0 <= index < C.ranks[degree]:
        raise IndexError(f"no basis element {index} in degree {degree}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    decs = [list(d) for d in C.decorations]
    s, e = decs[degree][index]
    decs[degree][index] = (s * sign, e + (-1) ** degree * int(k))
    return replace(C, decorations=tuple(tuple(d) for d in decs), check=False)


def dualize(C: BasedChainComplex) -> BasedChainComplex:
    """Dual complex with respect to the dual bases.

    ``n#_i = n_{m-i}`` and ``A#_j = (-1)^(m-j+1) * adjoint(A_{m-j+1})``.
    Decorations are folded into the matrices first.
    """
    m = C.length
    folded = C.folded_boundaries()
    ranks = tuple(reversed(C.ranks))
    bds = tuple((-1) ** (m - j + 1) * folded[m - j].adjoint() for j in range(1, m + 1))
    return BasedChainComplex(ranks, bds, t=C.t, check=False)


def direct_sum(C: BasedChainComplex, D: BasedChainComplex) -> BasedChainComplex:
    """Degreewise direct sum (complexes of different length are padded)."""
    if C.t != D.t:
        raise ChainComplexError("direct sum needs a common specialization parameter")
    m = max(C.length, D.length)

    def pad(X):
        ranks = list(X.ranks) + [0] * (m - X.length)
        bds = list(X.folded_boundaries())
        for i in range(X.length + 1, m + 1):
            bds.append(LaurentMatrix.zeros(ranks[i], ranks[i - 1]))
        return ranks, bds

    rc, bc = pad(C)
    rd, bd = pad(D)
    ranks = tuple(a + b for a, b in zip(rc, rd))
    bds = []
    for A, B in zip(bc, bd):
        rows = [r + [LaurentPoly()] * B.shape[1] for r in A.entries()]
        rows += [[LaurentPoly()] * A.shape[1] + r for r in B.entries()]
        bds.append(LaurentMatrix.from_entries(rows, shape=(A.shape[0] + B.shape[0],
                                                           A.shape[1] + B.shape[1])))
    return BasedChainComplex(ranks, tuple(bds), t=C.t, check=False)


def torus_complex(phi_values: Sequence[int], t: float) -> BasedChainComplex:
    """Cellular complex of the torus twisted by ``x -> (t z)^a, y -> (t z)^b``.

    Ranks ``(1, 2, 1)``; ``A_2 = (g_y - 1, 1 - g_x)`` and
    ``A_1 = (1 - g_x; 1 - g_y)`` with the canonical (trivial) decorations.
    """
    a, b = (int(v) for v in phi_values)
    if (a, b) == (0, 0):
        raise ChainComplexError("b^(2) nonvanishing, torsion undefined as nonzero value: "
                                "phi must be nonzero on the torus")
    if not t > 0:
        raise ChainComplexError("t must be positive")
    gx = LaurentPoly.monomial(a, float(t) ** a)
    gy = LaurentPoly.monomial(b, float(t) ** b)
    A2 = LaurentMatrix.from_entries([[gy - 1, 1 - gx]])
    A1 = LaurentMatrix.from_entries([[1 - gx], [1 - gy]])
    return BasedChainComplex((1, 2, 1), (A1, A2), t=t)


def scalar_complex(matrices: Sequence) -> BasedChainComplex:
    """Complex over plain complex scalars from a list ``A_1, ..., A_m`` of arrays."""
    mats = [np.atleast_2d(np.asarray(A, dtype=complex)) for A in matrices]
    if not mats:
        raise ChainComplexError("need at least one boundary matrix")
    ranks = [mats[0].shape[1]] + [A.shape[0] for A in mats]
    bds = tuple(LaurentMatrix(A.reshape(A.shape + (1,)), 0) for A in mats)
    return BasedChainComplex(tuple(ranks), bds)
