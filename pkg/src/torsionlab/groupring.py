"""Free-group words, group-ring elements and Laurent polynomials.

Generators of the free group are indexed by non-negative integers; naming
them is left to the presentation layer.  ``LaurentPoly`` models the group
ring C[Z] = C[z, 1/z] with double precision coefficients and
``LaurentMatrix`` stores a rectangular matrix over it as a dense
``(rows, cols, span + 1)`` coefficient array so that whole matrices can be
evaluated on the unit circle in one vectorized call.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

#: coefficients smaller than this (in absolute value) are dropped
ZERO_THRESHOLD = 1e-14


# ---------------------------------------------------------------------------
# free group
# ---------------------------------------------------------------------------

def reduce(letters: Iterable[tuple[int, int]]) -> GroupWord:
    """Freely reduce a raw sequence of ``(generator, exponent)`` letters.

    Adjacent letters on the same generator are merged and zero exponents
    cancelled, so ``x x^-1`` collapses to the identity.
    """
    stack: list[list[int]] = []
    for gen, exp in letters:
        gen, exp = int(gen), int(exp)
        if gen < 0:
            raise ValueError(f"generator index must be >= 0, got {gen}")
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return GroupWord(tuple((g, e) for g, e in stack), _reduced=True)


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word in the free group on indexed generators."""

    letters: tuple[tuple[int, int], ...] = ()
    _reduced: bool = False

    def __post_init__(self):
        if not self._reduced:
            object.__setattr__(self, "letters", reduce(self.letters).letters)
        object.__setattr__(self, "_reduced", True)

    @classmethod
    def identity(cls) -> GroupWord:
        return cls((), _reduced=True)

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> GroupWord:
        return reduce([(index, exponent)])

    def __mul__(self, other: GroupWord) -> GroupWord:
        if not isinstance(other, GroupWord):
            return NotImplemented
        return reduce(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)), _reduced=True)

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        if not self.letters:
            return "GroupWord(1)"
        parts = [f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in self.letters]
        return f"GroupWord({' '.join(parts)})"


@dataclass(frozen=True)
class AbelianizationMap:
    """Homomorphism from the free group to Z given by generator images."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))

    def __call__(self, word: GroupWord) -> int:
        try:
            return sum(self.images[g] * e for g, e in word.letters)
        except IndexError:
            raise ValueError(f"word {word} uses a generator outside the map") from None

    def is_zero(self) -> bool:
        return not any(self.images)


# ---------------------------------------------------------------------------
# group ring of a free group
# ---------------------------------------------------------------------------

class RingElement:
    """Finite complex linear combination of free-group words."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[GroupWord, complex] | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            c = complex(c)
            if abs(c) >= ZERO_THRESHOLD:
                clean[w] = c
        self._terms = clean

    @classmethod
    def from_word(cls, word: GroupWord, coeff: complex = 1.0) -> RingElement:
        return cls({word: coeff})

    @classmethod
    def scalar(cls, c: complex) -> RingElement:
        return cls({GroupWord.identity(): c})

    @property
    def terms(self) -> dict[GroupWord, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other) -> RingElement:
        if isinstance(other, RingElement):
            return other
        if isinstance(other, GroupWord):
            return RingElement.from_word(other)
        if isinstance(other, (int, float, complex, np.number)):
            return RingElement.scalar(other)
        raise TypeError(f"cannot combine RingElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return RingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return RingElement({w: c * other for w, c in self._terms.items()})
        other = self._coerce(other)
        out: dict[GroupWord, complex] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return RingElement(out)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        keys = set(self._terms) | set(other._terms)
        return all(abs(self._terms.get(k, 0) - other._terms.get(k, 0)) < ZERO_THRESHOLD
                   for k in keys)

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "RingElement(0)"
        parts = [f"({c:g})*{w!r}" for w, c in self._terms.items()]
        return "RingElement(" + " + ".join(parts) + ")"


def ring_involve(a: RingElement) -> RingElement:
    """Conjugate every coefficient and invert every word."""
    return RingElement({w.inverse(): c.conjugate() for w, c in a.items()})


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial ``sum_k c_k z^k`` with complex coefficients.

    Stored densely as ``low`` (smallest exponent) and ``coeffs`` (lowest
    exponent first).  The zero polynomial has ``low == 0`` and no
    coefficients.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs: Sequence[complex] | np.ndarray = (), low: int = 0):
        arr = np.array(coeffs, dtype=complex).ravel()
        arr[np.abs(arr) < ZERO_THRESHOLD] = 0
        nz = np.flatnonzero(arr)
        if nz.size == 0:
            arr, low = np.zeros(0, dtype=complex), 0
        else:
            low = int(low) + int(nz[0])
            arr = arr[nz[0]:nz[-1] + 1].copy()
        arr.flags.writeable = False
        self.low = low
        self.coeffs = arr

    @classmethod
    def from_dict(cls, terms: Mapping[int, complex]) -> LaurentPoly:
        terms = {int(k): complex(v) for k, v in terms.items()}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        arr = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in terms.items():
            arr[k - lo] += v
        return cls(arr, lo)

    @classmethod
    def monomial(cls, exponent: int, coeff: complex = 1.0) -> LaurentPoly:
        return cls([coeff], exponent)

    @classmethod
    def constant(cls, c: complex) -> LaurentPoly:
        return cls([c], 0)

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        """Difference between highest and lowest exponent (0 for zero)."""
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def to_dict(self) -> dict[int, complex]:
        return {self.low + i: complex(c) for i, c in enumerate(self.coeffs) if c != 0}

    def leading(self) -> complex:
        return complex(self.coeffs[-1]) if len(self.coeffs) else 0j

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.is_zero():
            return np.zeros_like(z)
        # Horner in the polynomial part, then the monomial shift
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc * z ** self.low

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return LaurentPoly.constant(other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        arr = np.zeros(hi - lo + 1, dtype=complex)
        arr[self.low - lo:self.high - lo + 1] += self.coeffs
        arr[other.low - lo:other.high - lo + 1] += other.coeffs
        return LaurentPoly(arr, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.coeffs, self.low)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return LaurentPoly(self.coeffs * other, self.low)
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        return LaurentPoly(np.convolve(self.coeffs, other.coeffs), self.low + other.low)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use monomial()")
        out = LaurentPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``z**k``."""
        return LaurentPoly(self.coeffs, self.low + k)

    def scale_variable(self, s: float) -> LaurentPoly:
        """Return ``p(s*z)``."""
        if self.is_zero():
            return self
        exps = np.arange(self.low, self.high + 1)
        return LaurentPoly(self.coeffs * np.power(float(s), exps), self.low)

    def involute(self) -> LaurentPoly:
        """``z^k -> z^-k`` with conjugated coefficients."""
        if self.is_zero():
            return self
        return LaurentPoly(self.coeffs[::-1].conj(), -self.high)

    def almost_equal(self, other, tol: float = 1e-9) -> bool:
        """Coefficientwise agreement relative to ``max(1, largest coefficient)``."""
        other = self._coerce(other)
        diff = self - other
        if diff.is_zero():
            return True
        scale = max(1.0, *(float(np.max(np.abs(p.coeffs))) for p in (self, other) if p.coeffs.size))
        return float(np.max(np.abs(diff.coeffs))) <= tol * scale

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.low == other.low and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "LaurentPoly(0)"
        terms = []
        for k, c in sorted(self.to_dict().items()):
            c = c.real if c.imag == 0 else c
            terms.append(f"{c:g}" if k == 0 else f"{c:g}*z^{k}")
        return "LaurentPoly(" + " + ".join(terms) + ")"


def as_laurent(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value)


# ---------------------------------------------------------------------------
# specialization g -> t^phi(g) z^phi(g)
# ---------------------------------------------------------------------------

def specialize(a: RingElement | GroupWord, phi: AbelianizationMap, t: float = 1.0,
               mode: str = "with-z") -> LaurentPoly:
    """Apply the monomial representation ``g -> t^phi(g) z^phi(g)``.

    With ``mode="scalar-only"`` the variable is set to ``z = 1`` and the
    result is a constant polynomial.
    """
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    if mode not in ("with-z", "scalar-only"):
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(a, GroupWord):
        a = RingElement.from_word(a)
    terms: dict[int, complex] = {}
    for w, c in a.items():
        k = phi(w)
        key = k if mode == "with-z" else 0
        terms[key] = terms.get(key, 0) + c * float(t) ** k
    return LaurentPoly.from_dict(terms)


def gamma_t(phi: AbelianizationMap, t: float) -> Callable[[GroupWord], LaurentPoly]:
    """Evaluator of the one-dimensional representation ``g -> t^phi(g) z^phi(g)``."""
    return lambda g: specialize(g, phi, t)


def dual_representation(phi: AbelianizationMap, t: float) -> Callable[[GroupWord], LaurentPoly]:
    """Evaluator of ``g -> conj-transpose of gamma_t(g^-1)``.

    For this abelian one-dimensional representation the result coincides
    with the evaluator at ``1/t``.
    """
    rep = gamma_t(phi, t)
    return lambda g: rep(g.inverse()).involute()


# ---------------------------------------------------------------------------
# matrices over C[Z]
# ---------------------------------------------------------------------------

class LaurentMatrix:
    """Rectangular matrix over C[z, 1/z].

    ``coeffs[i, j, k]`` is the coefficient of ``z**(low + k)`` in entry
    ``(i, j)``.  Matrices act on row vectors by right multiplication.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs: np.ndarray, low: int = 0):
        arr = np.array(coeffs, dtype=complex)
        if arr.ndim != 3:
            raise ValueError("coefficient array must have shape (rows, cols, span+1)")
        arr[np.abs(arr) < ZERO_THRESHOLD] = 0
        if arr.size:
            used = np.flatnonzero(np.any(arr != 0, axis=(0, 1)))
        else:
            used = np.zeros(0, dtype=int)
        if used.size == 0:
            arr = np.zeros(arr.shape[:2] + (1,), dtype=complex)
            low = 0
        else:
            low = int(low) + int(used[0])
            arr = arr[:, :, used[0]:used[-1] + 1].copy()
        arr.flags.writeable = False
        self.low = low
        self.coeffs = arr

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence], shape: tuple[int, int] | None = None
                     ) -> LaurentMatrix:
        """Build from nested rows of ``LaurentPoly`` or numbers."""
        rows = [[as_laurent(v) for v in row] for row in rows]
        if shape is None:
            nrows = len(rows)
            ncols = len(rows[0]) if rows else 0
        else:
            nrows, ncols = shape
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged or mis-shaped entry list")
        polys = [p for row in rows for p in row if not p.is_zero()]
        if not polys:
            return cls.zeros(nrows, ncols)
        lo = min(p.low for p in polys)
        hi = max(p.high for p in polys)
        arr = np.zeros((nrows, ncols, hi - lo + 1), dtype=complex)
        for i, row in enumerate(rows):
            for j, p in enumerate(row):
                if not p.is_zero():
                    arr[i, j, p.low - lo:p.high - lo + 1] = p.coeffs
        return cls(arr, lo)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> LaurentMatrix:
        return cls(np.zeros((rows, cols, 1), dtype=complex), 0)

    @classmethod
    def constant(cls, matrix) -> LaurentMatrix:
        m = np.atleast_2d(np.asarray(matrix, dtype=complex))
        return cls(m[:, :, None], 0)

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls.constant(np.eye(n))

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[:2]

    @property
    def span(self) -> int:
        return self.coeffs.shape[2] - 1

    @property
    def high(self) -> int:
        return self.low + self.span

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def is_constant(self) -> bool:
        return self.span == 0 and self.low == 0 or self.is_zero()

    def entry(self, i: int, j: int) -> LaurentPoly:
        return LaurentPoly(self.coeffs[i, j], self.low)

    def entries(self) -> list[list[LaurentPoly]]:
        r, c = self.shape
        return [[self.entry(i, j) for j in range(c)] for i in range(r)]

    def evaluate(self, z) -> np.ndarray:
        """Evaluate at points ``z``; returns shape ``z.shape + (rows, cols)``."""
        z = np.asarray(z, dtype=complex)
        powers = z[..., None] ** np.arange(self.low, self.high + 1)
        return np.einsum("...k,ijk->...ij", powers, self.coeffs)

    def on_circle(self, theta) -> np.ndarray:
        return self.evaluate(np.exp(1j * np.asarray(theta, dtype=float)))

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        a, b = self.shape
        b2, c = other.shape
        if b != b2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if a == 0 or c == 0 or b == 0:
            return LaurentMatrix.zeros(a, c)
        span = self.span + other.span + 1
        out = np.zeros((a, c, span), dtype=complex)
        for k in range(self.coeffs.shape[2]):
            for l in range(other.coeffs.shape[2]):
                out[:, :, k + l] += self.coeffs[:, :, k] @ other.coeffs[:, :, l]
        return LaurentMatrix(out, self.low + other.low)

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = np.zeros(self.shape + (hi - lo + 1,), dtype=complex)
        out[:, :, self.low - lo:self.high - lo + 1] += self.coeffs
        out[:, :, other.low - lo:other.high - lo + 1] += other.coeffs
        return LaurentMatrix(out, lo)

    def __sub__(self, other: LaurentMatrix) -> LaurentMatrix:
        return self + (-other)

    def __neg__(self):
        return LaurentMatrix(-self.coeffs, self.low)

    def __mul__(self, scalar):
        if isinstance(scalar, LaurentPoly):
            if scalar.is_zero():
                return LaurentMatrix.zeros(*self.shape)
            out = np.apply_along_axis(lambda v: np.convolve(v, scalar.coeffs), 2, self.coeffs) \
                if self.coeffs.size else self.coeffs
            return LaurentMatrix(out, self.low + scalar.low)
        return LaurentMatrix(self.coeffs * scalar, self.low)

    __rmul__ = __mul__

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix(self.coeffs.transpose(1, 0, 2), self.low)

    @property
    def T(self):
        return self.transpose()

    def involute(self) -> LaurentMatrix:
        """Entrywise involution (no transpose)."""
        return LaurentMatrix(self.coeffs[:, :, ::-1].conj(), -self.high)

    def adjoint(self) -> LaurentMatrix:
        """Involute-transpose, the matrix of the dual map."""
        return self.involute().transpose()

    def scale_variable(self, s: float) -> LaurentMatrix:
        """Entrywise ``p(z) -> p(s*z)``."""
        exps = np.arange(self.low, self.high + 1)
        return LaurentMatrix(self.coeffs * np.power(float(s), exps), self.low)

    def scale_row(self, i: int, factor: LaurentPoly) -> LaurentMatrix:
        return self._scale_line(i, factor, axis=0)

    def scale_col(self, j: int, factor: LaurentPoly) -> LaurentMatrix:
        return self._scale_line(j, factor, axis=1)

    def _scale_line(self, idx: int, factor: LaurentPoly, axis: int) -> LaurentMatrix:
        rows = self.entries()
        if axis == 0:
            rows[idx] = [p * factor for p in rows[idx]]
        else:
            for row in rows:
                row[idx] = row[idx] * factor
        return LaurentMatrix.from_entries(rows, shape=self.shape)

    def swap_rows(self, i: int, j: int) -> LaurentMatrix:
        perm = list(range(self.shape[0]))
        perm[i], perm[j] = perm[j], perm[i]
        return LaurentMatrix(self.coeffs[perm], self.low)

    def swap_cols(self, i: int, j: int) -> LaurentMatrix:
        perm = list(range(self.shape[1]))
        perm[i], perm[j] = perm[j], perm[i]
        return LaurentMatrix(self.coeffs[:, perm], self.low)

    def delete_col(self, j: int) -> LaurentMatrix:
        return LaurentMatrix(np.delete(self.coeffs, j, axis=1), self.low)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def almost_equal(self, other: LaurentMatrix, tol: float = 1e-9) -> bool:
        if self.shape != other.shape:
            return False
        scale = max(1.0, self.max_abs(), other.max_abs())
        return (self - other).max_abs() <= tol * scale

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.low == other.low
                and np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self):
        return f"LaurentMatrix(shape={self.shape}, low={self.low}, span={self.span})"


def matrix_specialize(rows: Sequence[Sequence[RingElement]], phi: AbelianizationMap,
                      t: float = 1.0, shape: tuple[int, int] | None = None) -> LaurentMatrix:
    """Entrywise :func:`specialize` of a matrix over the free group ring."""
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    return LaurentMatrix.from_entries([[specialize(a, phi, t) for a in row] for row in rows],
                                      shape=shape)
