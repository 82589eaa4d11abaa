"""Fuglede-Kadison determinants over the group von Neumann algebra of Z.

Two independent routes are provided:

* an exact route for square matrices: the Laurent determinant is recovered
  by evaluation at roots of unity and FFT interpolation, and its Mahler
  measure is computed with Jensen's formula from companion-matrix roots;
* a quadrature route for arbitrary rectangular matrices: the log of the
  product of the ``r`` largest squared singular values of ``M(e^{i theta})``
  is integrated over the circle with the trapezoidal rule, ``r`` being the
  almost-everywhere rank.

The trapezoidal rule is spectrally accurate for smooth periodic integrands
but only first order in the presence of logarithmic singularities, which
occur whenever the pseudo-determinant vanishes on the circle.  Such points
are located numerically from the integrand alone and the matching
``m * log|e^{i theta} - w|^2`` terms (with ``|w| <= 1``, hence of zero mean)
are subtracted before integrating.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, optimize

from .groupring import LaurentMatrix, LaurentPoly

#: roots closer than this to the unit circle are reported with modulus 1
UNIT_CIRCLE_SNAP = 1e-10
#: relative singular-value threshold for numeric rank
RANK_THRESHOLD = 1e-10
#: squared singular values below this (relative) trigger the half-step node shift
JITTER_THRESHOLD = 1e-13
PROBE_COUNT = 7
_PROBE_SEED = 20140917


class NotDeterminantClassError(ValueError):
    """Raised when an input lies outside the domain of a determinant path."""


class FkConvergenceError(ArithmeticError):
    """Numerical procedure did not converge.

    ``estimates`` holds the last two estimates (possibly ``None``).
    """

    def __init__(self, message, estimates=(None, None)):
        super().__init__(message)
        self.estimates = tuple(estimates)


@dataclass(frozen=True)
class FkResult:
    """Value of a Fuglede-Kadison determinant.

    ``value`` is 0 exactly when ``det_class`` is False.
    """

    value: float
    rank: int
    det_class: bool = True
    nodes: int = 0

    @property
    def log_value(self) -> float:
        return math.log(self.value) if self.value > 0 else -math.inf


@dataclass(frozen=True)
class QuadratureSettings:
    nodes: int = 64
    refinement_limit: int = 12
    tol: float = 1e-11

    def __post_init__(self):
        n = int(self.nodes)
        if n < 16 or n & (n - 1):
            raise ValueError(f"node count must be a power of two >= 16, got {self.nodes}")
        if self.refinement_limit < 1:
            raise ValueError("refinement_limit must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


DEFAULT_SETTINGS = QuadratureSettings()


# ---------------------------------------------------------------------------
# Jensen path
# ---------------------------------------------------------------------------

def polynomial_roots(coeffs) -> np.ndarray:
    """Roots of ``sum_k coeffs[k] z^k`` (lowest degree first).

    Eigenvalues of the balanced companion matrix of the monic normalization.
    Leading and trailing zero coefficients must already be stripped by the
    caller (trailing zeros would be roots at 0, which is fine, leading zeros
    are not allowed).
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.size == 0 or c[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    deg = c.size - 1
    if deg == 0:
        return np.zeros(0, dtype=complex)
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    balanced, _ = linalg.matrix_balance(comp, permute=False)
    return linalg.eigvals(balanced, overwrite_a=True, check_finite=False)


def _cluster_moduli(roots: np.ndarray, radius: float = 1e-5) -> np.ndarray:
    # a k-fold root comes back as a ring of radius ~eps^(1/k); its centroid is accurate
    mod = np.abs(roots)
    n = len(roots)
    if n < 2:
        return mod
    close = np.abs(roots[:, None] - roots[None, :]) < radius
    label = np.arange(n)
    for i in range(n):
        for j in np.flatnonzero(close[i]):
            a, b = label[i], label[j]
            if a != b:
                label[label == b] = a
    for lab in np.unique(label):
        members = label == lab
        if members.sum() > 1:
            mod[members] = abs(roots[members].mean())
    return mod


def mahler_jensen(p: LaurentPoly) -> float:
    """Mahler measure ``|lead| * prod max(1, |r|)`` of a nonzero Laurent polynomial."""
    if p.is_zero():
        raise NotDeterminantClassError("not in determinant-class domain for this path: zero polynomial")
    roots = polynomial_roots(p.coeffs)
    mod = _cluster_moduli(roots)
    mod[np.abs(mod - 1.0) < UNIT_CIRCLE_SNAP] = 1.0
    return float(abs(p.leading()) * np.prod(np.maximum(1.0, mod)))


def laurent_det(M: LaurentMatrix, samples: int | None = None) -> LaurentPoly:
    """Determinant of a square Laurent matrix by evaluation and interpolation.

    The determinant has exponents in ``[n*low, n*high]``; sampling at
    ``samples`` roots of unity recovers it exactly as long as ``samples``
    exceeds ``n*span``.
    """
    n, n2 = M.shape
    if n != n2:
        raise ValueError(f"determinant needs a square matrix, got {M.shape}")
    if n == 0:
        return LaurentPoly.constant(1.0)
    bound = n * M.span + 1
    if samples is None:
        samples = max(16, 1 << (bound - 1).bit_length())
    elif samples < bound:
        raise ValueError(f"interpolation needs at least {bound} samples, got {samples}; "
                         "raise the sample count")
    z = np.exp(2j * np.pi * np.arange(samples) / samples)
    # polynomial part only: strip the monomial z^low from each entry
    shifted = LaurentMatrix(M.coeffs, 0)
    vals = np.linalg.det(shifted.evaluate(z))
    coeffs = (np.fft.fft(vals) / samples)[:bound]
    scale = _hadamard_bound(shifted)
    coeffs[np.abs(coeffs) < 1e-12 * max(scale, 1e-300)] = 0
    return LaurentPoly(coeffs, n * M.low)


def _hadamard_bound(M: LaurentMatrix) -> float:
    row_norms = np.sqrt(np.sum(np.sum(np.abs(M.coeffs), axis=2) ** 2, axis=1))
    return float(np.prod(row_norms)) if row_norms.size else 1.0


def fk_det_square_poly(M: LaurentMatrix, samples: int | None = None) -> FkResult:
    """Exact route: Mahler measure of the Laurent determinant."""
    n, n2 = M.shape
    if n != n2:
        raise ValueError(f"fk_det_square_poly needs a square matrix, got {M.shape}")
    det = laurent_det(M, samples)
    if det.is_zero():
        return FkResult(0.0, _generic_rank(M), det_class=False)
    return FkResult(mahler_jensen(det), n)


# ---------------------------------------------------------------------------
# rank detection
# ---------------------------------------------------------------------------

def _probe_points() -> np.ndarray:
    rng = np.random.default_rng(_PROBE_SEED)
    return np.exp(2j * np.pi * rng.random(PROBE_COUNT))


def _numeric_rank(sv: np.ndarray) -> int:
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > RANK_THRESHOLD * sv[0]))


def _generic_rank(M: LaurentMatrix) -> int:
    """Almost-everywhere rank of ``M`` on the unit circle (majority of probes)."""
    r, c = M.shape
    if r == 0 or c == 0 or M.is_zero():
        return 0
    sv = np.linalg.svd(M.evaluate(_probe_points()), compute_uv=False)
    ranks = [_numeric_rank(s) for s in sv]
    values, counts = np.unique(ranks, return_counts=True)
    best = int(np.argmax(counts))
    if counts[best] * 2 <= PROBE_COUNT:
        raise FkConvergenceError(f"rank probes disagree: {ranks}")
    return int(values[best])


def generic_rank(M: LaurentMatrix) -> int:
    return _generic_rank(M)


# ---------------------------------------------------------------------------
# quadrature path
# ---------------------------------------------------------------------------

def _log_pdet(M: LaurentMatrix, theta: np.ndarray, rank: int):
    """``sum_{i<rank} log sigma_i^2`` at each angle, plus the smallest kept sigma^2."""
    sv = np.linalg.svd(M.on_circle(theta), compute_uv=False)[..., :rank]
    lam = sv ** 2
    with np.errstate(divide="ignore"):
        g = np.sum(np.log(lam), axis=-1)
    return g, lam[..., -1], lam[..., 0]


@dataclass(frozen=True)
class _Singularity:
    angle: float
    order: int
    depth: float  # distance of the subtracted zero inside the unit disk

    def term(self, theta):
        w = (1.0 - self.depth) * np.exp(1j * self.angle)
        return self.order * np.log(np.abs(np.exp(1j * theta) - w) ** 2)


def _find_singularities(M: LaurentMatrix, rank: int, scan_nodes: int) -> list[_Singularity]:
    theta = 2 * np.pi * (np.arange(scan_nodes) + 0.25) / scan_nodes
    g, _, _ = _log_pdet(M, theta, rank)
    g = np.maximum(g, -700.0)
    median = float(np.median(g))
    h0 = 2 * np.pi / scan_nodes
    prev, nxt = np.roll(g, 1), np.roll(g, -1)
    candidates = np.flatnonzero((g <= prev) & (g <= nxt) & (g < median - 3.0))

    def f(x):
        val, _, _ = _log_pdet(M, np.atleast_1d(np.asarray(x, dtype=float)), rank)
        return np.maximum(val, -700.0)

    found: list[_Singularity] = []
    for k in candidates:
        res = optimize.minimize_scalar(lambda u: float(f(theta[k] + u)[0]), bounds=(-h0, h0),
                                       method="bounded", options={"xatol": 1e-14})
        alpha = float(theta[k] + res.x)
        h1, h2 = h0 / 16, h0 / 8
        g1, g2 = f([alpha - h1, alpha + h1]).mean(), f([alpha - h2, alpha + h2]).mean()
        order = int(round((g2 - g1) / math.log(h2 / h1) / 2))
        if order < 1:
            continue
        # P^(1/order) ~ a*((theta - alpha)^2 + depth^2) near an order-fold zero
        depth = None
        for h in (1e-3, 1e-5, 1e-7)[: 3 if order == 1 else 2]:
            x = np.array([-h, 0.0, h])
            vals = f(alpha + x)
            q = np.exp((vals - vals[0]) / order)
            a = (q[0] + q[2] - 2 * q[1]) / (2 * h * h)
            b = (q[2] - q[0]) / (2 * h)
            if not a > 0:
                break
            shift = -b / (2 * a)
            if abs(shift) > h:
                alpha += math.copysign(h, shift)
                continue
            alpha += shift
            floor = q[1] - b * b / (4 * a)
            depth = math.sqrt(max(floor, 0.0) / a)
        if depth is None or depth > 0.5:
            continue
        if any(abs(math.remainder(alpha - s.angle, 2 * math.pi)) < h0 / 2 for s in found):
            continue
        found.append(_Singularity(alpha, order, depth))
    return found


def fk_det(M: LaurentMatrix, settings: QuadratureSettings = DEFAULT_SETTINGS) -> FkResult:
    """Fuglede-Kadison determinant of a rectangular Laurent matrix.

    Returns ``exp((1/4 pi) * integral of log prod_{i<=r} lambda_i(theta))``
    where ``lambda_i`` are the ``r`` largest eigenvalues of ``M M^*`` on the
    unit circle and ``r`` is the almost-everywhere rank.  A matrix of
    rank 0 has determinant 1.

    Raises
    ------
    FkConvergenceError
        If successive trapezoidal estimates still differ by more than
        ``settings.tol`` after ``settings.refinement_limit`` doublings.
    """
    rank = _generic_rank(M)
    if rank == 0:
        return FkResult(1.0, 0)
    if M.span == 0:
        # constant matrix: the integrand does not depend on theta
        sv = np.linalg.svd(M.coeffs[:, :, 0], compute_uv=False)[:rank]
        return FkResult(float(np.prod(sv)), rank, nodes=1)

    # degree of the pseudo-determinant as a trigonometric polynomial
    trig_degree = rank * M.span
    scan = max(256, 1 << (8 * trig_degree + 1).bit_length())
    sing = _find_singularities(M, rank, scan)

    def estimate(n):
        for offset in (0.0, 0.5, 0.25, 0.75):
            theta = 2 * np.pi * (np.arange(n) + offset) / n
            g, small, big = _log_pdet(M, theta, rank)
            if np.all(small >= JITTER_THRESHOLD * np.max(big)):
                break
        vals = g.copy()
        for s in sing:
            vals -= s.term(theta)
        return 0.5 * float(np.mean(vals))

    n = max(settings.nodes, 1 << (2 * trig_degree + 1).bit_length())
    prev = estimate(n)
    for _ in range(settings.refinement_limit):
        n *= 2
        cur = estimate(n)
        if not math.isfinite(cur):
            raise FkConvergenceError("non-finite quadrature estimate", (prev, cur))
        if abs(cur - prev) < settings.tol:
            return FkResult(math.exp(cur), rank, nodes=n)
        prev = cur
    raise FkConvergenceError(
        f"trapezoidal estimates did not settle after {settings.refinement_limit} doublings "
        f"(last two log-values {prev!r}, {cur!r})", (prev, cur))


def fk_det_scalar(A) -> FkResult:
    """Determinant of a constant complex matrix: product of its nonzero singular values."""
    return fk_det(LaurentMatrix.constant(A))
