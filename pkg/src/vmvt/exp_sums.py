"""Weyl sums, rational approximation and pointwise bound envelopes."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from . import _config
from ._phase import PhasePolynomial, as_fraction, reduce_mod1
from .errors import InvalidDegree, InvariantViolation

# Block length is fixed so that block partial sums, and therefore every
# result, do not depend on the number of workers.
BLOCK = 1 << 16
EQUI_MAX_N = 10**8

Progress = Callable[[int, int], None]


@dataclass(frozen=True)
class PhaseVector:
    """Coefficients ``alpha_1..alpha_k`` held exactly, each reduced into ``[0, 1)``."""

    alpha: tuple[Fraction, ...]

    @classmethod
    def of(cls, coeffs) -> "PhaseVector":
        if isinstance(coeffs, PhaseVector):
            return coeffs
        if np.ndim(coeffs) == 0 and not isinstance(coeffs, (tuple, list)):
            coeffs = (coeffs,)
        alpha = reduce_mod1(coeffs)
        if not alpha:
            raise ValueError("need k >= 1 coefficients")
        return cls(alpha)

    @property
    def k(self) -> int:
        return len(self.alpha)

    def negated(self) -> "PhaseVector":
        return PhaseVector.of([-a for a in self.alpha])


@dataclass(frozen=True)
class RationalApprox:
    a: int
    q: int
    err: float


@dataclass(frozen=True)
class BoundEnvelope:
    name: str
    value: float
    epsilon: float


def _blocks(n: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + BLOCK, n + 1)) for lo in range(1, n + 1, BLOCK)]


def _run_blocks(fn, blocks, workers, progress: Progress | None):
    workers, _ = _config.resolve(workers)
    total = blocks[-1][1] - 1 if blocks else 0
    out = []
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for res, (_, hi) in zip(pool.map(fn, blocks), blocks):
                out.append(res)
                if progress:
                    progress(hi - 1, total)
    else:
        for blk in blocks:
            out.append(fn(blk))
            if progress:
                progress(blk[1] - 1, total)
    return out


def eval_f(alpha, X: int, workers: int | None = None,
           progress: Progress | None = None) -> complex:
    """``f_k(alpha; X) = sum_{1<=x<=X} e(alpha_1 x + ... + alpha_k x^k)``.

    Phases are reduced mod 1 exactly (see ``vmvt._phase``) and each block
    of terms is summed with ``math.fsum``; block sums are then combined in
    order with ``math.fsum`` again.
    """
    pv = PhaseVector.of(alpha)
    if X < 1:
        return 0j
    poly = PhasePolynomial(pv.alpha)

    def block(bounds):
        lo, hi = bounds
        theta = poly.phases(np.arange(lo, hi, dtype=np.int64))
        ang = 2.0 * np.pi * theta
        return math.fsum(np.cos(ang)), math.fsum(np.sin(ang))

    parts = _run_blocks(block, _blocks(int(X)), workers, progress)
    return complex(math.fsum(p[0] for p in parts), math.fsum(p[1] for p in parts))


def eval_g(beta, k: int, X: int, workers: int | None = None) -> complex:
    """``g_k(beta; X) = sum e(beta x^k)``, the sum with only a leading coefficient."""
    if k < 1:
        raise InvalidDegree("k must be positive")
    return eval_f([0] * (k - 1) + [beta], X, workers)


def convergents(alpha) -> Iterator[tuple[int, int]]:
    """Continued-fraction convergents ``(p, q)`` of the exact value of ``alpha``."""
    f = as_fraction(alpha)
    p0, q0, p1, q1 = 0, 1, 1, 0
    num, den = f.numerator, f.denominator
    while den:
        a, r = divmod(num, den)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield p1, q1
        num, den = den, r


def dirichlet_approx(alpha, Q: int) -> RationalApprox:
    """Convergent ``a/q`` of largest denominator ``q <= Q``.

    The next denominator exceeds ``Q``, so ``|q alpha - a| < 1/(Q+1)``.
    """
    if Q < 1:
        raise ValueError("Q must be positive")
    f = as_fraction(alpha)
    best = None
    for p, q in convergents(f):
        if q > Q:
            break
        best = (p, q)
    a, q = best
    err = abs(q * f - a)
    if err >= Fraction(1, Q) and err != 0:
        # cannot happen for convergents; kept as a guard on the invariant
        raise InvariantViolation(f"Dirichlet bound failed for {alpha}, Q={Q}")
    return RationalApprox(a, q, float(err))


def is_minor_arc(beta, k: int, X: int) -> bool:
    """True iff no coprime ``a/q`` with ``q <= X`` has ``|q beta - a| <= X^(1-k)``.

    The minimum of ``||q beta||`` over ``q <= X`` is attained at a
    convergent, so only convergents are inspected; comparisons are exact.
    """
    if k < 2:
        raise InvalidDegree("minor arcs need k >= 2")
    f = as_fraction(beta)
    for p, q in convergents(f):
        if q > X:
            break
        if abs(q * f - p) * X ** (k - 1) <= 1:
            return False
    return True


def weyl_envelope(q: int, k: int, X: float, epsilon: float = 0.0) -> BoundEnvelope:
    """``X^(1+eps) (1/q + 1/X + q/X^k)^(2^(1-k))`` with no implicit constant."""
    if k < 1:
        raise InvalidDegree("k must be positive")
    base = 1.0 / q + 1.0 / X + q / float(X) ** k
    return BoundEnvelope("weyl", X ** (1 + epsilon) * base ** (2.0 ** (1 - k)), epsilon)


def vinogradov_sigma(k: int) -> float:
    if k < 3:
        raise InvalidDegree("sigma(k) = 1/(2(k-1)(k-2)) needs k >= 3")
    return 1.0 / (2 * (k - 1) * (k - 2))


def vinogradov_envelope(q: int, j: int, k: int, X: float, epsilon: float = 0.0) -> BoundEnvelope:
    """``X^(1+eps) (1/q + 1/X + q/X^j)^sigma(k)`` with ``sigma(k) = 1/(2(k-1)(k-2))``."""
    sigma = vinogradov_sigma(k)
    if not 2 <= j <= k:
        raise ValueError("need 2 <= j <= k")
    base = 1.0 / q + 1.0 / X + q / float(X) ** j
    return BoundEnvelope("vinogradov", X ** (1 + epsilon) * base**sigma, epsilon)


def equidistribution_min(alpha, N: int, workers: int | None = None,
                         progress: Progress | None = None) -> tuple[int, float]:
    """Smallest ``||alpha_1 n + ... + alpha_k n^k||`` over ``1 <= n <= N``.

    Returns ``(n_star, value)``; ties go to the smallest ``n``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if N > EQUI_MAX_N:
        raise ValueError(f"N is capped at {EQUI_MAX_N}")
    poly = PhasePolynomial(PhaseVector.of(alpha).alpha)

    def block(bounds):
        lo, hi = bounds
        dist = np.abs(poly.phases(np.arange(lo, hi, dtype=np.int64)))
        i = int(np.argmin(dist))
        return lo + i, float(dist[i])

    best_n, best = 0, math.inf
    for n, d in _run_blocks(block, _blocks(int(N)), workers, progress):
        if d < best:
            best_n, best = n, d
    return best_n, best
