"""Waring's problem: exact representation counts and the circle-method prediction."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _config
from .errors import InvariantViolation, ResourceExceeded

IMAG_TOLERANCE = 1e-9


@dataclass(frozen=True)
class WaringInstance:
    s: int
    k: int
    n: int

    def __post_init__(self):
        if self.s < 1 or self.k < 2 or self.n < 1:
            raise ValueError(f"need s >= 1, k >= 2, n >= 1, got {self}")


@dataclass(frozen=True)
class SingularSeriesPartial:
    Q: int
    value: float
    terms: tuple[float, ...] = field(repr=False)
    imag_residue: float = 0.0
    tail_estimate: float = math.nan


def representation_counts(s: int, k: int, N: int, memory_budget: int | None = None) -> np.ndarray:
    """``R_{s,k}(n)`` for every ``0 <= n <= N`` by adding one summand per layer.

    Cells are int64 when ``(#kth powers <= N)^s`` cannot overflow, else
    Python integers.
    """
    if s < 1 or k < 1 or N < 0:
        raise ValueError("need s, k >= 1 and N >= 0")
    _, budget = _config.resolve(None, memory_budget)
    powers = []
    x = 1
    while x**k <= N:
        powers.append(x**k)
        x += 1
    exact64 = len(powers) ** s < 2**62
    dtype = np.int64 if exact64 else object
    if (N + 1) * 8 * 3 * (1 if exact64 else 5) > budget:
        raise ResourceExceeded(f"DP over {N + 1} cells exceeds memory budget")
    R = np.zeros(N + 1, dtype=dtype)
    R[0] = 1
    for _ in range(s):
        nxt = np.zeros(N + 1, dtype=dtype)
        for c in powers:
            nxt[c:] += R[:N + 1 - c]
        R = nxt
    return R


def count_representations(inst: WaringInstance) -> int:
    """Ordered ``s``-tuples of positive integers with ``x_1^k + ... + x_s^k = n``."""
    return int(representation_counts(inst.s, inst.k, inst.n)[inst.n])


def gauss_sum(q: int, a: int, k: int) -> complex:
    """``sum_{r=1}^q e(a r^k / q)`` with ``a r^k`` reduced mod ``q`` in integers."""
    if q < 1:
        raise ValueError("q must be positive")
    residues = np.array([(a * pow(r, k, q)) % q for r in range(1, q + 1)], dtype=np.float64)
    ang = 2.0 * np.pi * residues / q
    return complex(math.fsum(np.cos(ang)), math.fsum(np.sin(ang)))


@lru_cache(maxsize=32)
def _normalized_gauss_table(q: int, k: int) -> np.ndarray:
    # S(q, a)/q for a = 0..q-1 via the DFT of the histogram of r^k mod q
    r = np.arange(1, q + 1, dtype=np.int64)
    res = np.array([pow(int(v), k, q) for v in r], dtype=np.int64)
    hist = np.bincount(res, minlength=q).astype(np.float64)
    return np.fft.ifft(hist)


@lru_cache(maxsize=None)
def _coprime(q: int) -> np.ndarray:
    a = np.arange(q, dtype=np.int64)
    return a[np.gcd(a, q) == 1] if q > 1 else np.array([0], dtype=np.int64)


def singular_series(inst: WaringInstance, Q: int = 200) -> SingularSeriesPartial:
    """Truncation at ``q <= Q`` of the singular series for ``n = inst.n``.

    Each ``q``-term is summed as a complex number and must be real to
    ``1e-9`` because ``a`` and ``q - a`` contribute conjugates.
    """
    if Q < 1:
        raise ValueError("Q must be positive")
    s, k, n = inst.s, inst.k, inst.n
    terms = []
    worst = 0.0
    for q in range(1, Q + 1):
        a = _coprime(q)
        g = _normalized_gauss_table(q, k)[a]
        twist = np.exp(-2j * np.pi * ((n % q) * a % q) / q)
        t = complex(np.sum(g**s * twist))
        worst = max(worst, abs(t.imag))
        terms.append(t.real)
    if worst > IMAG_TOLERANCE:
        raise InvariantViolation(f"singular series term has imaginary part {worst:.3g}")
    rho = s / k - 2
    tail = Q**-rho / rho if rho > 0 else math.inf
    return SingularSeriesPartial(Q, math.fsum(terms), tuple(terms), worst, tail)


def main_term(inst: WaringInstance) -> float:
    """``Gamma(1 + 1/k)^s / Gamma(s/k) * n^(s/k - 1)``."""
    s, k, n = inst.s, inst.k, inst.n
    log = s * math.lgamma(1 + 1 / k) - math.lgamma(s / k) + (s / k - 1) * math.log(n)
    return math.exp(log)


def asymptotic_report(s: int, k: int, n_list: Sequence[int], Q: int = 200,
                      memory_budget: int | None = None) -> list[tuple[int, int, float, float]]:
    """Rows ``(n, R_{s,k}(n), predicted, R/predicted)``."""
    if s <= k:
        raise ValueError("asymptotic comparison needs s > k")
    n_list = [int(n) for n in n_list]
    if not n_list:
        return []
    R = representation_counts(s, k, max(n_list), memory_budget)
    rows = []
    for n in n_list:
        inst = WaringInstance(s, k, n)
        predicted = main_term(inst) * singular_series(inst, Q).value
        exact = int(R[n])
        rows.append((n, exact, predicted, exact / predicted))
    return rows
