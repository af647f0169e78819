"""Closed-form exponents, thresholds and constants, with their provenance.

Literal table values (``derived=False``) are stored as published; values
computed from a formula carry ``derived=True`` so that tests never compare
a literal against itself.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, TextIO

import numpy as np

from .mean_values import SystemParams, count_mean_value

PERMISSIBLE = "permissible"
CONJECTURED = "conjectured"
THRESHOLD = "threshold"

# Literal tables.
CLASSICAL_H = {3: 8, 4: 23, 5: 55, 6: 120}
D_TABLE = {4: 8, 5: 10, 6: 17, 7: 20}
GTILDE_CLASSICAL = {3: 8, 4: 16, 5: 32, 6: 56, 7: 112, 8: 224, 9: 365, 10: 497, 11: 627, 12: 771}
GTILDE_CONGRUENCING = {3: 8, 4: 16, 5: 28, 6: 43, 7: 61, 8: 83, 9: 107, 10: 134, 11: 165, 12: 199}
GTILDE_C_PUBLISHED = 1.54079


@dataclass(frozen=True)
class ExponentRecord:
    source: str
    name: str
    k: int | None
    s: int | None
    kind: str
    value: float
    citation: str
    derived: bool
    asymptotic_only: bool = False


def classical_delta(s: int, k: int, r: int) -> float:
    """``k^2 (1 - 1/k)^r / 2``, valid when ``s >= r k``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if r < 1 or s < r * k:
        raise ValueError(f"need r >= 1 and s >= r k, got s={s}, k={k}, r={r}")
    return 0.5 * k * k * (1.0 - 1.0 / k) ** r


def conjectured_exponent(s: float, k: int) -> float:
    """Exponent of ``X`` in the main conjecture: ``max(s, 2s - k(k+1)/2)``."""
    return max(s, 2 * s - k * (k + 1) / 2)


def _bisect(f, lo, hi, tol=1e-12):
    flo = f(lo)
    if flo * f(hi) > 0:
        raise ValueError("no sign change on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gtilde_cubic(xi: float) -> float:
    return 6 * xi**3 + 3 * xi**2 - 1


def gtilde_root() -> float:
    """Real root of ``6 xi^3 + 3 xi^2 - 1``, bracketed in ``(0.4, 0.5)``."""
    return _bisect(gtilde_cubic, 0.4, 0.5)


def gtilde_constant() -> float:
    """``(5 + 6 xi - 3 xi^2) / (2 + 6 xi)`` at the real root of the cubic."""
    xi = gtilde_root()
    return (5 + 6 * xi - 3 * xi * xi) / (2 + 6 * xi)


def c_bound(alpha: float) -> float | None:
    """Bound ``(2 - 3a + (2a - 1)^{3/2}) / (3a)`` on ``C(a k^2)``; ``None`` off ``[5/8, 1]``."""
    if not 5 / 8 <= alpha <= 1:
        return None
    return (2 - 3 * alpha + (2 * alpha - 1) ** 1.5) / (3 * alpha)


def congruencing_delta(alpha: float) -> float:
    """Leading coefficient ``(1 - sqrt(a))^2`` of ``Delta`` at ``s = a k^2``, ``1/4 <= a <= 1``."""
    if not 0.25 <= alpha <= 1:
        raise ValueError("alpha must lie in [1/4, 1]")
    return (1 - math.sqrt(alpha)) ** 2


def ledger(k: int) -> list[ExponentRecord]:
    """Every exponent, threshold and constant recorded for degree ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    rows: list[ExponentRecord] = []

    def add(*args, **kw):
        rows.append(ExponentRecord(*args, **kw))

    crit = k * (k + 1) // 2
    add("main_conjecture", "critical_s", k, crit, CONJECTURED, conjectured_exponent(crit, k),
        "J_{k(k+1)/2,k}(X) << X^{k(k+1)/2+eps}", True)
    if k >= 2:
        add("congruencing", "critical_delta", k, crit, PERMISSIBLE, (1.5 - math.sqrt(2)) * k * k,
            "Delta_{k(k+1)/2,k} = (3/2 - sqrt 2) k^2", True, asymptotic_only=True)
    if k >= 3:
        add("congruencing_H", "H", k, None, THRESHOLD, k * (k - 1), "H(k) = k(k-1)", True)
    if k in CLASSICAL_H:
        add("classical_H", "H_classical", k, None, THRESHOLD, CLASSICAL_H[k],
            "H(3)=8, H(4)=23, H(5)=55, H(6)=120", False)
    if k in D_TABLE:
        add("congruencing_D", "D", k, None, THRESHOLD, D_TABLE[k],
            "D(4)=8, D(5)=10, D(6)=17, D(7)=20", False)
    elif k > 7:
        add("congruencing_D", "D", k, None, THRESHOLD, k * (k + 1) / 2 - k / 3,
            "D(k) = k(k+1)/2 - k/3 + O(k^{2/3})", True, asymptotic_only=True)
    if k in GTILDE_CLASSICAL:
        add("classical_waring", "Gtilde_classical", k, None, THRESHOLD, GTILDE_CLASSICAL[k],
            "2^k (k=3,4,5); 7/8 2^k (k=6,7,8); 365, 497, 627, 771 (k=9..12)", False)
    if k in GTILDE_CONGRUENCING:
        add("congruencing_waring", "Gtilde", k, None, THRESHOLD, GTILDE_CONGRUENCING[k],
            "2^k (k=3,4); 28, 43, 61, 83, 107, 134, 165, 199 (k=5..12)", False)
    if k >= 2:
        add("congruencing_waring_quadratic", "Gtilde_2k2", k, None, THRESHOLD, 2 * k * k + 2 * k - 3,
            "Gtilde(k) <= 2k^2 + 2k - 3", True)
    add("congruencing_waring_asymptotic", "Gtilde_C", None, None, THRESHOLD, gtilde_constant(),
        "C = (5 + 6xi - 3xi^2)/(2 + 6xi), 6xi^3 + 3xi^2 - 1 = 0", True, asymptotic_only=True)
    add("weyl_inequality", "sigma_weyl", k, None, PERMISSIBLE, 2.0 ** (1 - k), "sigma(k) = 2^{1-k}", True)
    if k >= 3:
        add("minor_arc_bound", "sigma", k, None, PERMISSIBLE, 1.0 / (2 * (k - 1) * (k - 2)),
            "sigma(k)^{-1} = 2(k-1)(k-2)", True)
        add("equidistribution", "tau", k, None, PERMISSIBLE, 1.0 / (4 * (k - 1) * (k - 2)),
            "tau(k) = 1/(4(k-1)(k-2))", True)
    if k == 3:
        add("near_critical", "theta", k, k + 1, PERMISSIBLE, 10 / 3, "theta_3 = 10/3", False)
    elif k >= 4:
        add("near_critical", "theta", k, k + 1, PERMISSIBLE, math.sqrt(4 * k + 5),
            "theta_k = sqrt(4k+5)", True)
    return rows


def export_csv(records: Sequence[ExponentRecord], stream: TextIO) -> None:
    """Columns ``source, k, s, kind, value, citation``."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["source", "k", "s", "kind", "value", "citation"])
    for r in records:
        w.writerow([r.source, "" if r.k is None else r.k, "" if r.s is None else r.s,
                    r.kind, repr(float(r.value)), r.citation])


# -- two-term asymptotic for J_{3,2} -----------------------------------------

def euler_gamma(n: int = 10**4) -> float:
    """Euler's constant from ``H_n - log n`` with Euler-Maclaurin corrections."""
    h = math.fsum(1.0 / i for i in range(1, n + 1))
    return h - math.log(n) - 1 / (2 * n) + 1 / (12 * n**2) - 1 / (120 * n**4)


def _von_mangoldt(N: int) -> np.ndarray:
    lam = np.zeros(N + 1)
    sieve = np.ones(N + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(N) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    for p in np.flatnonzero(sieve):
        lp = math.log(p)
        pk = int(p)
        while pk <= N:
            lam[pk] = lp
            pk *= int(p)
    return lam


@lru_cache(maxsize=4)
def zeta_log_derivative_2(N: int = 2 * 10**6) -> float:
    """``zeta'(2)/zeta(2) = -sum Lambda(n)/n^2``, partial sum to ``N`` plus tail ``1/N``.

    The tail uses ``psi(t) ~ t``.
    """
    lam = _von_mangoldt(N)
    n = np.arange(N + 1, dtype=np.float64)
    n[0] = 1.0
    partial = math.fsum(lam / (n * n))
    return -(partial + 1.0 / N)


def zeta_prime_2(N: int = 10**4) -> float:
    """``zeta'(2) = -sum log n / n^2`` with an Euler-Maclaurin tail from ``N``."""
    head = math.fsum(math.log(i) / (i * i) for i in range(2, N))
    L = math.log(N)
    # integral, half end-term, and first two derivative corrections of log t / t^2 at N
    f = L / N**2
    integral = (L + 1) / N
    d1 = (1 - 2 * L) / N**3
    d3 = (26 - 24 * L) / N**5
    tail = integral + f / 2 - d1 / 12 + d3 / 720
    return -(head + tail)


def j32_constants(gamma: float | None = None, zeta_ratio: float | None = None) -> tuple[float, float]:
    """``c1 = 18/pi^2`` and ``c2 = (3/pi^2)(12 gamma - 6 zeta'(2)/zeta(2) - 5)``."""
    if gamma is None:
        gamma = euler_gamma()
    if zeta_ratio is None:
        zeta_ratio = zeta_log_derivative_2()
    pi2 = math.pi**2
    return 18 / pi2, 3 / pi2 * (12 * gamma - 6 * zeta_ratio - 5)


def j32_prediction(X: int) -> float:
    c1, c2 = j32_constants()
    return c1 * X**3 * math.log(X) + c2 * X**3


def compare_asymptotic_j32(X_list: Sequence[int], workers: int | None = None
                           ) -> list[tuple[int, int, float, float, bool]]:
    """Rows ``(X, exact J_{3,2}(X), predicted, relative error, in_range)``.

    The relative error is ``|J - predicted| / J``.  ``X < 8`` is flagged as
    outside the asymptotic range.
    """
    rows = []
    for X in X_list:
        exact = count_mean_value(SystemParams(3, 2, X), workers=workers)
        pred = j32_prediction(X)
        rows.append((X, exact, pred, abs(exact - pred) / exact, X >= 8))
    return rows
