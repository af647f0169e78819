"""Exact counts of solutions of the Vinogradov system.

``J_{s,k}(X)`` counts ordered pairs of ``s``-tuples ``x, y`` in
``[1, X]^s`` with equal power sums of every order ``1..k``; ``T_s(X)``
counts the diagonal pairs where ``y`` is a rearrangement of ``x``.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _config
from .errors import InvariantViolation, ResourceExceeded
from .tables import PowerSumSpace, RepresentationTable, convolve, table_of_order

STRATEGIES = ("brute_force", "meet_in_middle")


@dataclass(frozen=True)
class SystemParams:
    """``(s, k, X)``; a real ``X`` is floored on construction."""

    s: int
    k: int
    X: int

    def __post_init__(self):
        X = self.X
        if not isinstance(X, int):
            X = math.floor(X)
            object.__setattr__(self, "X", int(X))
        if self.s < 1 or self.k < 1 or self.X < 1:
            raise ValueError(f"need s, k, X >= 1, got {self}")


def representation_table(params: SystemParams, workers: int | None = None,
                         memory_budget: int | None = None) -> RepresentationTable:
    """Full order-``s`` table ``v -> r_s(v)`` over ``[1, X]``."""
    space = PowerSumSpace.build(range(1, params.X + 1), params.k, params.s)
    return table_of_order(space, params.s, workers, memory_budget)


def count_over_values(values: Sequence[int], s: int, k: int, strategy: str = "meet_in_middle",
                      workers: int | None = None, memory_budget: int | None = None) -> int:
    """Number of pairs of ``s``-tuples from ``values`` with equal power sums up to ``k``."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    values = sorted(set(int(v) for v in values))
    if not values:
        return 0
    if strategy == "brute_force":
        return _brute_force(values, s, k, workers, memory_budget)
    space = PowerSumSpace.build(values, k, s)
    hi, lo = (s + 1) // 2, s // 2
    cache: dict = {}
    if lo == 0:
        return table_of_order(space, 1, workers, memory_budget, cache).sum_of_squares()
    a = table_of_order(space, hi, workers, memory_budget, cache)
    b = table_of_order(space, lo, workers, memory_budget, cache)
    return convolve(a, b, workers, memory_budget).sum_of_squares()


def _brute_force(values, s, k, workers, memory_budget) -> int:
    # Compares every x-tuple's power sums against every y-tuple's directly.
    workers, budget = _config.resolve(workers, memory_budget)
    n = len(values) ** s
    if n * (k + s) * 8 > budget:
        raise ResourceExceeded(f"brute force over {n} tuples exceeds memory budget")
    big = max(abs(v) for v in values) ** k * s >= 2**62
    dtype = object if big else np.int64
    grid = np.array(list(itertools.product(values, repeat=s)), dtype=dtype).reshape(n, s)
    sums = [np.sum(grid**j, axis=1) for j in range(1, k + 1)]
    rows = max(1, (1 << 20) // n)

    def block(start):
        eq = np.ones((min(rows, n - start), n), dtype=bool)
        for col in sums:
            eq &= col[start:start + rows, None] == col[None, :]
        return int(eq.sum())

    starts = range(0, n, rows)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(block, starts))
    return sum(block(st) for st in starts)


def count_mean_value(params: SystemParams, strategy: str = "meet_in_middle",
                     workers: int | None = None, memory_budget: int | None = None) -> int:
    """Exact ``J_{s,k}(X)``.

    Parameters
    ----------
    params : SystemParams
    strategy : {"meet_in_middle", "brute_force"}
        ``meet_in_middle`` squares the counts of the order-``s`` table built
        from two half tables; ``brute_force`` compares all pairs of tuples.
    workers : int, optional
        Threads used while building tables; never changes the result.
    memory_budget : int, optional
        Bytes; defaults to 4 GiB.  Exceeding it raises ``ResourceExceeded``.
    """
    return count_over_values(range(1, params.X + 1), params.s, params.k, strategy,
                             workers, memory_budget)


def _partitions(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def count_diagonal(s: int, X: int) -> int:
    """``T_s(X)``: pairs ``(x, y)`` in ``[1, X]^s`` with ``y`` a rearrangement of ``x``.

    Each multiset with multiplicities ``m`` contributes ``(s!/prod m_i!)^2``;
    multisets are grouped by the partition ``m`` of ``s``.
    """
    if s < 1 or X < 1:
        raise ValueError("s and X must be positive")
    total = 0
    fs = math.factorial(s)
    for lam in _partitions(s):
        distinct = len(lam)
        if distinct > X:
            continue
        orderings = fs
        for m in lam:
            orderings //= math.factorial(m)
        # multisets of this type: choose which values, up to permuting equal parts
        placements = math.perm(X, distinct)
        for rep in Counter(lam).values():
            placements //= math.factorial(rep)
        total += orderings * orderings * placements
    return total


def lower_bound(params: SystemParams) -> int:
    """``ceil(X^{2s} / prod_j (2 s X^j + 1))``: pigeonhole floor on ``J``."""
    s, k, X = params.s, params.k, params.X
    boxes = 1
    for j in range(1, k + 1):
        boxes *= 2 * s * X**j + 1
    return -(-(X ** (2 * s)) // boxes)


def lower_bound_certificate(params: SystemParams, workers: int | None = None,
                            memory_budget: int | None = None) -> tuple[int, int]:
    """Return ``(L, J)`` after checking ``J >= L`` and ``J >= T_s(X)`` exactly."""
    L = lower_bound(params)
    J = count_mean_value(params, workers=workers, memory_budget=memory_budget)
    if J < L or J < count_diagonal(params.s, params.X):
        raise InvariantViolation(f"J={J} below a lower bound for {params}")
    return L, J


def check_newton_identity(k: int, X: int, workers: int | None = None) -> bool:
    """True iff ``J_{s,k}(X) == T_s(X)`` for every ``s`` in ``1..k``."""
    return all(count_mean_value(SystemParams(s, k, X), workers=workers) == count_diagonal(s, X)
               for s in range(1, k + 1))


def count_in_progression(params: SystemParams, q: int, xi: int, workers: int | None = None,
                         memory_budget: int | None = None) -> int:
    """Solutions with every variable in ``[1, X]`` and congruent to ``xi`` mod ``q``.

    The same number is computed a second time over the contracted
    variables ``z`` with ``x = q z + xi``, i.e. over the integers in
    ``[(1 - xi)/q, (X - xi)/q]``; the two must agree.
    """
    if q < 1:
        raise ValueError("q must be positive")
    s, k, X = params.s, params.k, params.X
    direct = [x for x in range(1, X + 1) if (x - xi) % q == 0]
    lo = -((xi - 1) // q)           # ceil((1 - xi) / q)
    hi = (X - xi) // q
    contracted = list(range(lo, hi + 1))
    a = count_over_values(direct, s, k, workers=workers, memory_budget=memory_budget)
    b = count_over_values(contracted, s, k, workers=workers, memory_budget=memory_budget)
    if a != b:
        raise InvariantViolation(
            f"progression count {a} != contracted count {b} for {params}, q={q}, xi={xi}")
    return a


def fit_empirical_exponent(s: int, k: int, X_list: Sequence[int], workers: int | None = None,
                           memory_budget: int | None = None) -> float:
    """Least-squares slope of ``log J_{s,k}(X)`` against ``log X``."""
    if len(X_list) < 3:
        raise ValueError("need at least three heights")
    xs = np.log(np.array(X_list, dtype=float))
    ys = np.array([math.log(count_mean_value(SystemParams(s, k, X), workers=workers,
                                             memory_budget=memory_budget)) for X in X_list])
    slope = np.polyfit(xs, ys, 1)[0]
    return float(slope)
