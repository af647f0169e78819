"""Exhaustive counts for the congruences behind efficient congruencing.

For fixed ``y`` the tuples ``x`` modulo a prime power satisfying

    sum_i (x_i - eta)^j == sum_i (y_i - eta)^j   (mod p^(e_j)),  j = 1..k

are enumerated digit by digit in base ``p``.  The ``j``-th congruence only
sees ``x mod p^(e_j)``, so it is tested as soon as that many digits are
fixed and failing prefixes are dropped before the next lift.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from . import _config
from .errors import InvariantViolation, NotPrime, ResiduesNotDistinct, ResourceExceeded


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class CongruenceInstance:
    k: int
    p: int
    eta: int
    y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(int(v) for v in self.y))
        _check_prime(self.p)
        if self.k < 1 or len(self.y) != self.k:
            raise ValueError(f"y must have k={self.k} entries")
        if len({v % self.p for v in self.y}) != self.k:
            raise ResiduesNotDistinct("y entries must be pairwise distinct mod p")


@dataclass(frozen=True)
class LiftCount:
    """A solution count next to its Hensel bound.

    ``hensel_applies`` is false when ``p <= k``: then ``p`` divides ``k!``,
    the Jacobian of the power sums is singular mod ``p`` and the bound is
    not a theorem, so exceeding it is reported rather than raised.
    """

    count: int
    bound: int
    hensel_applies: bool = True

    @property
    def ratio(self) -> float:
        return self.count / self.bound

    @property
    def within_bound(self) -> bool:
        return self.count <= self.bound


def _checked(count: int, bound: int, k: int, p: int, what: str) -> LiftCount:
    applies = p > k
    if applies and count > bound:
        raise InvariantViolation(f"{what}: count {count} exceeds the Hensel bound {bound}")
    return LiftCount(count, bound, applies)


def _check_prime(p):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise ValueError("only odd primes are supported")


def _powmod(base: np.ndarray, e: int, m: int) -> np.ndarray:
    out = np.ones_like(base) % m
    b = base % m
    for _ in range(e):
        out = (out * b) % m
    return out


def lift_count(k: int, p: int, eta: int, y: Sequence[int], moduli_exps: Sequence[int],
               final_exp: int, distinct_exp: int = 1, base_residue: int | None = None,
               memory_budget: int | None = None) -> int:
    """Count ``x`` mod ``p^final_exp`` satisfying the system with moduli ``p^moduli_exps[j-1]``.

    Parameters
    ----------
    distinct_exp : int
        The ``x_i`` must be pairwise distinct modulo ``p^distinct_exp``.
    base_residue : int, optional
        If given, every ``x_i`` must be congruent to it mod ``p``.

    When lifting a level would exceed the memory budget the surviving
    prefixes are split into chunks that are lifted to the end one at a
    time; the count is the same, only peak memory changes.
    """
    _, budget = _config.resolve(None, memory_budget)
    if any(e > final_exp for e in moduli_exps) or distinct_exp > final_exp:
        raise ValueError("all moduli must divide p^final_exp")
    mods = [p**e for e in moduli_exps]
    if max(mods) ** 2 >= 2**63:
        raise ResourceExceeded("modulus too large for int64 reduction")
    targets = [sum(pow(v - eta, j, m) for v in y) % m for j, m in zip(range(1, k + 1), mods)]
    digits = np.array(list(product(range(p), repeat=k)), dtype=np.int64).reshape(-1, k)
    row_bytes = digits.shape[0] * k * 8 * 3
    if row_bytes > budget:
        raise ResourceExceeded(f"lifting one prefix needs {row_bytes} bytes, over budget")
    chunk = max(1, budget // row_bytes)

    def lift(cand, level):
        step = p ** (level - 1)
        cand = (cand[:, None, :] + step * digits[None, :, :]).reshape(-1, k)
        if level == 1 and base_residue is not None:
            cand = cand[np.all(cand == base_residue % p, axis=1)]
        if level == distinct_exp:
            r = cand % p**distinct_exp
            ok = np.ones(cand.shape[0], dtype=bool)
            for i in range(k):
                for j in range(i + 1, k):
                    ok &= r[:, i] != r[:, j]
            cand = cand[ok]
        for j, (e, m, t) in enumerate(zip(moduli_exps, mods, targets), start=1):
            if e == level:
                s = np.zeros(cand.shape[0], dtype=np.int64)
                for i in range(k):
                    s = (s + _powmod(cand[:, i] - eta, j, m)) % m
                cand = cand[s == t]
        return cand

    def descend(cand, level):
        # lift cand from level - 1 up to final_exp; returns the number of survivors
        while level <= final_exp:
            if cand.shape[0] == 0:
                return 0
            if cand.shape[0] > chunk:
                return sum(descend(cand[i:i + chunk], level)
                           for i in range(0, cand.shape[0], chunk))
            cand = lift(cand, level)
            level += 1
        return int(cand.shape[0])

    return descend(np.zeros((1, k), dtype=np.int64), 1)


def hensel_bound(k: int, p: int) -> int:
    return math.factorial(k) * p ** (k * (k - 1) // 2)


def count_congruence_solutions(inst: CongruenceInstance,
                               memory_budget: int | None = None) -> LiftCount:
    """Tuples ``x`` mod ``p^k``, distinct mod ``p``, with power sums matching ``y`` mod ``p^j``.

    Raises ``InvariantViolation`` if the count exceeds ``k! p^(k(k-1)/2)``
    while ``p > k``.
    """
    k, p = inst.k, inst.p
    count = lift_count(k, p, inst.eta, inst.y, list(range(1, k + 1)), k,
                       memory_budget=memory_budget)
    return _checked(count, hensel_bound(k, p), k, p, str(inst))


def count_linear_solutions(inst: CongruenceInstance) -> int:
    """Tuples ``x`` mod ``p^k``, distinct mod ``p``, satisfying only the ``j = 1`` congruence."""
    k, p = inst.k, inst.p
    base = lift_count(k, p, inst.eta, inst.y, [1], 1)
    # the j = 1 congruence sees x mod p only; each coordinate lifts freely
    return base * p ** (k * (k - 1))


def deep_bound(k: int, p: int) -> int:
    return math.factorial(k) * p ** (k * k * (k - 1) // 2 + k * (k - 1) // 2)


def count_deep_congruence_solutions(k: int, p: int, xi: int, eta: int, y: Sequence[int],
                                    memory_budget: int | None = None) -> LiftCount:
    """Tuples ``x`` mod ``p^(k^2)`` with ``x == xi`` mod ``p``, distinct mod ``p^2``,
    and power sums matching ``y`` mod ``p^(jk)`` for ``j = 1..k``."""
    _check_prime(p)
    y = tuple(int(v) for v in y)
    if len(y) != k:
        raise ValueError(f"y must have k={k} entries")
    if k == 1:
        return LiftCount(1, 1)
    if k >= 3 and p > 3:
        raise ResourceExceeded("deep congruence count is desk-scale only for k = 2, or k = 3 with p = 3")
    if any((v - xi) % p for v in y):
        raise ValueError("every y_i must be congruent to xi mod p")
    if len({v % p**2 for v in y}) != k:
        raise ResiduesNotDistinct("y entries must be pairwise distinct mod p^2")
    count = lift_count(k, p, eta, y, [j * k for j in range(1, k + 1)], k * k,
                       distinct_exp=2, base_residue=xi, memory_budget=memory_budget)
    return _checked(count, deep_bound(k, p), k, p, f"deep k={k}, p={p}, y={y}")
