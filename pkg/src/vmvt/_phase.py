"""Exact reduction of polynomial phases modulo 1.

``alpha_1 x + ... + alpha_k x^k`` overflows double precision long before
``X = 10**6, k = 8``.  Two exact paths are used instead, both evaluating the
polynomial by Horner's rule for each ``x`` separately:

* rational mode, when every coefficient is a fraction and the common
  denominator ``L`` is below ``2**31``: the numerator is reduced mod ``L``
  in int64 at every Horner step (each product stays below ``2**62``);
* fixed-point mode otherwise: every coefficient is truncated to a multiple
  of ``2**-128`` (exact for any double at least ``2**-75``), and the
  polynomial is evaluated mod ``2**128`` with four 32-bit limbs held in
  uint64 lanes, so every limb product fits in 64 bits.  ``x`` must be below
  ``2**32``.  A non-dyadic fraction with a large denominator is rounded to
  the grid, and that rounding error is multiplied by ``x^j``.

Both return the phase as a float in ``[-1/2, 1/2)``, so negating every
coefficient negates every phase exactly.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

FIXED_BITS = 128
_MASK32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)
_RATIONAL_LIMIT = 2**31


def as_fraction(a) -> Fraction:
    if isinstance(a, Fraction):
        return a
    if isinstance(a, (int, np.integer)):
        return Fraction(int(a))
    return Fraction(float(a))


def reduce_mod1(coeffs: Sequence) -> tuple[Fraction, ...]:
    out = []
    for a in coeffs:
        f = as_fraction(a)
        out.append(f - math.floor(f))
    return tuple(out)


class PhasePolynomial:
    """``x -> (sum_j alpha_j x^j) mod 1`` for coefficients already reduced mod 1."""

    def __init__(self, alpha: Sequence[Fraction]):
        self.alpha = tuple(alpha)
        if not self.alpha:
            raise ValueError("need at least one coefficient")
        L = 1
        for a in self.alpha:
            L = L * a.denominator // math.gcd(L, a.denominator)
        self.rational = L < _RATIONAL_LIMIT
        if self.rational:
            self.modulus = L
            self._coeffs = [int(a.numerator * (L // a.denominator)) for a in self.alpha]
        else:
            self.modulus = 1 << FIXED_BITS
            self._coeffs = [(a.numerator << FIXED_BITS) // a.denominator for a in self.alpha]

    @property
    def k(self) -> int:
        return len(self.alpha)

    def phases(self, x: np.ndarray) -> np.ndarray:
        """Centered phases in ``[-1/2, 1/2)`` for nonnegative integer ``x``."""
        x = np.asarray(x, dtype=np.int64)
        if self.rational:
            return self._rational(x)
        if x.size and int(x.max()) >= 2**32:
            raise ValueError("fixed-point phases need x < 2**32")
        return self._fixed(x.astype(np.uint64))

    def numerators(self, x: np.ndarray) -> np.ndarray:
        """Rational mode only: ``L * phase mod L`` as int64."""
        if not self.rational:
            raise ValueError("not in rational mode")
        L = np.int64(self.modulus)
        xr = np.asarray(x, dtype=np.int64) % L
        acc = np.zeros_like(xr)
        for c in reversed(self._coeffs):
            acc = ((acc + np.int64(c)) * xr) % L
        return acc

    def _rational(self, x):
        L = self.modulus
        r = self.numerators(x)
        r = np.where(2 * r >= L, r - L, r)
        return r / L

    def _fixed(self, x):
        n = x.shape
        limbs = [np.zeros(n, dtype=np.uint64) for _ in range(4)]
        for c in reversed(self._coeffs):
            # acc = (acc + c) * x  (mod 2**128)
            carry = np.zeros(n, dtype=np.uint64)
            for i in range(4):
                t = limbs[i] + np.uint64((c >> (32 * i)) & 0xFFFFFFFF) + carry
                limbs[i] = t & _MASK32
                carry = t >> _SHIFT32
            carry = np.zeros(n, dtype=np.uint64)
            for i in range(4):
                t = limbs[i] * x + carry
                limbs[i] = t & _MASK32
                carry = t >> _SHIFT32
        top = ((limbs[3] << _SHIFT32) | limbs[2]).view(np.int64)
        return top.astype(np.float64) * 2.0**-64

    def phase_exact(self, x: int) -> Fraction:
        """Reference value of the phase of one ``x`` in ``[0, 1)``, by Python integers."""
        total = sum(c * x ** (j + 1) for j, c in enumerate(self._coeffs)) % self.modulus
        return Fraction(total, self.modulus)
