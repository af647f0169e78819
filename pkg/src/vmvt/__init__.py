"""Exact and numerical experiments around Vinogradov's mean value theorem.

Submodules
----------
mean_values   exact counts ``J_{s,k}(X)`` of the Vinogradov system
exp_sums      Weyl sums, rational approximation, minor arcs, envelopes
congruences   exhaustive Hensel-lifting counts modulo prime powers
waring        representation counts and the circle-method prediction
tarry         witnesses for Tarry's problem
exponents     ledger of exponents, thresholds and constants
cli           command-line front end (``vmvt``)
"""
from . import congruences, exp_sums, exponents, mean_values, tables, tarry, waring
from .errors import (InvalidDegree, InvariantViolation, NotPrime, ResiduesNotDistinct,
                     ResourceExceeded, VMVTError)
from .mean_values import SystemParams, count_mean_value

__version__ = "0.1.0"

__all__ = [
    "congruences", "exp_sums", "exponents", "mean_values", "tables", "tarry", "waring",
    "VMVTError", "ResourceExceeded", "InvariantViolation", "InvalidDegree", "NotPrime",
    "ResiduesNotDistinct", "SystemParams", "count_mean_value",
]
