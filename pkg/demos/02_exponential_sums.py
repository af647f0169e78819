"""
Weyl sums, rational approximation and minor arcs
================================================
"""

# %%
import math
from fractions import Fraction

from vmvt.exp_sums import (dirichlet_approx, equidistribution_min, eval_f, eval_g,
                           is_minor_arc, vinogradov_envelope, weyl_envelope)

# Complete quadratic sums have modulus sqrt(q).
for q in (5, 21, 99):
    print(q, abs(eval_f([0, Fraction(1, q)], q)), math.sqrt(q))

# %%
# Phases are reduced exactly, so degree 8 at X = 10^6 is no problem.
alpha = [math.sqrt(2) % 1] * 8
print("f_8(alpha; 10^6) =", eval_f(alpha, 10**6))
print("g_3(1/5; 50)     =", eval_g(Fraction(1, 5), 3, 50))

# %%
# Continued fractions give the Dirichlet approximation.
print(dirichlet_approx(math.pi, 10), dirichlet_approx(math.pi, 1000))

# %%
# Minor arcs: the golden ratio has no good approximations at all.
phi = (1 + math.sqrt(5)) / 2 % 1
print("1/2 minor?", is_minor_arc(Fraction(1, 2), 3, 10), " phi minor?", is_minor_arc(phi, 3, 100))

# %%
# Envelopes.  Weyl's exponent is 2^(1-k); Vinogradov's is 1/(2(k-1)(k-2)),
# and the latter wins from k = 7.
X = 1e6
for k in (3, 5, 7, 8):
    q = int(X ** (k / 2))
    print(k, weyl_envelope(q, k, X).value, vinogradov_envelope(q, k, k, X).value)

# %%
# Small values of a cubic polynomial mod 1.
print(equidistribution_min([math.sqrt(2) % 1, math.sqrt(3) % 1, math.sqrt(5) % 1], 10**6))
