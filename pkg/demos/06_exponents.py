"""
The exponent ledger and the J_{3,2} asymptotic
==============================================
"""

# %%
import sys

from vmvt.exponents import (classical_delta, compare_asymptotic_j32, export_csv,
                            gtilde_constant, j32_constants, ledger)

export_csv(ledger(5), sys.stdout)

# %%
print("C =", gtilde_constant())
print("classical Delta for s = 3k^3, k = 10:", classical_delta(3000, 10, 30))

# %%
# J_{3,2}(X) against (18/pi^2) X^3 log X + c2 X^3.  The secondary error
# changes sign between heights, so the relative error is small but not
# monotone in X.
print(j32_constants())
for row in compare_asymptotic_j32([16, 32, 64, 128, 256]):
    print(row)
