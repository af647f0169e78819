"""
Counting lifts modulo prime powers
==================================

For fixed y the tuples x mod p^k with matching power sums mod p^j number
at most k! p^(k(k-1)/2) when p > k.
"""

# %%
from vmvt.congruences import (CongruenceInstance, count_congruence_solutions,
                              count_deep_congruence_solutions, count_linear_solutions)

for k, p, eta, y in [(2, 3, 0, (1, 2)), (3, 5, 2, (1, 2, 3)), (3, 7, 0, (1, 2, 3))]:
    r = count_congruence_solutions(CongruenceInstance(k, p, eta, y))
    print(f"k={k} p={p}: count={r.count} bound={r.bound} ratio={r.ratio:.3f}")

# %%
# With p <= k the Jacobian k! prod(x_i - x_j) vanishes mod p and the bound
# is lost: every k = 3, p = 3 instance has three times as many lifts.
r = count_congruence_solutions(CongruenceInstance(3, 3, 0, (1, 2, 3)))
print(r, r.within_bound)

# %%
# Dropping all but the linear congruence can only add solutions.
inst = CongruenceInstance(3, 5, 0, (1, 2, 3))
print(count_linear_solutions(inst), ">=", count_congruence_solutions(inst).count)

# %%
# The deeper system, moduli p^(jk) and x mod p^(k^2).
print(count_deep_congruence_solutions(2, 3, 1, 0, (1, 4)))
print(count_deep_congruence_solutions(2, 5, 0, 0, (5, 10)))
