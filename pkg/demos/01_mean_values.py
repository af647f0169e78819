"""
Counting solutions of the Vinogradov system
===========================================

J_{s,k}(X) counts pairs of s-tuples in [1, X] whose power sums agree in
every degree 1..k.  This walk-through computes it exactly and checks the
elementary facts around it.
"""

# %%
# Small cases first.  With s <= k the power sums pin down the multiset, so
# every solution is a rearrangement and J equals the diagonal count T_s.
from vmvt.mean_values import (SystemParams, count_diagonal, count_in_progression,
                              count_mean_value, fit_empirical_exponent, lower_bound)

for s, k, X in [(1, 2, 7), (2, 2, 4), (3, 3, 6)]:
    J = count_mean_value(SystemParams(s, k, X))
    print(f"J_{s},{k}({X}) = {J}    T_{s}({X}) = {count_diagonal(s, X)}")

# %%
# Both strategies agree; meet-in-the-middle is what makes X = 256 cheap.
p = SystemParams(3, 2, 40)
print(count_mean_value(p, "brute_force"), count_mean_value(p, "meet_in_middle"))
print("J_3,2(256) =", count_mean_value(SystemParams(3, 2, 256)))

# %%
# Pigeonhole gives a floor with no hidden constant.
for X in (4, 16, 64):
    p = SystemParams(3, 2, X)
    print(X, lower_bound(p), count_mean_value(p))

# %%
# Restricting every variable to x = xi (mod q) and substituting x = q z + xi
# gives the same count over a shorter range of z.
print(count_in_progression(SystemParams(3, 2, 30), q=4, xi=3))

# %%
# Growth: slope of log J against log X, next to the conjectured exponent 3.
print("slope J_3,2:", fit_empirical_exponent(3, 2, [64, 128, 256]))
print("slope J_2,2:", fit_empirical_exponent(2, 2, [64, 128, 256]))
