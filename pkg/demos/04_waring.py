"""
Sums of cubes against the circle method
=======================================
"""

# %%
import numpy as np

from vmvt.waring import (WaringInstance, asymptotic_report, count_representations,
                         gauss_sum, main_term, singular_series)

print(count_representations(WaringInstance(2, 2, 25)), count_representations(WaringInstance(8, 3, 1000)))
print(abs(gauss_sum(5, 1, 2)))

# %%
# The truncated singular series settles quickly for s = 8, k = 3.
for Q in (10, 50, 100, 200):
    print(Q, singular_series(WaringInstance(8, 3, 5), Q).value)

# %%
# Exact counts for eight cubes against Gamma factor times singular series.
ns = [int(v) for v in np.linspace(1e5, 1e6, 10)]
for n, R, pred, ratio in asymptotic_report(8, 3, ns, Q=200):
    print(f"{n:8d} {R:14d} {pred:16.1f} {ratio:.4f}")
print(main_term(WaringInstance(2, 2, 100)))
