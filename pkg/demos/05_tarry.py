"""
Equal power sums: Tarry's problem
=================================
"""

# %%
import io

from vmvt.tarry import TarryWitness, search_witness, verify_witness, write_witness

print(verify_witness(TarryWitness.of(2, [(1, 6, 8), (2, 4, 9)])))

# %%
# Two blocks of size 2 never match squares and sums with distinct cubes,
# but size 3 already works: the smallest witness below height 10.
print(search_witness(2, 2, 2, 50))
w = search_witness(2, 2, 3, 10)
buf = io.StringIO()
write_witness(w, buf)
print(buf.getvalue())

# %%
# Degree 3 needs four entries per block.
print(search_witness(3, 2, 4, 12))
