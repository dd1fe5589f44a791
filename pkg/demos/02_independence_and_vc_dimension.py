"""
Independent families and VC dimension
=====================================

A family is independent when every sign cell is nonempty.  Writing down
which sets each point belongs to turns the family into a pattern family,
and the largest independent subfamily becomes the largest shattered set.
"""

import numpy as np

from finitebool import (
    SetFamily,
    is_independent,
    max_independent,
    sauer_bound,
    sauer_shelah_extract,
    transpose,
    vc_dimension,
)
from finitebool.random_families import stream

#%%

pair = SetFamily.from_lists(4, [[0, 1], [0, 2]])
print(bool(is_independent(pair)), transpose(pair).strings())

twice = SetFamily.from_lists(2, [[0], [0]])
print(is_independent(twice).missing_cell)   # a - a is empty

#%%
# The coordinate sets of the cube {0,1}^3 are the textbook independent
# triple.  Adding a few random sets does not hide them.

rng = stream(2024, 0)
cube = [[p for p in range(8) if p >> i & 1] for i in range(3)]
noise = [[p for p in range(8) if rng.random() < 0.5] for _ in range(3)]
F = SetFamily.from_lists(8, noise + cube)
size, wit = max_independent(F)
print(size, wit.indices, vc_dimension(transpose(F)))

#%%
# Duality on a batch of random families, as a table of agreements.

agree = np.array([
    max_independent(G)[0] == vc_dimension(transpose(G))
    for G in (SetFamily.from_bits(10, [int(v) for v in stream(5, t).integers(0, 1 << 10, 6)]) for t in range(200))
])
print(agree.mean())

#%%
# Sauer-Shelah, constructively: every pattern family yields as many
# distinct shattered coordinate sets as it has patterns.

C = transpose(F)
sets = sauer_shelah_extract(C)
print(len(C), len(sets), max(map(len, sets)), sauer_bound(C.coords, 3))
