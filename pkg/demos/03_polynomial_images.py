"""
Images under Boolean polynomials
================================

If a family has no ``n`` independent members, then applying an ``r``-ary
Boolean polynomial to all tuples of members cannot produce ``I(n, r)``
independent sets.  Here we tabulate the threshold and watch the bound hold
on random families.
"""

import numpy as np

from finitebool import check_poly_bound, i_threshold, parse_polynomial
from finitebool.random_families import bounded_independence_family, stream

#%%

table = np.array([[i_threshold(n, r) for r in range(1, 5)] for n in range(1, 5)])
print(table)

#%%

polys = {name: parse_polynomial(text) for name, text in {
    "meet": "(and x0 x1)",
    "join": "(or x0 x1)",
    "xor": "(xor x0 x1)",
    "meet-join": "(or (and x0 x1) x2)",
}.items()}

for name, p in polys.items():
    seen = []
    for trial in range(200):
        rng = stream(99, trial)
        F = bounded_independence_family(rng, int(rng.integers(4, 11)), 2, 5)
        v = check_poly_bound(F, 2, p)
        assert v.holds
        seen.append(v.max_independent)
    print(f"{name:10s} I={i_threshold(2, p.arity)}  largest independent image subfamily: {max(seen)}")
