"""
Exact finite measures
=====================

Measures on a finite algebra are weight vectors on its atoms, kept as
fractions.  An independent family carries a product measure under which
any two members sit exactly 1/2 apart.
"""

from fractions import Fraction

from finitebool import (
    FiniteAlgebra,
    Measure,
    SetFamily,
    determination_defect,
    min_pairwise_separation,
    nonatomic_threshold,
    product_measure_on_independent,
    type_defect,
)
from finitebool.random_families import independent_family, stream

#%%

F = independent_family(stream(1, 0), 4, extra=5)
mu = product_measure_on_independent(F)
print(len(mu.algebra.atoms), set(mu.weights), min_pairwise_separation(mu, F))

#%%
# How well does a subalgebra approximate the whole?  The type defect allows
# any approximant, the determination defect only those from inside.

nu = Measure(FiniteAlgebra.powerset(4), tuple(Fraction(w, 10) for w in (4, 3, 2, 1)))
for sub in ([], [[0, 1]], [[0, 1], [0, 2]], [[0], [1], [2]]):
    G = SetFamily.from_lists(4, sub)
    print(sub, type_defect(nu, G), determination_defect(nu, G))

print("heaviest atom:", nonatomic_threshold(nu))
