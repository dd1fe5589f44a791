"""
Separated sets in Cantor space
==============================

Each set ``A(x, phi)`` is a disjoint union of cylinders ``sigma_n`` with
``3n+1`` fixed coordinates.  Families built to agree up to level ``p`` and
split at level ``p`` stay at least ``(5/7) 2^-(3p+2)`` apart, and every
distance is an exact fraction.
"""

import numpy as np

from finitebool import CantorParams, build_A, build_separated_family, sigma_n, union_measure, verify_separation_bound

#%%

par = CantorParams.identity(18)
for n in range(4):
    c = sigma_n(par, n)
    print(n, c.indices(), c.measure)
print("mu(A) =", union_measure(build_A(par, 5)))

#%%

for p in (0, 1):
    report = verify_separation_bound(p, build_separated_family(p, 5, 36), 5)
    M = np.array([[float(v) if v is not None else np.nan for v in row] for row in report.matrix])
    print(f"p={p} bound={report.bound} worst={report.matrix[report.worst[0]][report.worst[1]]}")
    print(np.round(M, 4))
