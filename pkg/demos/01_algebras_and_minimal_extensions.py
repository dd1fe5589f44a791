"""
Finite algebras and minimal extensions
======================================

A finite algebra of subsets is fixed by its atoms.  Adding one set ``x``
is a minimal extension when nothing fits strictly between the old algebra
and the new one.
"""

from finitebool import (
    FiniteAlgebra,
    SetFamily,
    SubsetMask,
    count_intermediate_algebras,
    generate_algebra,
    is_minimal_extension,
    verify_minimal_chain,
)

#%%
# Two overlapping sets on three points already cut out every point.

F = SetFamily.from_lists(3, [[0, 1], [0, 2]])
print([a.indices() for a in generate_algebra(F).atom_masks()])

#%%
# Over the atoms {0,1} and {2,3}, the set {0} splits one atom and {0,2}
# splits both.  The second verdict names an element b for which neither
# x & b nor x - b lies in the algebra.

B = FiniteAlgebra(4, (0b0011, 0b1100))
for pts in ([0], [0, 2]):
    x = SubsetMask.from_indices(4, pts)
    v = is_minimal_extension(B, x)
    print(pts, v.status, v.witness.indices() if v.witness else None,
          "algebras from B to B(x):", count_intermediate_algebras(B, x))

#%%
# A chain of nested sets grows one atom at a time.  A set that crosses two
# atoms breaks the chain, and the report says where.

print(verify_minimal_chain(SetFamily.from_lists(4, [[0], [0, 1], [0, 1, 2]])))
bad = verify_minimal_chain(SetFamily.from_lists(4, [[0, 2], [1, 3], [0, 1]]))
print(bad.ok, bad.index, bad.witness.indices())
