import itertools

import pytest

from finitebool import (
    FiniteAlgebra,
    InputError,
    SetFamily,
    SubsetMask,
    algebra_contains,
    count_intermediate_algebras,
    generate_algebra,
    is_minimal_extension,
    minimal_by_definition,
    refine,
    verify_minimal_chain,
)
from finitebool.errors import ResourceError

import oracles


def fam(ground, *sets):
    return SetFamily.from_lists(ground, sets)


def atom_lists(alg):
    return [m.indices() for m in alg.atom_masks()]


def mask(ground, *idx):
    return SubsetMask.from_indices(ground, idx)


# -- masks and families ---------------------------------------------------------


def test_mask_operations():
    a, b = mask(5, 0, 1, 3), mask(5, 1, 2)
    assert (a & b).indices() == [1]
    assert (a | b).indices() == [0, 1, 2, 3]
    assert (a ^ b).indices() == [0, 2, 3]
    assert (a - b).indices() == [0, 3]
    assert (~a).indices() == [2, 4]
    assert a.power(1) == a and a.power(0) == ~a
    assert mask(5, 1).issubset(a) and not b.issubset(a)
    assert len(a) == 3 and 3 in a and 4 not in a


def test_mask_rejects_points_outside_ground():
    with pytest.raises(InputError):
        SubsetMask.from_indices(3, [3])
    with pytest.raises(InputError):
        mask(3, 0) & mask(4, 0)


def test_algebra_validates_partition():
    with pytest.raises(InputError):
        FiniteAlgebra(3, (0b011, 0b110))
    with pytest.raises(InputError):
        FiniteAlgebra(3, (0b011,))
    assert FiniteAlgebra(3, (0b100, 0b011)).atoms == (0b011, 0b100)


# -- generation -------------------------------------------------------------------


def test_generate_trivial():
    assert atom_lists(generate_algebra(fam(3))) == [[0, 1, 2]]


def test_generate_one_generator():
    assert atom_lists(generate_algebra(fam(3, [0, 1]))) == [[0, 1], [2]]


def test_generate_refines_to_points():
    assert atom_lists(generate_algebra(fam(3, [0, 1], [0, 2]))) == [[0], [1], [2]]


@pytest.mark.parametrize("seed", range(30))
def test_generate_matches_closure(seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    ground = int(rng.integers(1, 7))
    sets = [[i for i in range(ground) if rng.random() < 0.5] for _ in range(int(rng.integers(0, 4)))]
    alg = generate_algebra(fam(ground, *sets))
    expected = oracles.atoms_of(oracles.closure(ground, sets))
    assert {frozenset(a) for a in atom_lists(alg)} == expected


def test_algebra_contains():
    assert algebra_contains(FiniteAlgebra.powerset(3), mask(3, 0, 2))
    B = FiniteAlgebra(3, (0b011, 0b100))
    assert not algebra_contains(B, mask(3, 0))
    assert algebra_contains(B, mask(3, 0, 1, 2))
    assert algebra_contains(B, mask(3))


def test_refine_splits_atoms():
    B = FiniteAlgebra(4, (0b0011, 0b1100))
    assert atom_lists(refine(B, mask(4, 0, 2))) == [[0], [1], [2], [3]]


# -- minimal extensions ---------------------------------------------------------


TWO_PAIRS = FiniteAlgebra(4, (0b0011, 0b1100))


def test_minimal_when_one_atom_splits():
    assert is_minimal_extension(TWO_PAIRS, mask(4, 0)).status == "minimal"


def test_not_minimal_witness_is_first_pair():
    v = is_minimal_extension(TWO_PAIRS, mask(4, 0, 2))
    assert v.status == "not_minimal"
    assert v.witness.indices() == [0, 1]


def test_trivial_algebra_always_minimal():
    assert is_minimal_extension(FiniteAlgebra.trivial(2), mask(2, 0)).minimal


def test_member_is_reported():
    assert is_minimal_extension(TWO_PAIRS, mask(4, 2, 3)).status == "member"


def test_intermediate_counts():
    assert count_intermediate_algebras(TWO_PAIRS, mask(4, 0)) == 2
    # both pairs split: the four-point powerset has {0,1} and {2,3} refined
    # independently, giving 2 x 2 choices
    assert count_intermediate_algebras(TWO_PAIRS, mask(4, 0, 2)) == 4


def test_intermediate_count_rejects_member():
    with pytest.raises(InputError):
        count_intermediate_algebras(TWO_PAIRS, mask(4, 0, 1))


def test_intermediate_count_cap():
    B = FiniteAlgebra.trivial(6)
    with pytest.raises(ResourceError):
        count_intermediate_algebras(B, mask(6, 0), cap=1)


def _all_cases(ground):
    def partitions(points):
        if not points:
            yield []
            return
        head, rest = points[0], points[1:]
        for p in partitions(rest):
            for i in range(len(p)):
                yield p[:i] + [p[i] | 1 << head] + p[i + 1:]
            yield p + [1 << head]

    for atoms in partitions(list(range(ground))):
        B = FiniteAlgebra(ground, tuple(atoms))
        for x in range(1 << ground):
            yield B, SubsetMask(ground, x)


@pytest.mark.parametrize("ground", [1, 2, 3, 4])
def test_minimal_criteria_agree_exhaustively(ground):
    for B, x in _all_cases(ground):
        fast = is_minimal_extension(B, x)
        slow = minimal_by_definition(B, x)
        assert fast == slow, (B, x)
        if fast.status == "member":
            continue
        base = [oracles.as_set(a) for a in B.atoms]
        assert oracles.minimal_by_intermediates(ground, base, oracles.as_set(x.bits)) == fast.minimal
        assert (count_intermediate_algebras(B, x) == 2) == fast.minimal


def test_witness_is_least_over_all_elements():
    for B, x in _all_cases(4):
        v = is_minimal_extension(B, x)
        if v.status != "not_minimal":
            continue
        witnesses = [
            b for b in B.elements()
            if not B.contains_bits(x.bits & b) and not B.contains_bits(x.bits & ~b & B.universe)
        ]
        assert v.witness.bits == min(witnesses)


# -- chains -----------------------------------------------------------------------


def test_chain_of_nested_intervals():
    assert verify_minimal_chain(fam(4, [0], [0, 1], [0, 1, 2])).ok


def test_chain_of_atoms_in_any_order():
    atoms = [[0], [1, 2], [3], [4, 5]]
    for order in itertools.permutations(atoms):
        assert verify_minimal_chain(fam(6, *order)).ok


def test_chain_fails_on_crossing_generator():
    v = verify_minimal_chain(fam(4, [0, 2], [1, 3], [0, 1]))
    assert not v.ok
    assert v.index == 2
    assert v.witness.indices() == [0, 2]


def test_chain_skips_redundant_generators():
    assert verify_minimal_chain(fam(3, [0], [0], [1, 2])).ok
