import itertools
from math import comb

import numpy as np
import pytest

from finitebool import (
    InputError,
    PatternFamily,
    PreconditionFailed,
    SetFamily,
    SubsetMask,
    check_poly_bound,
    dual_transfer,
    i_threshold,
    is_independent,
    max_independent,
    parse_polynomial,
    poly_image,
    sauer_bound,
    sauer_shelah_extract,
    shattered,
    transfer_family,
    transpose,
    vc_dimension,
)
from finitebool.independence import cell_mask
from finitebool.polynomial import INTERSECTION, MEET_JOIN, UNION, XOR
from finitebool.random_families import bounded_independence_family, independent_family, stream

import oracles


def fam(ground, *sets):
    return SetFamily.from_lists(ground, sets)


def pats(*strings):
    return PatternFamily.from_strings(len(strings[0]), strings)


# Frozen from direct evaluation of the threshold formula (least s with
# sum_{i<n} C(rs, i) < 2^s); independent of i_threshold's loop.
I_TABLE = {(1, r): 1 for r in range(1, 7)}
I_TABLE.update({(2, 1): 2, (2, 2): 3, (2, 3): 4, (3, 1): 3, (3, 2): 7, (3, 3): 9, (4, 2): 11})


# -- independence -----------------------------------------------------------------


def test_two_crossing_sets_independent():
    v = is_independent(fam(4, [0, 1], [0, 2]))
    assert v and v.missing_cell is None
    cells = {eps: cell_mask(fam(4, [0, 1], [0, 2]), eps).indices() for eps in itertools.product((0, 1), repeat=2)}
    assert sorted(map(tuple, cells.values())) == [(0,), (1,), (2,), (3,)]


def test_empty_member_misses_positive_cell():
    v = is_independent(fam(2, []))
    assert not v and v.missing_cell == (1,)


def test_repeated_member_misses_mixed_cell():
    v = is_independent(fam(2, [0], [0]))
    assert not v and v.missing_cell == (1, 0)


def test_empty_family_is_independent():
    assert is_independent(fam(3))


@pytest.mark.parametrize("seed", range(40))
def test_independence_matches_cell_enumeration(seed):
    rng = np.random.default_rng(seed)
    ground = int(rng.integers(1, 9))
    sets = [[i for i in range(ground) if rng.random() < 0.5] for _ in range(int(rng.integers(1, 5)))]
    v = is_independent(fam(ground, *sets))
    cells = oracles.cells(ground, sets)
    assert bool(v) == all(cells.values())
    if not v:
        # least missing cell under the little-endian code of the sign vector
        missing = [eps for eps, c in cells.items() if not c]
        code = lambda eps: sum(e << i for i, e in enumerate(eps))
        assert v.missing_cell == min(missing, key=code)


# -- transposition and shattering -----------------------------------------------


def test_transpose_records_point_memberships():
    assert sorted(transpose(fam(3, [0, 1], [1, 2])).strings()) == ["01", "10", "11"]


def test_transpose_of_empty_family():
    T = transpose(fam(2))
    assert T.coords == 0 and T.strings() == [""]


def test_transpose_of_independent_pair():
    assert len(transpose(fam(4, [0, 1], [0, 2]))) == 4


def test_shattered_examples():
    cube = PatternFamily(3, tuple(range(8)))
    assert all(shattered(cube, S) for r in range(4) for S in itertools.combinations(range(3), r))
    assert not shattered(pats("00", "11"), (0, 1))
    assert shattered(pats("00", "01", "10"), (0,))


def test_vc_examples():
    assert vc_dimension(PatternFamily(3, tuple(range(8)))) == 3
    assert vc_dimension(pats("101")) == 0
    assert vc_dimension(pats("00", "01", "10")) == 1


@pytest.mark.parametrize("seed", range(25))
def test_vc_matches_brute_force(seed):
    rng = np.random.default_rng(100 + seed)
    coords = int(rng.integers(1, 7))
    patterns = {tuple(int(b) for b in rng.integers(0, 2, coords)) for _ in range(int(rng.integers(1, 20)))}
    C = PatternFamily.from_strings(coords, ["".join(map(str, p)) for p in patterns])
    assert vc_dimension(C) == oracles.vc(patterns, coords)


# -- maximum independent subfamily ---------------------------------------------


def test_disjoint_singletons():
    assert max_independent(fam(4, [0], [1], [2]))[0] == 1


def test_cube_coordinates():
    cube = fam(8, *[[p for p in range(8) if p >> i & 1] for i in range(3)])
    size, wit = max_independent(cube)
    assert size == 3 and wit.indices == (0, 1, 2)


def test_chain_of_intervals():
    assert max_independent(fam(8, *[list(range(i)) for i in range(1, 8)]))[0] == 1


def test_family_of_trivial_sets_has_no_independent_member():
    size, wit = max_independent(fam(3, [], [0, 1, 2]))
    assert size == 0 and wit.indices == ()


def test_cap_stops_search():
    cube = fam(16, *[[p for p in range(16) if p >> i & 1] for i in range(4)])
    assert max_independent(cube, cap=2)[0] == 2


@pytest.mark.parametrize("seed", range(30))
def test_max_independent_matches_brute_force(seed):
    rng = np.random.default_rng(200 + seed)
    ground = int(rng.integers(2, 9))
    sets = [[i for i in range(ground) if rng.random() < 0.5] for _ in range(int(rng.integers(1, 7)))]
    size, wit = max_independent(fam(ground, *sets))
    assert size == oracles.max_independent_size(ground, sets)
    assert len(wit.indices) == size
    assert oracles.independent(ground, [sets[i] for i in wit.indices])
    # the witness is the lexicographically first independent index set of that size
    first = next(
        (idx for idx in itertools.combinations(range(len(sets)), size)
         if oracles.independent(ground, [sets[i] for i in idx])),
        (),
    )
    assert wit.indices == first


# -- Sauer bound and threshold ----------------------------------------------------


def test_sauer_bound_values():
    assert sauer_bound(4, 2) == 5
    assert sauer_bound(4, 4) == 15
    assert sauer_bound(14, 3) == 106


@pytest.mark.parametrize("nr,value", sorted(I_TABLE.items()))
def test_i_threshold_table(nr, value):
    n, r = nr
    assert i_threshold(n, r) == value
    lhs = lambda s: sum(comb(r * s, i) for i in range(n))
    assert lhs(value) < 2 ** value
    assert all(lhs(s) >= 2 ** s for s in range(value))


def test_i_threshold_rejects_nonpositive():
    with pytest.raises(InputError):
        i_threshold(0, 2)


# -- polynomials ----------------------------------------------------------------


def test_intersection_image_in_first_seen_order():
    img = poly_image(fam(3, [0, 1], [1, 2]), INTERSECTION)
    assert [m.indices() for m in img.members] == [[0, 1], [1], [1, 2]]


def test_identity_polynomial_deduplicates():
    img = poly_image(fam(3, [0], [1], [0]), parse_polynomial("x0"))
    assert [m.indices() for m in img.members] == [[0], [1]]


def test_tautology_image_is_top():
    img = poly_image(fam(3, [0], [1, 2]), parse_polynomial("(or x0 (not x0))"))
    assert [m.indices() for m in img.members] == [[0, 1, 2]]


def test_chain_image_bound_holds():
    chain = fam(6, *[list(range(i)) for i in range(1, 6)])
    v = check_poly_bound(chain, 2, INTERSECTION)
    assert v.holds and v.threshold == 3 and v.max_independent == 1


def test_independent_pair_fails_precondition():
    v = check_poly_bound(fam(4, [0, 1], [0, 2]), 2, UNION)
    assert v.status == "precondition_failed"
    assert [m.indices() for m in v.witness.members] == [[0, 1], [0, 2]]


@pytest.mark.parametrize("p", [INTERSECTION, UNION, XOR, MEET_JOIN], ids=str)
def test_bound_holds_on_random_families(p):
    for trial in range(60):
        rng = stream(7, trial)
        ground = int(rng.integers(3, 11))
        F = bounded_independence_family(rng, ground, 2, int(rng.integers(2, 7)))
        assert check_poly_bound(F, 2, p).holds


# -- Sauer-Shelah extraction ----------------------------------------------------


def test_singleton_extracts_empty_set():
    assert sauer_shelah_extract(pats("0110")) == [()]


def test_full_square_extracts_every_subset():
    assert sauer_shelah_extract(PatternFamily(2, (0, 1, 2, 3))) == [(), (0,), (1,), (0, 1)]


def test_three_corner_pattern():
    C = pats("00", "01", "10")
    sets = sauer_shelah_extract(C)
    assert sets == [(), (0,), (1,)]
    assert all(shattered(C, S) for S in sets)


def test_extract_rejects_empty():
    with pytest.raises(InputError):
        sauer_shelah_extract(PatternFamily(2, ()))


@pytest.mark.parametrize("seed", range(30))
def test_extraction_sizes_and_shattering(seed):
    rng = np.random.default_rng(300 + seed)
    coords = int(rng.integers(1, 9))
    C = PatternFamily(coords, tuple(int(v) for v in rng.integers(0, 1 << coords, int(rng.integers(1, 40)))))
    sets = sauer_shelah_extract(C)
    assert len(sets) == len(set(sets)) == len(C)
    points = [tuple(f >> j & 1 for j in range(coords)) for f in C.patterns]
    assert all(oracles.shatters(points, S) for S in sets)


# -- dual transfer ----------------------------------------------------------------


def test_transfer_single_point_lies_in_second_minus_first():
    A = [SubsetMask.from_indices(4, s) for s in ([0, 1], [0, 2])]
    (g,) = dual_transfer(A, 0)
    assert g in A[1] and g not in A[0]
    assert g == 2


def test_transfer_from_sixteen_points():
    rng = stream(3, 0)
    F = independent_family(rng, 4)
    A = list(F.members)
    points = dual_transfer(A, 1)
    assert len(points) == 2
    G = transfer_family(A, points)
    assert is_independent(G)


def test_transfer_rejects_dependent_input():
    A = [SubsetMask.from_indices(3, s) for s in ([0], [0])]
    with pytest.raises(PreconditionFailed) as info:
        dual_transfer(A, 0)
    assert info.value.witness == (1, 0)


def test_transfer_checks_size():
    with pytest.raises(InputError):
        dual_transfer([SubsetMask.from_indices(4, [0])], 0)


# -- duality ------------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(40))
def test_max_independent_equals_vc_of_transpose(seed):
    rng = stream(11, seed)
    ground = int(rng.integers(1, 13))
    F = SetFamily.from_bits(ground, [int(v) for v in rng.integers(0, 1 << ground, int(rng.integers(1, 8)))])
    assert max_independent(F)[0] == vc_dimension(transpose(F))
