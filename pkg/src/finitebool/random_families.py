"""Seeded generators of random set families for the property harnesses.

Every random stream comes from :func:`stream`: a Philox4x64-10
counter-based generator whose 128-bit key is ``seed + 2**64 * index``, with
the counter starting at zero.  Trial ``index`` of a harness run with master
seed ``seed`` therefore draws the same numbers regardless of which other
trials run, or in which order.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .independence import max_independent
from .setsys import FiniteAlgebra, SetFamily, SubsetMask

__all__ = [
    "stream",
    "random_mask",
    "random_family",
    "random_partition",
    "laminar_family",
    "no_independent_pair_family",
    "bounded_independence_family",
    "independent_family",
]

_U64 = (1 << 64) - 1


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Generator for trial ``index`` under master ``seed`` (both unsigned 64-bit)."""
    if not (0 <= seed <= _U64 and 0 <= index <= _U64):
        raise InputError("seed and index must be unsigned 64-bit integers")
    return np.random.Generator(np.random.Philox(key=seed + (index << 64)))


def random_mask(rng: np.random.Generator, ground: int, p: float = 0.5) -> int:
    return sum(1 << i for i, hit in enumerate(rng.random(ground) < p) if hit)


def random_family(rng: np.random.Generator, ground: int, size: int, p: float = 0.5) -> SetFamily:
    return SetFamily.from_bits(ground, [random_mask(rng, ground, p) for _ in range(size)])


def random_partition(rng: np.random.Generator, ground: int, blocks: int) -> FiniteAlgebra:
    """Algebra whose atoms are the nonempty blocks of a random labelling."""
    labels = rng.integers(0, blocks, size=ground)
    atoms: dict[int, int] = {}
    for point, label in enumerate(labels):
        atoms[int(label)] = atoms.get(int(label), 0) | 1 << point
    return FiniteAlgebra(ground, tuple(atoms.values()))


def _nested_or_disjoint(a: int, b: int) -> bool:
    common = a & b
    return common == 0 or common == a or common == b


def laminar_family(rng: np.random.Generator, ground: int, size: int, attempts: int | None = None) -> SetFamily:
    """Up to ``size`` distinct nonempty sets, any two nested or disjoint.

    Random intervals of a random ordering of the ground set are accepted
    when they are nested-or-disjoint with everything kept so far.
    """
    order = [int(t) for t in rng.permutation(ground)]
    kept: list[int] = []
    for _ in range(attempts if attempts is not None else 20 * size):
        if len(kept) == size:
            break
        lo, hi = sorted(int(v) for v in rng.integers(0, ground + 1, size=2))
        if lo == hi:
            continue
        mask = sum(1 << order[t] for t in range(lo, hi))
        if mask not in kept and all(_nested_or_disjoint(mask, k) for k in kept):
            kept.append(mask)
    return SetFamily.from_bits(ground, kept)


def no_independent_pair_family(rng: np.random.Generator, ground: int, size: int, flip: float = 0.5) -> SetFamily:
    """A laminar family with some members replaced by their complements.

    Complementing a member permutes the sign cells of every pair, so the
    result still has no independent pair.
    """
    fam = laminar_family(rng, ground, size)
    universe = (1 << ground) - 1
    bits = [universe & ~b if rng.random() < flip else b for b in fam.bits()]
    return SetFamily.from_bits(ground, bits)


def bounded_independence_family(rng: np.random.Generator, ground: int, n: int, size: int, attempts: int = 40) -> SetFamily:
    """A family with no ``n`` independent members.

    Starts from :func:`no_independent_pair_family` and adds random sets
    while they keep the largest independent subfamily below ``n``.
    """
    if n < 2:
        raise InputError("n must be at least 2")
    fam = no_independent_pair_family(rng, ground, max(1, size // 2))
    for _ in range(attempts):
        if len(fam) >= size:
            break
        cand = fam.append(SubsetMask(ground, random_mask(rng, ground)))
        if max_independent(cand, cap=n)[0] < n:
            fam = cand
    return fam


def independent_family(rng: np.random.Generator, k: int, extra: int = 0) -> SetFamily:
    """``k`` independent sets over ``2^k + extra`` shuffled points.

    Point ``t`` carries a code; set ``i`` collects the points whose code has
    bit ``i``.  The first ``2^k`` codes are all of ``{0,1}^k`` so every cell
    is hit; the extra points get random codes.
    """
    codes = list(range(1 << k)) + [int(c) for c in rng.integers(0, 1 << k, size=extra)] if k else [0] * (1 + extra)
    order = [int(t) for t in rng.permutation(len(codes))]
    ground = len(codes)
    members = []
    for i in range(k):
        members.append(sum(1 << order[t] for t, c in enumerate(codes) if c >> i & 1))
    return SetFamily.from_bits(ground, members)
