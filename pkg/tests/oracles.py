"""Slow reference implementations used as oracles.

Everything here works on frozensets of points or on explicit numpy point
grids, never on the package's bitmask shortcuts, so agreement between the
two is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def as_set(bits: int) -> frozenset:
    return frozenset(i for i in range(bits.bit_length()) if bits >> i & 1)


def closure(ground: int, sets) -> set[frozenset]:
    """The Boolean algebra generated by ``sets``, by closing under operations."""
    top = frozenset(range(ground))
    elems = {frozenset(), top} | {frozenset(s) for s in sets}
    while True:
        new = {top - a for a in elems}
        new |= {a & b for a in elems for b in elems}
        if new <= elems:
            return elems
        elems |= new


def atoms_of(elems: set[frozenset]) -> set[frozenset]:
    nonzero = [a for a in elems if a]
    return {a for a in nonzero if not any(b < a for b in nonzero)}


def cells(ground: int, sets) -> dict[tuple, frozenset]:
    top = frozenset(range(ground))
    sets = [frozenset(s) for s in sets]
    out = {}
    for eps in itertools.product((0, 1), repeat=len(sets)):
        cell = top
        for s, e in zip(sets, eps):
            cell &= s if e else top - s
        out[eps] = cell
    return out


def independent(ground: int, sets) -> bool:
    return all(cells(ground, sets).values())


def max_independent_size(ground: int, sets) -> int:
    best = 0
    for r in range(1, len(sets) + 1):
        if any(independent(ground, [sets[i] for i in idx]) for idx in itertools.combinations(range(len(sets)), r)):
            best = r
        else:
            break
    return best


def shatters(patterns, S) -> bool:
    seen = {tuple(p[i] for i in S) for p in patterns}
    return len(seen) == 1 << len(S)


def vc(patterns, coords: int) -> int:
    best = 0
    for r in range(coords + 1):
        if any(shatters(patterns, S) for S in itertools.combinations(range(coords), r)):
            best = r
    return best


def minimal_by_intermediates(ground: int, base_sets, x) -> bool:
    """Count every algebra strictly between ``B`` and ``B(x)`` by brute force."""
    B = closure(ground, base_sets)
    Bx = closure(ground, list(base_sets) + [x])
    extra = sorted(Bx - B, key=sorted)
    for e in extra:
        C = closure(ground, list(B) + [e])
        if C != Bx:
            return False
    return True


def defects(ground: int, atoms, weights, sub):
    """``(type_defect, determination_defect)`` by enumerating both algebras."""
    weight = dict(zip(atoms, weights))

    def mu(s: frozenset) -> Fraction:
        return sum((w for a, w in weight.items() if a <= s), Fraction(0))

    big = closure(ground, atoms)
    small = closure(ground, sub)
    type_d = max(min(mu(a ^ b) for b in small) for a in big)
    det_d = max(mu(a) - max(mu(c) for c in small if c <= a) for a in big)
    return type_d, det_d


def point_grid(m: int) -> np.ndarray:
    return np.arange(1 << m, dtype=np.int64)


def cylinder_points(grid: np.ndarray, domain: int, values: int) -> np.ndarray:
    return (grid & domain) == values


def union_points(grid: np.ndarray, cylinders) -> np.ndarray:
    hit = np.zeros(grid.shape, dtype=bool)
    for c in cylinders:
        hit |= cylinder_points(grid, c.domain, c.values)
    return hit


def grid_measure(hit: np.ndarray) -> Fraction:
    return Fraction(int(hit.sum()), hit.size)
