"""Cylinder unions in the truncated Cantor space ``2^m``.

Points of ``2^m`` are bit masks (bit ``i`` is the ``i``-th coordinate).  A
:class:`Cylinder` fixes the coordinates in ``domain`` to ``values``; under
the uniform product measure it weighs ``2^-|domain|``.

For a point ``x`` and a permutation ``phi`` of ``T = {0, 3, 6, ...}`` the
cylinder ``sigma_n`` copies ``x`` on the non-multiples of 3 below ``3n`` and
on ``phi(0), phi(3), ..., phi(3n-3)``, and disagrees with ``x`` at
``phi(3n)``.  The sets ``A(x, phi)`` are unions of these cylinders; families
of them built by :func:`build_separated_family` are pairwise far apart in
measure, by at least ``(5/7) * 2^-(3p+2)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, PreconditionFailed, TruncationError

__all__ = [
    "Cylinder",
    "CylinderUnion",
    "CantorParams",
    "SeparationReport",
    "sigma_n",
    "build_A",
    "convergence_index",
    "union_measure",
    "diff_measure",
    "union_measure_incl_excl",
    "diff_measure_incl_excl",
    "build_separated_family",
    "separation_conditions",
    "separation_bound",
    "verify_separation_bound",
    "lehmer_permutation",
]


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Cylinder:
    m: int
    domain: int
    values: int

    def __post_init__(self):
        if self.m < 1:
            raise InputError("truncation must be positive")
        if self.domain >> self.m or self.domain < 0:
            raise TruncationError(f"cylinder domain {self.domain:#x} does not fit in 2^{self.m}")
        if self.values & ~self.domain:
            raise InputError("cylinder values must lie inside its domain")

    @property
    def measure(self) -> Fraction:
        return Fraction(1, 1 << _popcount(self.domain))

    def indices(self) -> list[int]:
        return [i for i in range(self.m) if self.domain >> i & 1]

    def contains(self, point: int) -> bool:
        return point & self.domain == self.values

    def meet(self, other: Cylinder) -> Cylinder | None:
        """Intersection, or None when the two disagree somewhere."""
        common = self.domain & other.domain
        if (self.values ^ other.values) & common:
            return None
        return Cylinder(self.m, self.domain | other.domain, self.values | other.values)

    def minus(self, other: Cylinder) -> list[Cylinder]:
        """``self - other`` as disjoint cylinders."""
        if (self.values ^ other.values) & self.domain & other.domain:
            return [self]
        out = []
        dom, val = self.domain, self.values
        free = other.domain & ~self.domain
        while free:
            bit = free & -free
            free ^= bit
            out.append(Cylinder(self.m, dom | bit, val | (~other.values & bit)))
            dom |= bit
            val |= other.values & bit
        return out

    def within(self, other: Cylinder) -> bool:
        """``[self]`` is a subset of ``[other]``."""
        return other.domain & ~self.domain == 0 and (self.values ^ other.values) & other.domain == 0


@dataclass(frozen=True)
class CylinderUnion:
    m: int
    cylinders: tuple[Cylinder, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cylinders", tuple(self.cylinders))
        if any(c.m != self.m for c in self.cylinders):
            raise InputError("cylinders of a union must share the truncation")

    def __len__(self) -> int:
        return len(self.cylinders)

    def __iter__(self):
        return iter(self.cylinders)

    def contains(self, point: int) -> bool:
        return any(c.contains(point) for c in self.cylinders)


@dataclass(frozen=True)
class CantorParams:
    """A point ``x`` of ``2^m`` and a permutation of ``T = {3k : 3k < m}``.

    ``phi[k]`` is the image of ``3k``.
    """

    m: int
    phi: tuple[int, ...]
    x: int

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        T = self.T
        if sorted(self.phi) != T:
            raise InputError("phi must be a permutation of T = {0, 3, 6, ...} below m")
        if self.x < 0 or self.x >> self.m:
            raise InputError(f"point does not fit in 2^{self.m}")

    @property
    def T(self) -> list[int]:
        return list(range(0, self.m, 3))

    @classmethod
    def identity(cls, m: int, x: int = 0) -> CantorParams:
        return cls(m, tuple(range(0, m, 3)), x)

    def image(self, t: int) -> int:
        if t % 3 or not 0 <= t < self.m:
            raise TruncationError(f"{t} is not in T below {self.m}")
        return self.phi[t // 3]

    def bit(self, i: int) -> int:
        return self.x >> i & 1


def sigma_n(params: CantorParams, n: int) -> Cylinder:
    """The cylinder ``sigma_n(x, phi)``; its domain has ``3n+1`` points."""
    if n < 0:
        raise InputError("n must be non-negative")
    if 3 * n >= params.m:
        raise TruncationError(f"sigma_{n} needs 3n = {3 * n} in T below m = {params.m}")
    domain = 0
    for i in range(3 * n):
        if i % 3:
            domain |= 1 << i
    for j in range(n):
        domain |= 1 << params.image(3 * j)
    values = params.x & domain
    flip = params.image(3 * n)
    domain |= 1 << flip
    values |= (1 - params.bit(flip)) << flip
    return Cylinder(params.m, domain, values)


def build_A(params: CantorParams, n_max: int) -> CylinderUnion:
    """``A(x, phi)`` truncated to ``sigma_0 .. sigma_{n_max}``.

    Raises if two of the cylinders fail to disagree at ``phi(3n)``.
    """
    cyls = [sigma_n(params, n) for n in range(n_max + 1)]
    for n, k in itertools.combinations(range(n_max + 1), 2):
        pos = 1 << params.image(3 * n)
        if not (cyls[k].domain & pos) or not ((cyls[n].values ^ cyls[k].values) & pos):
            raise PreconditionFailed(f"sigma_{n} and sigma_{k} do not disagree at phi({3 * n})", (n, k))
    return CylinderUnion(params.m, tuple(cyls))


def convergence_index(params: CantorParams, k: int, n_max: int) -> int:
    """Least ``n0`` such that every ``sigma_n``, ``n0 <= n <= n_max``, fixes ``x`` below ``k``.

    Raises
    ------
    PreconditionFailed
        If even ``sigma_{n_max}`` does not; the witness is ``n_max``.
    """
    if not 0 <= k < params.m:
        raise InputError(f"need 0 <= k < m, got k={k}")
    target = Cylinder(params.m, (1 << k) - 1, params.x & ((1 << k) - 1))
    n0 = None
    for n in range(n_max, -1, -1):
        if not sigma_n(params, n).within(target):
            break
        n0 = n
    if n0 is None:
        raise PreconditionFailed(f"no cylinder up to n_max={n_max} fixes the first {k} bits", n_max)
    return n0


def _same_m(*unions: CylinderUnion) -> int:
    ms = {u.m for u in unions}
    if len(ms) != 1:
        raise InputError(f"mixed truncations {sorted(ms)}")
    return ms.pop()


def _subtract(pieces: list[Cylinder], cyls: Iterable[Cylinder]) -> list[Cylinder]:
    for d in cyls:
        pieces = [part for t in pieces for part in t.minus(d)]
    return pieces


def _disjoint_pieces(u: CylinderUnion) -> list[Cylinder]:
    pieces: list[Cylinder] = []
    for c in u.cylinders:
        pieces.extend(_subtract([c], pieces))
    return pieces


def union_measure(u: CylinderUnion) -> Fraction:
    """Exact measure of the union, via refinement into disjoint cylinders."""
    return sum((c.measure for c in _disjoint_pieces(u)), Fraction(0))


def diff_measure(u: CylinderUnion, v: CylinderUnion) -> Fraction:
    """Exact measure of ``union(u) - union(v)``."""
    _same_m(u, v)
    pieces = _subtract(_disjoint_pieces(u), v.cylinders)
    return sum((c.measure for c in pieces), Fraction(0))


def union_measure_incl_excl(u: CylinderUnion) -> Fraction:
    """Exact measure of the union by inclusion-exclusion over intersections."""
    total = Fraction(0)
    cyls = u.cylinders

    def walk(start: int, current: Cylinder | None, size: int):
        nonlocal total
        for i in range(start, len(cyls)):
            meet = cyls[i] if current is None else current.meet(cyls[i])
            if meet is None:
                continue
            sign = 1 if size % 2 == 0 else -1
            total += sign * meet.measure
            walk(i + 1, meet, size + 1)

    walk(0, None, 0)
    return total


def diff_measure_incl_excl(u: CylinderUnion, v: CylinderUnion) -> Fraction:
    """``mu(U - V) = mu(U | V) - mu(V)``, both by inclusion-exclusion."""
    m = _same_m(u, v)
    both = CylinderUnion(m, u.cylinders + v.cylinders)
    return union_measure_incl_excl(both) - union_measure_incl_excl(v)


def separation_bound(p: int) -> Fraction:
    """``(5/7) * 2^-(3p+2)``."""
    return Fraction(5, 7) / (1 << (3 * p + 2))


def build_separated_family(p: int, count: int, m: int, rng: np.random.Generator | None = None) -> list[CantorParams]:
    """Parameters ``(x_i, phi_i)`` whose ``A``-sets agree up to ``sigma_{p-1}``.

    ``phi_i`` fixes ``0, 3, ..., 3(p-1)`` and swaps ``3p`` with ``3(p+i)``,
    so the cylinders ``sigma_p`` share ``3p`` coordinates and differ only
    in their last one, ``3(p+i)``.  All ``x_i`` agree on those shared
    coordinates; elsewhere they are zero, or random when ``rng`` is given.
    """
    if p < 0 or count < 1:
        raise InputError("need p >= 0 and count >= 1")
    if 3 * (p + count - 1) >= m:
        raise TruncationError(f"m = {m} cannot host positions 3p..3(p+{count - 1})")
    T = list(range(0, m, 3))
    shared = sum(1 << i for i in range(3 * p))
    base = 0
    if rng is not None:
        base = int.from_bytes(rng.bytes((m + 7) // 8), "little") & ((1 << m) - 1)
    family = []
    for i in range(count):
        phi = list(T)
        a, b = p, p + i
        phi[a], phi[b] = phi[b], phi[a]
        x = base & shared
        if rng is not None:
            x |= int.from_bytes(rng.bytes((m + 7) // 8), "little") & ((1 << m) - 1) & ~shared
        family.append(CantorParams(m, tuple(phi), x))
    return family


def separation_conditions(p: int, family: Sequence[CantorParams]) -> tuple[Cylinder, list[int]]:
    """Recheck that a family agrees before ``p`` and splits one coordinate at ``p``.

    Returns the shared cylinder (``3p`` coordinates) and the extra coordinate
    of each member's ``sigma_p``, which must be pairwise distinct.
    """
    if not family:
        raise InputError("empty family")
    m = family[0].m
    if any(par.m != m for par in family):
        raise InputError("mixed truncations")
    for n in range(p):
        first = sigma_n(family[0], n)
        for i, par in enumerate(family[1:], 1):
            if sigma_n(par, n) != first:
                raise PreconditionFailed(f"sigma_{n} differs between members 0 and {i}", (n, 0, i))
    tops = [sigma_n(par, p) for par in family]
    extra = [1 << par.image(3 * p) for par in family]
    common = tops[0].domain & ~extra[0]
    shared = Cylinder(m, common, tops[0].values & common)
    coords = []
    for i, (top, e) in enumerate(zip(tops, extra)):
        if top.domain & ~e != common or top.values & common != shared.values:
            raise PreconditionFailed(f"sigma_{p} of member {i} is not the shared cylinder plus one coordinate", (p, i))
        coords.append(e.bit_length() - 1)
    if len(set(coords)) != len(coords):
        raise PreconditionFailed("the split coordinates are not distinct", tuple(coords))
    return shared, coords


@dataclass(frozen=True)
class SeparationReport:
    p: int
    bound: Fraction
    matrix: tuple[tuple[Fraction | None, ...], ...]
    holds: bool
    worst: tuple[int, int] | None


def verify_separation_bound(p: int, family: Sequence[CantorParams], n_max: int) -> SeparationReport:
    """Exact ``mu(A_i - A_j)`` for all ordered pairs, compared with the bound.

    The diagonal of the matrix is None.  ``worst`` is the pair with the
    smallest entry.
    """
    if n_max < p:
        raise InputError("n_max must be at least p")
    separation_conditions(p, family)
    unions = [build_A(par, n_max) for par in family]
    bound = separation_bound(p)
    matrix = [[None if i == j else diff_measure(u, v) for j, v in enumerate(unions)] for i, u in enumerate(unions)]
    entries = [(matrix[i][j], (i, j)) for i in range(len(unions)) for j in range(len(unions)) if i != j]
    worst = min(entries)[1] if entries else None
    holds = all(value >= bound for value, _ in entries)
    return SeparationReport(p, bound, tuple(map(tuple, matrix)), holds, worst)


def lehmer_permutation(x: int, m: int) -> tuple[int, ...]:
    """Permutation of ``T`` below ``m`` decoded from the leading bits of ``x``.

    The integer read from the first ``ceil(log2 |T|!)`` bits is reduced
    modulo ``|T|!`` and expanded in the factorial number system.
    """
    T = list(range(0, m, 3))
    size = factorial(len(T))
    width = max(size - 1, 1).bit_length()
    code = (x & ((1 << width) - 1)) % size
    perm = []
    pool = list(T)
    for k in range(len(T), 0, -1):
        idx, code = divmod(code, factorial(k - 1))
        perm.append(pool.pop(idx))
    return tuple(perm)
