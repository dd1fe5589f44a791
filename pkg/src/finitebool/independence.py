"""Independence, shattering and the Sauer-Shelah machinery.

A family ``a_0, ..., a_{k-1}`` is independent when every sign cell
``a_0^e0 & ... & a_{k-1}^e(k-1)`` is nonempty.  A sign vector ``e`` is
encoded as the integer ``sum(e_i << i)``; "least" cell always means least
code.

Transposing a family gives its pattern family: one pattern per ground point,
recording which members contain that point.  Independent subfamilies of the
family are exactly the coordinate sets shattered by its patterns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import InputError, PreconditionFailed, ResourceError
from .polynomial import BooleanPolynomial
from .setsys import SetFamily, SubsetMask

__all__ = [
    "PatternFamily",
    "IndependenceVerdict",
    "IndependenceWitness",
    "PolyBoundVerdict",
    "is_independent",
    "transpose",
    "shattered",
    "vc_dimension",
    "max_independent",
    "sauer_bound",
    "i_threshold",
    "poly_image",
    "check_poly_bound",
    "sauer_shelah_extract",
    "dual_transfer",
    "transfer_family",
]


@dataclass(frozen=True)
class PatternFamily:
    """Distinct patterns in ``2^T`` with ``T = {0, ..., coords-1}``.

    Pattern bit ``j`` is the value at coordinate ``j``.  Patterns are stored
    sorted and deduplicated.
    """

    coords: int
    patterns: tuple[int, ...]

    def __post_init__(self):
        if self.coords < 0:
            raise InputError("coordinate count must be non-negative")
        pats = tuple(sorted(set(self.patterns)))
        for f in pats:
            if f < 0 or f >> self.coords:
                raise InputError(f"pattern {f:#x} uses coordinates outside {self.coords}")
        object.__setattr__(self, "patterns", pats)

    @classmethod
    def from_strings(cls, coords: int, strings: Iterable[str]) -> PatternFamily:
        pats = []
        for s in strings:
            if len(s) != coords or set(s) - {"0", "1"}:
                raise InputError(f"bad pattern string {s!r} for {coords} coordinates")
            pats.append(sum(1 << j for j, ch in enumerate(s) if ch == "1"))
        return cls(coords, tuple(pats))

    def strings(self) -> list[str]:
        return ["".join("1" if f >> j & 1 else "0" for j in range(self.coords)) for f in self.patterns]

    def __len__(self) -> int:
        return len(self.patterns)


def _cap_check(k: int, cap: int, what: str) -> None:
    if k > cap:
        raise ResourceError(f"{what} of size {k} exceeds cap {cap}")


def _cells(ground: int, members: Sequence[int]) -> dict[int, int]:
    """Nonempty sign cells keyed by sign code."""
    cells = {0: (1 << ground) - 1}
    for i, a in enumerate(members):
        bit = 1 << i
        nxt = {}
        for code, cell in cells.items():
            out = cell & ~a
            if out:
                nxt[code] = out
            inside = cell & a
            if inside:
                nxt[code | bit] = inside
        cells = nxt
    return cells


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    missing_cell: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.independent


def is_independent(family: SetFamily, cap: int = 24) -> IndependenceVerdict:
    """Test independence; a dependent family reports its least empty cell.

    >>> is_independent(SetFamily.from_lists(2, [[0], [0]])).missing_cell
    (1, 0)
    """
    k = len(family)
    _cap_check(k, cap, "family")
    cells = _cells(family.ground, family.bits())
    if len(cells) == 1 << k:
        return IndependenceVerdict(True)
    code = 0
    while code in cells:
        code += 1
    return IndependenceVerdict(False, tuple(code >> i & 1 for i in range(k)))


def cell_mask(family: SetFamily, signs: Sequence[int]) -> SubsetMask:
    """The sign cell ``a_0^signs[0] & ... & a_{k-1}^signs[k-1]``."""
    out = SubsetMask.full(family.ground)
    for a, e in zip(family.members, signs, strict=True):
        out = out & a.power(e)
    return out


def transpose(family: SetFamily) -> PatternFamily:
    """Membership vector of every ground point across the members."""
    bits = family.bits()
    pats = set()
    for t in range(family.ground):
        pats.add(sum(1 << i for i, a in enumerate(bits) if a >> t & 1))
    return PatternFamily(len(bits), tuple(pats))


def _coord_mask(coords: int, S) -> int:
    if isinstance(S, int):
        mask = S
    else:
        mask = 0
        for j in S:
            mask |= 1 << j
    if mask < 0 or mask >> coords:
        raise InputError(f"coordinate set outside range {coords}")
    return mask


def _shatters(patterns: Iterable[int], mask: int) -> bool:
    need = 1 << bin(mask).count("1")
    return len({f & mask for f in patterns}) == need


def shattered(C: PatternFamily, S, cap: int = 24) -> bool:
    """True iff the restrictions of ``C`` to ``S`` realize all of ``2^S``.

    ``S`` is an iterable of coordinates or a coordinate bit mask.
    """
    mask = _coord_mask(C.coords, S)
    _cap_check(bin(mask).count("1"), cap, "coordinate set")
    return _shatters(C.patterns, mask)


def vc_dimension(C: PatternFamily) -> int:
    """Size of the largest coordinate set shattered by ``C``.

    Depth-first over coordinate sets in increasing order; only shattered
    sets are extended (shattering is inherited by subsets) and the search
    stops once it reaches ``floor(log2 |C|)``, the most any set can reach.
    """
    if not C.patterns:
        raise InputError("vc_dimension of an empty pattern family")
    pats = C.patterns
    varying = 0
    for f in pats:
        varying |= f ^ pats[0]
    coords = [j for j in range(C.coords) if varying >> j & 1]
    ceiling = len(pats).bit_length() - 1
    best = 0

    def grow(mask: int, size: int, start: int) -> bool:
        nonlocal best
        if size > best:
            best = size
            if best == ceiling:
                return True
        if size + (len(coords) - start) <= best:
            return False
        for idx in range(start, len(coords)):
            nxt = mask | 1 << coords[idx]
            if _shatters(pats, nxt) and grow(nxt, size + 1, idx + 1):
                return True
        return False

    grow(0, 0, 0)
    return best


@dataclass(frozen=True)
class IndependenceWitness:
    """Either an independent subfamily (member positions) or a missing cell."""

    indices: tuple[int, ...] | None = None
    missing_cell: tuple[int, ...] | None = None


def max_independent(family: SetFamily, cap: int | None = None) -> tuple[int, IndependenceWitness]:
    """Largest independent subfamily, or the first one of size ``cap``.

    Branch and bound over positions in increasing order, keeping the sign
    cells of the current choice; a new member must split every cell.  A
    choice of size ``s`` needs ``2^s`` nonempty cells, so ``s`` never passes
    ``log2(ground)``.  The first subfamily found at the final size is the
    lexicographically least one.
    """
    bits = family.bits()
    universe = (1 << family.ground) - 1
    usable = [i for i, a in enumerate(bits) if 0 < a < universe]
    ceiling = min(len(usable), family.ground.bit_length() - 1)
    if cap is not None:
        ceiling = min(ceiling, cap)
    best: tuple[int, ...] = ()

    def grow(chosen: list[int], cells: list[int], start: int) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = tuple(chosen)
            if len(best) >= ceiling:
                return True
        if len(chosen) + len(usable) - start <= len(best):
            return False
        for pos in range(start, len(usable)):
            if len(chosen) + len(usable) - pos <= len(best):
                return False
            a = bits[usable[pos]]
            nxt = []
            for cell in cells:
                inside = cell & a
                if not inside or inside == cell:
                    break
                nxt.append(inside)
                nxt.append(cell ^ inside)
            else:
                chosen.append(usable[pos])
                done = grow(chosen, nxt, pos + 1)
                chosen.pop()
                if done:
                    return True
        return False

    if ceiling > 0:
        grow([], [universe], 0)
    return len(best), IndependenceWitness(indices=best)


def sauer_bound(N: int, n: int) -> int:
    """``C(N,0) + C(N,1) + ... + C(N,n-1)``."""
    if not 1 <= n <= N:
        raise InputError(f"need 1 <= n <= N, got n={n}, N={N}")
    return sum(comb(N, i) for i in range(n))


def i_threshold(n: int, r: int) -> int:
    """Least ``s`` with ``sum(C(r*s, i) for i < n) < 2**s``.

    Images of a family without ``n`` independent members under an
    ``r``-ary Boolean polynomial have no independent subfamily this long.
    """
    if n < 1 or r < 1:
        raise InputError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    s = 0
    while sum(comb(r * s, i) for i in range(n)) >= 1 << s:
        s += 1
    return s


def poly_image(family: SetFamily, p: BooleanPolynomial, cap: int = 10**6) -> SetFamily:
    """``{p(a_1, ..., a_r) : a_i in family}``, deduplicated.

    Tuples are visited in lexicographic order of member positions and each
    value is kept at its first appearance.
    """
    n_tuples = len(family) ** p.arity
    if n_tuples > cap:
        raise ResourceError(f"{n_tuples} argument tuples exceed cap {cap}")
    f = p.compile(family.ground)
    bits = family.bits()
    seen: dict[int, None] = {}
    for args in itertools.product(bits, repeat=p.arity):
        seen.setdefault(f(args), None)
    return SetFamily.from_bits(family.ground, seen)


@dataclass(frozen=True)
class PolyBoundVerdict:
    """``holds``, ``violated`` or ``precondition_failed``.

    ``witness`` is an independent subfamily: of the image when violated, of
    the input family when the precondition fails.
    """

    status: str
    threshold: int | None = None
    image_size: int | None = None
    max_independent: int | None = None
    witness: SetFamily | None = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def check_poly_bound(family: SetFamily, n: int, p: BooleanPolynomial, tuple_cap: int = 10**6) -> PolyBoundVerdict:
    """Check that ``p(family)`` has no independent subfamily of length ``I(n, arity)``.

    The input family must itself contain no ``n`` independent members.
    """
    size, wit = max_independent(family, cap=n)
    if size >= n:
        return PolyBoundVerdict("precondition_failed", witness=family.subfamily(wit.indices))
    threshold = i_threshold(n, p.arity)
    image = poly_image(family, p, cap=tuple_cap)
    size, wit = max_independent(image, cap=threshold)
    if size >= threshold:
        return PolyBoundVerdict("violated", threshold, len(image), size, image.subfamily(wit.indices))
    return PolyBoundVerdict("holds", threshold, len(image), size)


@lru_cache(maxsize=1 << 16)
def _extract(patterns: frozenset) -> frozenset:
    if len(patterns) == 1:
        return frozenset({0})
    first = next(iter(patterns))
    varying = 0
    for f in patterns:
        varying |= f ^ first
    bit = varying & -varying
    low = frozenset(f for f in patterns if not f & bit)
    high = frozenset(f ^ bit for f in patterns if f & bit)
    f0 = _extract(low)
    f1 = _extract(high)
    return f0 | f1 | frozenset(S | bit for S in f0 & f1)


def sauer_shelah_extract(C: PatternFamily) -> list[tuple[int, ...]]:
    """``|C|`` distinct coordinate sets, each shattered by ``C``.

    Splits on the lowest coordinate where ``C`` is not constant, recurses on
    both halves restricted to the other coordinates, and keeps the sets of
    either half plus the pivot added to every set common to both halves.
    Sets are returned as sorted coordinate tuples, ordered by bit mask.
    """
    if not C.patterns:
        raise InputError("sauer_shelah_extract of an empty pattern family")
    found = _extract(frozenset(C.patterns))
    return [tuple(j for j in range(C.coords) if S >> j & 1) for S in sorted(found)]


def dual_transfer(A: Sequence[SubsetMask], n: int) -> list[int]:
    """Pick ``n+1`` points whose membership patterns across ``A`` are independent.

    ``A`` holds ``2^(n+1)`` independent subsets of an index set ``G``.  Set
    ``k`` (0-based) is labelled by the binary expansion of ``k``; point
    ``g_i`` is the least element of the cell of ``A`` whose sign at set
    ``k`` is bit ``i`` of ``k``.  The sets ``{k : g_i in A_k}`` are then
    the coordinate sets of the cube ``2^(n+1)``.

    Raises
    ------
    PreconditionFailed
        If ``A`` is dependent; the witness is the least missing cell.
    """
    if n < 0:
        raise InputError("n must be non-negative")
    size = 1 << (n + 1)
    if len(A) != size:
        raise InputError(f"expected {size} sets, got {len(A)}")
    family = SetFamily(A[0].ground, tuple(A))
    verdict = is_independent(family)
    if not verdict:
        raise PreconditionFailed("input sets are not independent", verdict.missing_cell)
    points = []
    for i in range(n + 1):
        cell = cell_mask(family, [k >> i & 1 for k in range(size)])
        points.append((cell.bits & -cell.bits).bit_length() - 1)
    return points


def transfer_family(A: Sequence[SubsetMask], points: Sequence[int]) -> SetFamily:
    """``{k : g in A_k}`` for every chosen point ``g``, over ground ``len(A)``."""
    return SetFamily.from_lists(len(A), [[k for k, a in enumerate(A) if g in a] for g in points])
