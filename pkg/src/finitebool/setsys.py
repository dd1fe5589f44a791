"""Finite set systems, finite Boolean algebras and minimal extensions.

Subsets of the ground set ``{0, ..., N-1}`` are packed into Python integers:
bit ``i`` is set iff ``i`` belongs to the subset.  A subalgebra of the
powerset is stored by its atoms, kept sorted by lowest set bit so that two
algebras are equal iff their atom lists are.

Whenever a function has to pick one witness among several, it returns the
one with the smallest integer encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InputError, ResourceError

__all__ = [
    "SubsetMask",
    "SetFamily",
    "FiniteAlgebra",
    "ExtensionVerdict",
    "ChainVerdict",
    "generate_algebra",
    "algebra_contains",
    "refine",
    "split_atoms",
    "is_minimal_extension",
    "minimal_by_definition",
    "count_intermediate_algebras",
    "verify_minimal_chain",
]


def _lowbit(x: int) -> int:
    return x & -x


def _bits_of(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


@dataclass(frozen=True)
class SubsetMask:
    """A subset of ``{0, ..., ground-1}``; ``bits`` holds membership."""

    ground: int
    bits: int = 0

    def __post_init__(self):
        if self.ground < 1:
            raise InputError(f"ground size must be positive, got {self.ground}")
        if self.bits < 0 or self.bits >> self.ground:
            raise InputError(f"mask {self.bits:#x} has members outside ground {self.ground}")

    @classmethod
    def from_indices(cls, ground: int, indices: Iterable[int]) -> SubsetMask:
        bits = 0
        for i in indices:
            if not 0 <= i < ground:
                raise InputError(f"index {i} outside ground {ground}")
            bits |= 1 << i
        return cls(ground, bits)

    @classmethod
    def full(cls, ground: int) -> SubsetMask:
        return cls(ground, (1 << ground) - 1)

    @classmethod
    def empty(cls, ground: int) -> SubsetMask:
        return cls(ground, 0)

    @property
    def universe(self) -> int:
        return (1 << self.ground) - 1

    def indices(self) -> list[int]:
        return _bits_of(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.ground and bool(self.bits >> i & 1)

    def _other(self, other: SubsetMask) -> int:
        if not isinstance(other, SubsetMask):
            return NotImplemented
        if other.ground != self.ground:
            raise InputError(f"ground size mismatch: {self.ground} vs {other.ground}")
        return other.bits

    def __and__(self, other):
        return SubsetMask(self.ground, self.bits & self._other(other))

    def __or__(self, other):
        return SubsetMask(self.ground, self.bits | self._other(other))

    def __xor__(self, other):
        return SubsetMask(self.ground, self.bits ^ self._other(other))

    def __sub__(self, other):
        return SubsetMask(self.ground, self.bits & ~self._other(other))

    def __invert__(self):
        return SubsetMask(self.ground, self.universe & ~self.bits)

    def complement(self) -> SubsetMask:
        return ~self

    def issubset(self, other: SubsetMask) -> bool:
        return self.bits & ~self._other(other) == 0

    def power(self, sign: int) -> SubsetMask:
        """``a^1 = a`` and ``a^0`` is the complement."""
        return self if sign else ~self

    def __repr__(self) -> str:
        return f"SubsetMask({self.ground}, {{{', '.join(map(str, self.indices()))}}})"


@dataclass(frozen=True)
class SetFamily:
    """An ordered family of subsets of a common ground set.

    Duplicates are allowed; positions matter for witnesses.
    """

    ground: int
    members: tuple[SubsetMask, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if self.ground < 1:
            raise InputError(f"ground size must be positive, got {self.ground}")
        for m in self.members:
            if not isinstance(m, SubsetMask):
                raise InputError(f"family member {m!r} is not a SubsetMask")
            if m.ground != self.ground:
                raise InputError(f"ground size mismatch: member over {m.ground}, family over {self.ground}")

    @classmethod
    def from_lists(cls, ground: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        return cls(ground, tuple(SubsetMask.from_indices(ground, s) for s in sets))

    @classmethod
    def from_bits(cls, ground: int, bits: Iterable[int]) -> SetFamily:
        return cls(ground, tuple(SubsetMask(ground, b) for b in bits))

    def bits(self) -> list[int]:
        return [m.bits for m in self.members]

    def subfamily(self, indices: Iterable[int]) -> SetFamily:
        return SetFamily(self.ground, tuple(self.members[i] for i in indices))

    def append(self, mask: SubsetMask) -> SetFamily:
        return SetFamily(self.ground, self.members + (mask,))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SubsetMask]:
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


@dataclass(frozen=True)
class FiniteAlgebra:
    """A subalgebra of the powerset of ``{0, ..., ground-1}``, by its atoms.

    The constructor validates the partition and sorts atoms canonically.
    """

    ground: int
    atoms: tuple[int, ...]

    def __post_init__(self):
        atoms = tuple(sorted(self.atoms, key=_lowbit))
        seen = 0
        for a in atoms:
            if a <= 0:
                raise InputError("atoms must be nonempty")
            if a & seen:
                raise InputError("atoms must be pairwise disjoint")
            seen |= a
        if seen != (1 << self.ground) - 1:
            raise InputError("atoms must cover the ground set")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def trivial(cls, ground: int) -> FiniteAlgebra:
        return cls(ground, ((1 << ground) - 1,))

    @classmethod
    def powerset(cls, ground: int) -> FiniteAlgebra:
        return cls(ground, tuple(1 << i for i in range(ground)))

    @classmethod
    def from_masks(cls, ground: int, atoms: Iterable[SubsetMask]) -> FiniteAlgebra:
        return cls(ground, tuple(a.bits for a in atoms))

    @property
    def universe(self) -> int:
        return (1 << self.ground) - 1

    def atom_masks(self) -> list[SubsetMask]:
        return [SubsetMask(self.ground, a) for a in self.atoms]

    def __len__(self) -> int:
        """Number of atoms."""
        return len(self.atoms)

    def contains_bits(self, x: int) -> bool:
        for a in self.atoms:
            common = a & x
            if common and common != a:
                return False
        return True

    def element(self, selector: int) -> int:
        """Union of the atoms picked out by the bits of ``selector``."""
        out = 0
        for j, a in enumerate(self.atoms):
            if selector >> j & 1:
                out |= a
        return out

    def elements(self, cap: int = 1 << 20) -> Iterator[int]:
        """Every element of the algebra, as bits; ``2**len(atoms)`` of them."""
        if 1 << len(self.atoms) > cap:
            raise ResourceError(f"algebra has 2^{len(self.atoms)} elements, cap is {cap}")
        for sel in range(1 << len(self.atoms)):
            yield self.element(sel)

    def inner(self, x: int) -> int:
        """Largest element contained in ``x``."""
        return sum(a for a in self.atoms if a & x == a)

    def outer(self, x: int) -> int:
        """Smallest element containing ``x``."""
        return sum(a for a in self.atoms if a & x)


def _check_ground(ground: int, x: SubsetMask) -> None:
    if x.ground != ground:
        raise InputError(f"ground size mismatch: {x.ground} vs {ground}")


def _refine_atoms(atoms: Sequence[int], x: int) -> list[int]:
    out = []
    for a in atoms:
        inside = a & x
        if inside and inside != a:
            out.append(inside)
            out.append(a ^ inside)
        else:
            out.append(a)
    return out


def generate_algebra(family: SetFamily) -> FiniteAlgebra:
    """Smallest subalgebra containing every member of ``family``.

    Its atoms are the nonempty cells of the partition cut out by the
    members; the empty family generates ``{0, 1}``.
    """
    atoms = [(1 << family.ground) - 1]
    for m in family.members:
        atoms = _refine_atoms(atoms, m.bits)
    return FiniteAlgebra(family.ground, tuple(atoms))


def algebra_contains(algebra: FiniteAlgebra, x: SubsetMask) -> bool:
    """True iff ``x`` is a union of atoms of ``algebra``."""
    _check_ground(algebra.ground, x)
    return algebra.contains_bits(x.bits)


def refine(algebra: FiniteAlgebra, x: SubsetMask) -> FiniteAlgebra:
    """The extension ``B(x)`` generated by ``algebra`` and ``x``."""
    _check_ground(algebra.ground, x)
    return FiniteAlgebra(algebra.ground, tuple(_refine_atoms(algebra.atoms, x.bits)))


def split_atoms(algebra: FiniteAlgebra, x: SubsetMask) -> list[SubsetMask]:
    """Atoms of ``algebra`` that ``x`` meets without containing."""
    _check_ground(algebra.ground, x)
    return [SubsetMask(algebra.ground, a) for a in algebra.atoms if 0 != a & x.bits != a]


@dataclass(frozen=True)
class ExtensionVerdict:
    """Outcome of a minimal-extension test.

    ``status`` is ``"minimal"``, ``"not_minimal"`` or ``"member"`` (``x`` is
    already in the algebra).  For ``not_minimal`` the witness ``b`` is an
    element with neither ``x & b`` nor ``x - b`` in the algebra.
    """

    status: str
    witness: SubsetMask | None = None

    @property
    def minimal(self) -> bool:
        return self.status == "minimal"


def is_minimal_extension(B: FiniteAlgebra, x: SubsetMask) -> ExtensionVerdict:
    """Decide whether ``B(x)`` is a minimal extension of ``B``.

    Uses the finite characterization: the extension is minimal iff ``x``
    splits exactly one atom of ``B``.  When at least two atoms are split,
    any one split atom ``b`` is a witness (``x & b`` and ``x - b`` both cut
    an atom); the one with the smallest encoding is the least witness
    overall, since every witness contains some split atom.
    """
    split = split_atoms(B, x)
    if not split:
        return ExtensionVerdict("member")
    if len(split) == 1:
        return ExtensionVerdict("minimal")
    return ExtensionVerdict("not_minimal", min(split, key=lambda s: s.bits))


def minimal_by_definition(B: FiniteAlgebra, x: SubsetMask, cap: int = 1 << 16) -> ExtensionVerdict:
    """Same verdict as :func:`is_minimal_extension`, by quantifying over all of ``B``.

    For every ``b`` in ``B`` checks that ``x & b`` or ``x & ~b`` lies in
    ``B``.  Exponential in the number of atoms; kept as an oracle.
    """
    _check_ground(B.ground, x)
    if B.contains_bits(x.bits):
        return ExtensionVerdict("member")
    full = B.universe
    witness = None
    for b in B.elements(cap):
        if not B.contains_bits(x.bits & b) and not B.contains_bits(x.bits & full & ~b):
            if witness is None or b < witness:
                witness = b
    if witness is None:
        return ExtensionVerdict("minimal")
    return ExtensionVerdict("not_minimal", SubsetMask(B.ground, witness))


def _set_partitions(items: Sequence[int], compatible) -> Iterator[list[list[int]]]:
    """Set partitions of ``items`` whose blocks only join compatible items."""
    blocks: list[list[int]] = []

    def place(k):
        if k == len(items):
            yield [list(b) for b in blocks]
            return
        item = items[k]
        for block in blocks:
            if compatible(block[0], item):
                block.append(item)
                yield from place(k + 1)
                block.pop()
        blocks.append([item])
        yield from place(k + 1)
        blocks.pop()

    yield from place(0)


def count_intermediate_algebras(B: FiniteAlgebra, x: SubsetMask, cap: int = 16) -> int:
    """Number of algebras ``C`` with ``B <= C <= B(x)``, both ends included.

    Enumerates the partitions of the atoms of ``B(x)`` into blocks that stay
    inside one atom of ``B``, builds each candidate algebra and checks that
    it contains ``B``.  The extension is minimal iff the count is 2.

    Raises
    ------
    InputError
        If ``x`` already belongs to ``B``.
    ResourceError
        If ``B(x)`` has more than ``cap`` atoms.
    """
    _check_ground(B.ground, x)
    if B.contains_bits(x.bits):
        raise InputError("x already belongs to B; B(x) = B")
    ext = refine(B, x)
    if len(ext.atoms) > cap:
        raise ResourceError(f"B(x) has {len(ext.atoms)} atoms, cap is {cap}")
    parent = {}
    for a in ext.atoms:
        parent[a] = next(p for p in B.atoms if p & a)
    count = 0
    for blocks in _set_partitions(ext.atoms, lambda u, v: parent[u] == parent[v]):
        candidate = FiniteAlgebra(B.ground, tuple(sum(b) for b in blocks))
        if all(candidate.contains_bits(p) for p in B.atoms):
            count += 1
    return count


@dataclass(frozen=True)
class ChainVerdict:
    """``ok`` or the first failing generator position with its witness."""

    ok: bool
    index: int | None = None
    witness: SubsetMask | None = None


def verify_minimal_chain(gens: SetFamily) -> ChainVerdict:
    """Check that adding ``gens`` one at a time only makes minimal extensions.

    Generators already in the current algebra are skipped.
    """
    current = FiniteAlgebra.trivial(gens.ground)
    for index, g in enumerate(gens.members):
        verdict = is_minimal_extension(current, g)
        if verdict.status == "member":
            continue
        if verdict.status == "not_minimal":
            return ChainVerdict(False, index, verdict.witness)
        current = refine(current, g)
    return ChainVerdict(True)
