"""Exact finitely additive probability measures on finite algebras.

A :class:`Measure` puts a nonnegative :class:`~fractions.Fraction` on every
atom of a :class:`~finitebool.setsys.FiniteAlgebra`; weights sum to exactly 1
and the measure of an element is the sum over the atoms it contains.  No
floating point is used anywhere, so separation bounds and defects compare
exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, PreconditionFailed, ResourceError
from .independence import IndependenceWitness, is_independent, max_independent
from .setsys import FiniteAlgebra, SetFamily, SubsetMask, generate_algebra

__all__ = [
    "Measure",
    "ProbeReport",
    "AtomVerdict",
    "measure_of",
    "product_measure_on_independent",
    "min_pairwise_separation",
    "separated_independence_probe",
    "nonatomic_threshold",
    "fine_partition",
    "type_defect",
    "determination_defect",
    "i1_atom_check",
]


@dataclass(frozen=True)
class Measure:
    algebra: FiniteAlgebra
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) != len(self.algebra.atoms):
            raise InputError(f"{len(weights)} weights for {len(self.algebra.atoms)} atoms")
        if any(w < 0 for w in weights):
            raise InputError("weights must be nonnegative")
        if sum(weights) != 1:
            raise InputError(f"weights sum to {sum(weights)}, not 1")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, algebra: FiniteAlgebra) -> Measure:
        k = len(algebra.atoms)
        return cls(algebra, (Fraction(1, k),) * k)

    @classmethod
    def counting(cls, algebra: FiniteAlgebra) -> Measure:
        """Each atom weighted by its share of ground points."""
        return cls(algebra, tuple(Fraction(bin(a).count("1"), algebra.ground) for a in algebra.atoms))

    def of_bits(self, x: int) -> Fraction:
        total = Fraction(0)
        for a, w in zip(self.algebra.atoms, self.weights):
            common = a & x
            if common == a:
                total += w
            elif common:
                raise InputError("set does not belong to the measure's algebra")
        return total


def measure_of(mu: Measure, a: SubsetMask) -> Fraction:
    """Sum of the weights of the atoms inside ``a``."""
    if a.ground != mu.algebra.ground:
        raise InputError(f"ground size mismatch: {a.ground} vs {mu.algebra.ground}")
    return mu.of_bits(a.bits)


def product_measure_on_independent(family: SetFamily, cap: int = 20) -> Measure:
    """Weight ``2^-k`` on every sign cell of an independent family of size ``k``.

    Under this measure every member has measure 1/2, the members are
    stochastically independent and any two of them are 1/2 apart.
    """
    k = len(family)
    if k > cap:
        raise ResourceError(f"family of size {k} exceeds cap {cap}")
    verdict = is_independent(family, cap=cap)
    if not verdict:
        raise PreconditionFailed("family is not independent", verdict.missing_cell)
    algebra = generate_algebra(family)
    # atoms of an independent family's algebra are its 2^k cells
    return Measure(algebra, (Fraction(1, 1 << k),) * len(algebra.atoms))


def _members_in(mu: Measure, family: SetFamily) -> None:
    if family.ground != mu.algebra.ground:
        raise InputError("ground size mismatch between family and measure")
    for i, m in enumerate(family.members):
        if not mu.algebra.contains_bits(m.bits):
            raise InputError(f"member {i} is not in the measure's algebra")


def min_pairwise_separation(mu: Measure, family: SetFamily) -> Fraction:
    """Minimum of ``mu(a ^ b)`` over unordered pairs of positions."""
    if len(family) < 2:
        raise InputError("need at least two members")
    _members_in(mu, family)
    bits = family.bits()
    return min(mu.of_bits(a ^ b) for a, b in itertools.combinations(bits, 2))


@dataclass(frozen=True)
class ProbeReport:
    eps: Fraction
    min_separation: Fraction
    size: int
    witness: IndependenceWitness


def separated_independence_probe(mu: Measure, family: SetFamily, eps: Fraction) -> ProbeReport:
    """Largest independent subfamily of an ``eps``-separated family.

    Raises
    ------
    PreconditionFailed
        If some pair is closer than ``eps``; the witness is the first such
        pair of positions.
    """
    eps = Fraction(eps)
    _members_in(mu, family)
    bits = family.bits()
    for (i, a), (j, b) in itertools.combinations(enumerate(bits), 2):
        if mu.of_bits(a ^ b) < eps:
            raise PreconditionFailed(f"members {i} and {j} are closer than {eps}", (i, j))
    sep = min_pairwise_separation(mu, family) if len(family) >= 2 else Fraction(1)
    size, witness = max_independent(family)
    return ProbeReport(eps, sep, size, witness)


def nonatomic_threshold(mu: Measure) -> Fraction:
    """Largest atom weight.

    Partitions of the algebra into pieces all lighter than ``eps`` exist
    exactly when ``eps`` exceeds this value.
    """
    return max(mu.weights)


def fine_partition(mu: Measure, eps: Fraction) -> list[SubsetMask] | None:
    """A partition into elements of measure ``< eps``, or None if none exists."""
    if eps > nonatomic_threshold(mu):
        return mu.algebra.atom_masks()
    return None


def _sub_algebra(mu: Measure, sub: SetFamily) -> FiniteAlgebra:
    _members_in(mu, sub)
    return generate_algebra(sub)


def _blocks(mu: Measure, sub: SetFamily, cap: int) -> list[list[Fraction]]:
    """Weights of the atoms of ``mu`` grouped by the atom of ``<sub>`` holding them."""
    coarse = _sub_algebra(mu, sub)
    if 1 << len(coarse.atoms) > cap:
        raise ResourceError(f"<sub> has 2^{len(coarse.atoms)} elements, cap is {cap}")
    groups = []
    for s in coarse.atoms:
        ws = [w for a, w in zip(mu.algebra.atoms, mu.weights) if a & s]
        if 1 << len(ws) > cap:
            raise ResourceError(f"an atom of <sub> holds 2^{len(ws)} elements, cap is {cap}")
        groups.append(ws)
    return groups


def type_defect(mu: Measure, sub: SetFamily, cap: int = 1 << 20) -> Fraction:
    """``max_a min_b mu(a ^ b)`` over ``a`` in the algebra and ``b`` in ``<sub>``.

    The inner minimum splits over the atoms ``s`` of ``<sub>``: ``b`` takes
    ``s`` or leaves it, costing ``min(mu(a & s), mu(s - a))``.  The outer
    maximum then splits too, one subset-sum per atom of ``<sub>``.
    """
    total = Fraction(0)
    for ws in _blocks(mu, sub, cap):
        whole = sum(ws)
        best = Fraction(0)
        for r in range(len(ws) + 1):
            for pick in itertools.combinations(ws, r):
                part = sum(pick, Fraction(0))
                best = max(best, min(part, whole - part))
        total += best
    return total


def determination_defect(mu: Measure, sub: SetFamily, cap: int = 1 << 20) -> Fraction:
    """``max_a (mu(a) - max{mu(c) : c in <sub>, c <= a})``.

    The best inner approximant is the union of the atoms of ``<sub>``
    inside ``a``, so the gap is what ``a`` holds of the atoms it only
    partly covers: at most ``mu(s) - min weight in s`` for an atom ``s`` of
    ``<sub>`` made of two or more atoms of the measure.
    """
    total = Fraction(0)
    for ws in _blocks(mu, sub, cap):
        if len(ws) > 1:
            total += sum(ws) - min(ws)
    return total


@dataclass(frozen=True)
class AtomVerdict:
    """``atom``, ``g_in_algebra`` or ``violated``, with the bracketing pair."""

    status: str
    inner: SubsetMask
    outer: SubsetMask


def i1_atom_check(G0: SetFamily, g: SubsetMask) -> AtomVerdict:
    """Check that ``outer - inner`` is a single atom of ``<G0>``.

    ``inner`` is the largest element of ``<G0>`` inside ``g`` and ``outer``
    the smallest one containing it.  Requires that ``G0`` plus ``g`` has no
    independent pair.
    """
    if g.ground != G0.ground:
        raise InputError(f"ground size mismatch: {g.ground} vs {G0.ground}")
    size, wit = max_independent(G0.append(g), cap=2)
    if size >= 2:
        raise PreconditionFailed("family contains an independent pair", wit.indices)
    B = generate_algebra(G0)
    inner = SubsetMask(B.ground, B.inner(g.bits))
    outer = SubsetMask(B.ground, B.outer(g.bits))
    if inner == outer:
        return AtomVerdict("g_in_algebra", inner, outer)
    gap = (outer - inner).bits
    status = "atom" if gap in B.atoms else "violated"
    return AtomVerdict(status, inner, outer)


def weights_from_strings(values: Iterable[str]) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def weights_to_strings(weights: Sequence[Fraction]) -> list[str]:
    return [f"{w.numerator}/{w.denominator}" for w in weights]
