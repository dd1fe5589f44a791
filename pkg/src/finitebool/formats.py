"""JSON wire formats.

Set family::

    {"ground": 4, "sets": [[0, 1], "0x6"]}

Members are index lists or little-endian hex masks (bit ``i`` = point ``i``).

Pattern family::

    {"coords": 3, "patterns": ["010", "110"]}

Character ``j`` of a pattern is coordinate ``j``.

Measure::

    {"algebra": <set family of atoms>, "weights": ["1/2", "1/4", "1/4"]}

Cantor parameters::

    {"m": 36, "phi": [[0, 3], [3, 0], ...], "x": "0110..."}

``phi`` lists ``[t, phi(t)]`` pairs; missing elements of ``T`` map to
themselves.  Cylinders are written ``{"dom": [i, ...], "val": "bits"}`` with
one value character per domain index.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .cantor import CantorParams, Cylinder, CylinderUnion
from .errors import InputError
from .independence import PatternFamily
from .measures import Measure
from .setsys import FiniteAlgebra, SetFamily, SubsetMask

__all__ = [
    "mask_from_json",
    "family_from_json",
    "family_to_json",
    "patterns_from_json",
    "patterns_to_json",
    "measure_from_json",
    "measure_to_json",
    "params_from_json",
    "params_to_json",
    "cylinder_to_json",
    "union_to_json",
    "fraction_str",
]


def _require(obj: Any, key: str, kind) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InputError(f"field {key!r} has the wrong type")
    return value


def mask_from_json(ground: int, value: Any) -> SubsetMask:
    if isinstance(value, str):
        if not value.lower().startswith("0x"):
            raise InputError(f"mask string {value!r} must be hex with a 0x prefix")
        try:
            return SubsetMask(ground, int(value, 16))
        except ValueError as exc:
            raise InputError(f"bad hex mask {value!r}") from exc
    if isinstance(value, list) and all(isinstance(i, int) and not isinstance(i, bool) for i in value):
        return SubsetMask.from_indices(ground, value)
    raise InputError(f"cannot read mask {value!r}")


def family_from_json(obj: Any) -> SetFamily:
    ground = _require(obj, "ground", int)
    sets = _require(obj, "sets", list)
    if ground < 1:
        raise InputError("ground must be positive")
    return SetFamily(ground, tuple(mask_from_json(ground, s) for s in sets))


def family_to_json(family: SetFamily) -> dict:
    return {"ground": family.ground, "sets": [m.indices() for m in family.members]}


def patterns_from_json(obj: Any) -> PatternFamily:
    coords = _require(obj, "coords", int)
    pats = _require(obj, "patterns", list)
    if not all(isinstance(p, str) for p in pats):
        raise InputError("patterns must be bit strings")
    return PatternFamily.from_strings(coords, pats)


def patterns_to_json(C: PatternFamily) -> dict:
    return {"coords": C.coords, "patterns": C.strings()}


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def measure_from_json(obj: Any) -> Measure:
    fam = family_from_json(_require(obj, "algebra", dict))
    weights = _require(obj, "weights", list)
    try:
        ws = tuple(Fraction(w) for w in weights)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight: {exc}") from exc
    return Measure(FiniteAlgebra(fam.ground, tuple(fam.bits())), ws)


def measure_to_json(mu: Measure) -> dict:
    atoms = SetFamily.from_bits(mu.algebra.ground, mu.algebra.atoms)
    return {"algebra": family_to_json(atoms), "weights": [fraction_str(w) for w in mu.weights]}


def _bitstring(value: int, width: int) -> str:
    return "".join("1" if value >> i & 1 else "0" for i in range(width))


def params_from_json(obj: Any) -> CantorParams:
    m = _require(obj, "m", int)
    xs = _require(obj, "x", str)
    if len(xs) != m or set(xs) - {"0", "1"}:
        raise InputError("x must be a bit string of length m")
    x = sum(1 << i for i, ch in enumerate(xs) if ch == "1")
    phi = {t: t for t in range(0, m, 3)}
    for pair in obj.get("phi", []):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) for v in pair)):
            raise InputError(f"bad phi pair {pair!r}")
        if pair[0] not in phi:
            raise InputError(f"{pair[0]} is not in T below {m}")
        phi[pair[0]] = pair[1]
    return CantorParams(m, tuple(phi[t] for t in range(0, m, 3)), x)


def params_to_json(par: CantorParams) -> dict:
    return {"m": par.m, "phi": [[t, par.image(t)] for t in par.T], "x": _bitstring(par.x, par.m)}


def cylinder_to_json(c: Cylinder) -> dict:
    dom = c.indices()
    return {"dom": dom, "val": "".join("1" if c.values >> i & 1 else "0" for i in dom)}


def union_to_json(u: CylinderUnion) -> dict:
    return {"m": u.m, "cylinders": [cylinder_to_json(c) for c in u.cylinders]}
