"""Boolean polynomials over set families, in prefix notation.

    >>> p = parse_polynomial("(or (and x0 (not x1)) (and (not x0) x1))")
    >>> p.arity
    2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .errors import InputError
from .setsys import SubsetMask

__all__ = ["BooleanPolynomial", "parse_polynomial", "INTERSECTION", "UNION", "XOR", "MEET_JOIN"]

# Expression nodes: ("var", i) | ("const", 0 or 1) | ("not", e) | ("and", e, ...) | ("or", e, ...)
Node = Union[tuple]

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _render(node) -> str:
    op = node[0]
    if op == "var":
        return f"x{node[1]}"
    if op == "const":
        return str(node[1])
    return "(" + " ".join([op] + [_render(c) for c in node[1:]]) + ")"


def _max_var(node) -> int:
    if node[0] == "var":
        return node[1]
    if node[0] == "const":
        return -1
    return max(_max_var(c) for c in node[1:])


def _compile(node, universe: int) -> Callable[[Sequence[int]], int]:
    op = node[0]
    if op == "var":
        i = node[1]
        return lambda xs: xs[i]
    if op == "const":
        value = universe if node[1] else 0
        return lambda xs: value
    kids = [_compile(c, universe) for c in node[1:]]
    if op == "not":
        (k,) = kids
        return lambda xs: universe & ~k(xs)
    if op == "and":
        def conj(xs):
            out = universe
            for k in kids:
                out &= k(xs)
            return out
        return conj
    def disj(xs):
        out = 0
        for k in kids:
            out |= k(xs)
        return out
    return disj


@dataclass(frozen=True)
class BooleanPolynomial:
    """An ``arity``-ary Boolean polynomial given by an expression tree."""

    arity: int
    tree: tuple

    def __post_init__(self):
        if self.arity < 1:
            raise InputError("arity must be positive")
        if _max_var(self.tree) >= self.arity:
            raise InputError(f"variable x{_max_var(self.tree)} out of range for arity {self.arity}")

    def compile(self, ground: int) -> Callable[[Sequence[int]], int]:
        """Evaluator on raw bit masks over ``ground`` points."""
        return _compile(self.tree, (1 << ground) - 1)

    def __call__(self, *args: SubsetMask) -> SubsetMask:
        if len(args) != self.arity:
            raise InputError(f"expected {self.arity} arguments, got {len(args)}")
        ground = args[0].ground
        if any(a.ground != ground for a in args):
            raise InputError("ground size mismatch among arguments")
        return SubsetMask(ground, self.compile(ground)([a.bits for a in args]))

    def __str__(self) -> str:
        return _render(self.tree)


def parse_polynomial(text: str, arity: int | None = None) -> BooleanPolynomial:
    """Parse ``"(and x0 (not x1))"``-style prefix notation.

    Operators are ``and``, ``or`` (any number of operands), ``not`` and
    ``xor`` (binary, expanded into and/or/not); constants are ``0`` and
    ``1``; variables are ``x0, x1, ...``.  The arity defaults to one more
    than the largest variable index.
    """
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise InputError(f"cannot tokenize polynomial {text!r}")
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise InputError("unexpected end of polynomial")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise InputError("unexpected end of polynomial")
            op = tokens[pos]
            pos += 1
            args = []
            while pos < len(tokens) and tokens[pos] != ")":
                args.append(expr())
            if pos >= len(tokens):
                raise InputError("missing ')'")
            pos += 1
            if op == "not":
                if len(args) != 1:
                    raise InputError("'not' takes one operand")
                return ("not", args[0])
            if op in ("and", "or"):
                if not args:
                    raise InputError(f"'{op}' needs operands")
                return (op, *args)
            if op == "xor":
                if len(args) != 2:
                    raise InputError("'xor' takes two operands")
                a, b = args
                return ("or", ("and", a, ("not", b)), ("and", ("not", a), b))
            raise InputError(f"unknown operator {op!r}")
        if tok == ")":
            raise InputError("unexpected ')'")
        if tok in ("0", "1"):
            return ("const", int(tok))
        m = re.fullmatch(r"x(\d+)", tok)
        if not m:
            raise InputError(f"unknown token {tok!r}")
        return ("var", int(m.group(1)))

    tree = expr()
    if pos != len(tokens):
        raise InputError("trailing tokens after polynomial")
    if arity is None:
        arity = max(_max_var(tree) + 1, 1)
    return BooleanPolynomial(arity, tree)


INTERSECTION = parse_polynomial("(and x0 x1)")
UNION = parse_polynomial("(or x0 x1)")
XOR = parse_polynomial("(xor x0 x1)")
MEET_JOIN = parse_polynomial("(or (and x0 x1) x2)")
