"""Command line front end: every result is a JSON report on stdout.

Exit codes: 0 success, 1 property violated (witness in the report),
2 input or format error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .cantor import (
    build_A,
    build_separated_family,
    sigma_n,
    union_measure,
    verify_separation_bound,
)
from .errors import InputError, PreconditionFailed, ResourceError
from .formats import (
    cylinder_to_json,
    family_from_json,
    family_to_json,
    fraction_str,
    mask_from_json,
    measure_from_json,
    measure_to_json,
    params_from_json,
    params_to_json,
    patterns_from_json,
    patterns_to_json,
    union_to_json,
)
from .harness import check_sauer_exhaustive, verify_suite
from .independence import (
    check_poly_bound,
    i_threshold,
    is_independent,
    max_independent,
    poly_image,
    sauer_bound,
    sauer_shelah_extract,
    shattered,
    transpose,
    vc_dimension,
)
from .measures import (
    determination_defect,
    i1_atom_check,
    measure_of,
    min_pairwise_separation,
    nonatomic_threshold,
    product_measure_on_independent,
    separated_independence_probe,
    type_defect,
)
from .polynomial import parse_polynomial
from .setsys import generate_algebra, is_minimal_extension, verify_minimal_chain


class _Exit(Exception):
    def __init__(self, code: int, report: dict):
        super().__init__(code)
        self.code = code
        self.report = report


def _load(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Exit(2, {"error": "malformed JSON", "message": exc.msg, "line": exc.lineno,
                        "column": exc.colno, "position": exc.pos}) from exc


def _mask_arg(ground: int, text: str):
    text = text.strip()
    if text.lower().startswith("0x"):
        return mask_from_json(ground, text)
    if text.startswith("["):
        return mask_from_json(ground, json.loads(text))
    try:
        return mask_from_json(ground, [int(t) for t in text.split(",") if t.strip()])
    except ValueError as exc:
        raise InputError(f"cannot read set {text!r}") from exc


def _verdict(report: dict, ok: bool) -> dict:
    if not ok:
        raise _Exit(1, report)
    return report


# -- handlers -----------------------------------------------------------------


def _algebra_atoms(args):
    alg = generate_algebra(family_from_json(_load(args.input)))
    return {"ground": alg.ground, "atoms": [m.indices() for m in alg.atom_masks()]}


def _algebra_minimal_ext(args):
    fam = family_from_json(_load(args.input))
    x = _mask_arg(fam.ground, args.x)
    verdict = is_minimal_extension(generate_algebra(fam), x)
    report = {"x": x.indices(), "verdict": verdict.status}
    if verdict.witness is not None:
        report["witness"] = verdict.witness.indices()
    return _verdict(report, verdict.status != "not_minimal")


def _algebra_chain(args):
    verdict = verify_minimal_chain(family_from_json(_load(args.input)))
    if verdict.ok:
        return {"verdict": "ok"}
    return _verdict({"verdict": "fails_at", "index": verdict.index, "witness": verdict.witness.indices()}, False)


def _indep_test(args):
    verdict = is_independent(family_from_json(_load(args.input)))
    if verdict:
        return {"verdict": "independent"}
    return _verdict({"verdict": "dependent", "missing_cell": list(verdict.missing_cell)}, False)


def _indep_max(args):
    fam = family_from_json(_load(args.input))
    size, wit = max_independent(fam, cap=args.cap)
    return {"size": size, "indices": list(wit.indices), "witness": family_to_json(fam.subfamily(wit.indices))}


def _indep_transpose(args):
    return patterns_to_json(transpose(family_from_json(_load(args.input))))


def _sauer_extract(args):
    C = patterns_from_json(_load(args.input))
    sets = sauer_shelah_extract(C)
    return {"size": len(C), "vc": vc_dimension(C), "sets": [list(S) for S in sets]}


def _sauer_check(args):
    C = patterns_from_json(_load(args.input))
    bound = sauer_bound(C.coords, args.n)
    report = {"size": len(C), "bound": bound, "n": args.n}
    if len(C) <= bound:
        report["verdict"] = "not_applicable"
        return report
    found = next((S for S in sauer_shelah_extract(C) if len(S) >= args.n), None)
    if found is None:
        report["verdict"] = "violated"
        return _verdict(report, False)
    report.update(verdict="holds", shattered=list(found[: args.n]))
    report["check"] = shattered(C, found[: args.n])
    return report


def _sauer_exhaustive(args):
    result = check_sauer_exhaustive(args.t)
    return _verdict(result.to_json(), result.passed)


def _itable(args):
    if args.n is not None and args.r is not None:
        return {"n": args.n, "r": args.r, "I": i_threshold(args.n, args.r)}
    return {"table": {f"{n},{r}": i_threshold(n, r) for n in range(1, 6) for r in range(1, 5)}}


def _poly_image(args):
    fam = family_from_json(_load(args.input))
    image = poly_image(fam, parse_polynomial(args.p, args.arity))
    return family_to_json(image)


def _poly_verify(args):
    fam = family_from_json(_load(args.input))
    p = parse_polynomial(args.p, args.arity)
    verdict = check_poly_bound(fam, args.n, p)
    report = {"verdict": verdict.status, "n": args.n, "polynomial": str(p)}
    if verdict.threshold is not None:
        report.update(I=verdict.threshold, image_size=verdict.image_size, max_independent=verdict.max_independent)
    if verdict.witness is not None:
        report["witness"] = family_to_json(verdict.witness)
    if verdict.status == "precondition_failed":
        raise _Exit(2, report)
    return _verdict(report, verdict.holds)


def _measure_of(args):
    mu = measure_from_json(_load(args.input))
    return {"value": fraction_str(measure_of(mu, _mask_arg(mu.algebra.ground, args.a)))}


def _measure_sep(args):
    mu = measure_from_json(_load(args.input))
    fam = family_from_json(_load(args.family))
    if args.eps is None:
        return {"min_separation": fraction_str(min_pairwise_separation(mu, fam))}
    report = separated_independence_probe(mu, fam, Fraction(args.eps))
    return {"eps": fraction_str(report.eps), "min_separation": fraction_str(report.min_separation),
            "independent_size": report.size, "indices": list(report.witness.indices)}


def _measure_product(args):
    return measure_to_json(product_measure_on_independent(family_from_json(_load(args.input))))


def _measure_defects(args):
    mu = measure_from_json(_load(args.input))
    sub = family_from_json(_load(args.sub))
    return {"nonatomic_threshold": fraction_str(nonatomic_threshold(mu)),
            "type_defect": fraction_str(type_defect(mu, sub)),
            "determination_defect": fraction_str(determination_defect(mu, sub))}


def _measure_i1_atom(args):
    fam = family_from_json(_load(args.input))
    verdict = i1_atom_check(fam, _mask_arg(fam.ground, args.g))
    report = {"verdict": verdict.status, "inner": verdict.inner.indices(), "outer": verdict.outer.indices()}
    return _verdict(report, verdict.status != "violated")


def _cantor_sigma(args):
    par = params_from_json(_load(args.input))
    c = sigma_n(par, args.n)
    return {"n": args.n, "cylinder": cylinder_to_json(c), "measure": fraction_str(c.measure)}


def _cantor_build(args):
    par = params_from_json(_load(args.input))
    u = build_A(par, args.n_max)
    return {"union": union_to_json(u), "measure": fraction_str(union_measure(u))}


def _cantor_separate(args):
    fam = build_separated_family(args.p, args.count, args.m)
    return {"p": args.p, "family": [params_to_json(par) for par in fam]}


def _cantor_verify(args):
    fam = build_separated_family(args.p, args.count, args.m)
    report = verify_separation_bound(args.p, fam, args.n_max)
    out = {"p": args.p, "bound": fraction_str(report.bound), "holds": report.holds,
           "matrix": [[None if e is None else fraction_str(e) for e in row] for row in report.matrix]}
    if not report.holds:
        i, j = report.worst
        out["witness"] = {"pair": [i, j], "params": [params_to_json(fam[i]), params_to_json(fam[j])]}
    return _verdict(out, report.holds)


def _verify(args):
    report = verify_suite(args.seed, args.profile)
    out = report.to_json(timing=not args.no_timing)
    return _verdict(out, report.ok)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finitebool", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    parser.set_defaults(pretty=False)
    sub = parser.add_subparsers(dest="command", required=True)

    names = {}

    def group(name):
        actions = sub.add_parser(name).add_subparsers(dest="action", required=True)
        names[id(actions)] = name
        return actions

    def leaf(actions, name, handler, needs_input=True, help=None):
        p = actions.add_parser(name, help=help)
        if needs_input:
            p.add_argument("--in", dest="input", default="-", help="input JSON file, '-' for stdin")
        p.set_defaults(handler=handler, name=f"{names[id(actions)]} {name}")
        return p

    algebra = group("algebra")
    leaf(algebra, "atoms", _algebra_atoms, help="atoms of the generated algebra")
    leaf(algebra, "minimal-ext", _algebra_minimal_ext).add_argument("--x", required=True)
    leaf(algebra, "chain", _algebra_chain)

    indep = group("indep")
    leaf(indep, "test", _indep_test)
    leaf(indep, "max", _indep_max).add_argument("--cap", type=int)
    leaf(indep, "transpose", _indep_transpose)

    sauer = group("sauer")
    leaf(sauer, "extract", _sauer_extract)
    leaf(sauer, "check", _sauer_check).add_argument("--n", type=int, required=True)
    leaf(sauer, "exhaustive", _sauer_exhaustive, needs_input=False).add_argument("--t", type=int, default=4)

    itable = sub.add_parser("itable", help="the I(n, r) threshold")
    itable.add_argument("--n", type=int)
    itable.add_argument("--r", type=int)
    itable.set_defaults(handler=_itable, name="itable")

    poly = group("poly")
    for name, handler in (("image", _poly_image), ("verify", _poly_verify)):
        p = leaf(poly, name, handler)
        p.add_argument("--p", required=True, help='prefix polynomial, e.g. "(and x0 x1)"')
        p.add_argument("--arity", type=int)
        if name == "verify":
            p.add_argument("--n", type=int, required=True)

    measure = group("measure")
    leaf(measure, "of", _measure_of).add_argument("--a", required=True)
    sep = leaf(measure, "sep", _measure_sep)
    sep.add_argument("--family", required=True)
    sep.add_argument("--eps")
    leaf(measure, "product", _measure_product)
    leaf(measure, "defects", _measure_defects).add_argument("--sub", required=True)
    leaf(measure, "i1-atom", _measure_i1_atom).add_argument("--g", required=True)

    cantor = group("cantor")
    leaf(cantor, "sigma", _cantor_sigma).add_argument("--n", type=int, required=True)
    leaf(cantor, "build", _cantor_build).add_argument("--n-max", type=int, required=True)
    for name, handler in (("separate", _cantor_separate), ("verify", _cantor_verify)):
        p = leaf(cantor, name, handler, needs_input=False)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--count", type=int, default=5)
        p.add_argument("--m", type=int, default=36)
        if name == "verify":
            p.add_argument("--n-max", type=int, default=5)

    verify = sub.add_parser("verify", help="run every acceptance and invariant check")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--profile", choices=("quick", "full"), default="quick")
    verify.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")
    verify.set_defaults(handler=_verify, name="verify")
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    """Parse ``argv``, print the JSON report and return the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        report, code = args.handler(args), 0
    except _Exit as exc:
        report, code = exc.report, exc.code
    except PreconditionFailed as exc:
        report = {"error": "precondition failed", "message": str(exc), "witness": _jsonable(exc.witness)}
        code = 2
    except InputError as exc:
        report, code = {"error": "input error", "message": str(exc)}, 2
    except ResourceError as exc:
        report, code = {"error": "resource cap exceeded", "message": str(exc)}, 3
    report = {"command": args.name, "version": __version__, **report}
    json.dump(report, out, indent=2 if args.pretty else None, sort_keys=False)
    out.write("\n")
    return code


def _jsonable(value):
    if isinstance(value, tuple):
        return list(value)
    return value


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
