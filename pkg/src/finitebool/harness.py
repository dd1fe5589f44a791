"""Deterministic verification harness.

Each ``check_*`` function runs one property suite and returns a
:class:`CheckResult`; failures carry the first failing instance in a form
the CLI can read back.  :func:`verify_suite` runs them all under one seed.

Randomized checks draw trial ``t`` of check number ``c`` from
``stream(seed, (c << 32) | t)``, so every trial is reproducible on its own.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable

from . import __version__
from .cantor import (
    CantorParams,
    build_A,
    build_separated_family,
    convergence_index,
    diff_measure,
    diff_measure_incl_excl,
    separation_bound,
    sigma_n,
    union_measure,
    union_measure_incl_excl,
    verify_separation_bound,
)
from .errors import PreconditionFailed
from .formats import family_to_json, fraction_str, params_to_json, patterns_to_json
from .independence import (
    PatternFamily,
    check_poly_bound,
    dual_transfer,
    i_threshold,
    is_independent,
    max_independent,
    sauer_bound,
    sauer_shelah_extract,
    shattered,
    transfer_family,
    transpose,
    vc_dimension,
)
from .measures import (
    Measure,
    determination_defect,
    i1_atom_check,
    measure_of,
    product_measure_on_independent,
    type_defect,
)
from .polynomial import INTERSECTION, MEET_JOIN, UNION, XOR
from .random_families import (
    bounded_independence_family,
    independent_family,
    laminar_family,
    random_family,
    random_mask,
    random_partition,
    stream,
)
from .setsys import (
    FiniteAlgebra,
    SetFamily,
    SubsetMask,
    count_intermediate_algebras,
    generate_algebra,
    is_minimal_extension,
    minimal_by_definition,
    verify_minimal_chain,
)

__all__ = ["CheckResult", "RunReport", "CHECKS", "verify_suite", "PROFILES"]

POLYNOMIALS = {"x&y": INTERSECTION, "x|y": UNION, "x^y": XOR, "(x&y)|z": MEET_JOIN}


@dataclass
class CheckResult:
    name: str
    status: str
    detail: dict = field(default_factory=dict)
    witness: Any = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "detail": self.detail, "seconds": round(self.seconds, 3)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class _Failure(Exception):
    def __init__(self, witness):
        super().__init__("check failed")
        self.witness = witness


def _run(name: str, body: Callable[[], dict]) -> CheckResult:
    start = time.perf_counter()
    try:
        detail = body()
        status, witness = "pass", None
    except _Failure as failure:
        detail, status, witness = {}, "fail", failure.witness
    return CheckResult(name, status, detail, witness, time.perf_counter() - start)


def _rng(seed: int, check: int, trial: int):
    return stream(seed, (check << 32) | trial)


def _perm(rng, family: SetFamily) -> SetFamily:
    return family.subfamily([int(i) for i in rng.permutation(len(family))])


# -- acceptance criteria ------------------------------------------------------


def check_i_table() -> CheckResult:
    """I(1,r)=1 for r<=6, I(2,1)=2, I(2,2)=3, I(3,2)=7, each minimal."""
    expected = {(1, r): 1 for r in range(1, 7)}
    expected.update({(2, 1): 2, (2, 2): 3, (3, 2): 7})

    def body():
        table = {}
        for (n, r), want in expected.items():
            s = i_threshold(n, r)
            lhs = lambda s: sum(comb(r * s, i) for i in range(n))
            ok = s == want and lhs(s) < 2**s and (s == 0 or lhs(s - 1) >= 2 ** (s - 1))
            if not ok:
                raise _Failure({"n": n, "r": r, "got": s, "want": want})
            table[f"I({n},{r})"] = s
        return table

    return _run("i_table", body)


def check_sauer_exhaustive(t: int = 4) -> CheckResult:
    """Every nonempty C in 2^T, |T| = t: Sauer-Shelah and the extraction claim."""

    def body():
        cube = list(range(1 << t))
        families = 0
        for code in range(1, 1 << len(cube)):
            C = PatternFamily(t, tuple(f for f in cube if code >> f & 1))
            families += 1
            d = vc_dimension(C)
            for n in range(1, t + 1):
                if len(C) > sauer_bound(t, n) and d < n:
                    raise _Failure({"patterns": patterns_to_json(C), "n": n, "vc": d})
            sets = sauer_shelah_extract(C)
            if len(set(sets)) != len(C) or not all(shattered(C, S) for S in sets):
                raise _Failure({"patterns": patterns_to_json(C), "extracted": [list(S) for S in sets]})
        return {"t": t, "families": families}

    return _run(f"sauer_exhaustive_t{t}", body)


def check_poly_harness(seed: int, trials: int = 1000, ground_max: int = 12) -> CheckResult:
    """Images of families with no n independent members stay below I(n, r)."""

    def body():
        summary = {}
        for n in (2, 3):
            for pname, poly in POLYNOMIALS.items():
                worst = 0
                for trial in range(trials):
                    rng = _rng(seed, 3, trial * 16 + n * 4 + list(POLYNOMIALS).index(pname))
                    ground = int(rng.integers(4, ground_max + 1))
                    size = int(rng.integers(2, 9 if poly.arity == 2 else 7))
                    fam = bounded_independence_family(rng, ground, n, size)
                    verdict = check_poly_bound(fam, n, poly)
                    if not verdict.holds:
                        raise _Failure({"family": family_to_json(fam), "n": n, "p": str(poly), "status": verdict.status})
                    worst = max(worst, verdict.max_independent)
                summary[f"n={n} {pname}"] = {"trials": trials, "I": i_threshold(n, poly.arity), "max_seen": worst}
        return summary

    return _run("poly_bound_harness", body)


def check_separation(ps=(0, 1), count: int = 5, m: int = 36, n_max: int = 5) -> CheckResult:
    """Exact mu(A_i - A_j) >= (5/7) 2^-(3p+2) for the constructed families."""

    def body():
        out = {}
        for p in ps:
            fam = build_separated_family(p, count, m)
            report = verify_separation_bound(p, fam, n_max)
            i, j = report.worst
            if not report.holds:
                raise _Failure({"p": p, "pair": [i, j], "value": fraction_str(report.matrix[i][j]),
                                "bound": fraction_str(report.bound)})
            out[f"p={p}"] = {"bound": fraction_str(report.bound), "min_entry": fraction_str(report.matrix[i][j]),
                             "pairs": count * (count - 1)}
        return out

    return _run("separation_bound", body)


def _random_params(rng, m: int) -> CantorParams:
    T = list(range(0, m, 3))
    phi = tuple(T[int(k)] for k in rng.permutation(len(T)))
    return CantorParams(m, phi, random_mask(rng, m))


def check_cylinders(seed: int, trials: int = 100, n_top: int = 8) -> CheckResult:
    """|dom sigma_n| = 3n+1, mu = 2^-(3n+1), build_A cylinders pairwise disjoint."""

    def body():
        for trial in range(trials):
            rng = _rng(seed, 5, trial)
            m = 3 * int(rng.integers(n_top + 1, n_top + 5))
            par = _random_params(rng, m)
            A = build_A(par, n_top)
            for n, c in enumerate(A.cylinders):
                single = union_measure(type(A)(m, (c,)))
                if bin(c.domain).count("1") != 3 * n + 1 or single != Fraction(1, 2 ** (3 * n + 1)):
                    raise _Failure({"params": params_to_json(par), "n": n})
            for a, b in itertools.combinations(A.cylinders, 2):
                if a.meet(b) is not None:
                    raise _Failure({"params": params_to_json(par), "overlap": True})
        return {"trials": trials, "n_max": n_top}

    return _run("cylinder_facts", body)


def _three_way(B: FiniteAlgebra, x: SubsetMask):
    fast = is_minimal_extension(B, x)
    slow = minimal_by_definition(B, x)
    count = count_intermediate_algebras(B, x)
    agree = fast == slow and fast.minimal == (count == 2)
    return agree, fast, slow, count


def _all_partitions(ground: int):
    def grow(point, blocks):
        if point == ground:
            yield FiniteAlgebra(ground, tuple(blocks))
            return
        for i in range(len(blocks)):
            blocks[i] |= 1 << point
            yield from grow(point + 1, blocks)
            blocks[i] ^= 1 << point
        blocks.append(1 << point)
        yield from grow(point + 1, blocks)
        blocks.pop()

    yield from grow(0, [])


def check_minimal_oracles(seed: int, ground_max: int = 4, cases: int = 500, max_atoms: int = 12) -> CheckResult:
    """Split-atom test, the for-all-b definition and the intermediate count agree."""

    def body():
        exhaustive = 0
        for ground in range(1, ground_max + 1):
            for B in _all_partitions(ground):
                for xb in range(1 << ground):
                    x = SubsetMask(ground, xb)
                    if B.contains_bits(xb):
                        continue
                    agree, fast, slow, count = _three_way(B, x)
                    exhaustive += 1
                    if not agree:
                        raise _Failure({"atoms": list(B.atoms), "x": x.indices(), "count": count})
        for trial in range(cases):
            rng = _rng(seed, 6, trial)
            ground = int(rng.integers(2, max_atoms + 1))
            B = random_partition(rng, ground, int(rng.integers(1, ground)))
            while len(B.atoms) == ground:
                B = random_partition(rng, ground, int(rng.integers(1, ground)))
            xb = random_mask(rng, ground)
            while B.contains_bits(xb):
                xb = random_mask(rng, ground)
            agree, fast, slow, count = _three_way(B, SubsetMask(ground, xb))
            if not agree:
                raise _Failure({"atoms": list(B.atoms), "x": SubsetMask(ground, xb).indices(), "count": count})
        return {"exhaustive_pairs": exhaustive, "random_cases": cases}

    return _run("minimal_extension_oracles", body)


def check_minimal_chains(seed: int, families: int = 500, perms: int = 5) -> CheckResult:
    """Families with no independent pair add up through minimal extensions, in any order."""

    def body():
        for trial in range(families):
            rng = _rng(seed, 7, trial)
            ground = int(rng.integers(2, 17))
            fam = laminar_family(rng, ground, int(rng.integers(1, 11)))
            for _ in range(perms):
                order = _perm(rng, fam)
                verdict = verify_minimal_chain(order)
                if not verdict.ok:
                    raise _Failure({"family": family_to_json(order), "index": verdict.index})
        return {"families": families, "permutations": perms}

    return _run("minimal_chains_no_independent_pair", body)


def check_product_measure(seed: int, k_max: int = 10) -> CheckResult:
    """mu(a_i) = 1/2, cells 2^-k, mu(a_i ^ a_j) = 1/2 under the product measure."""

    def body():
        for k in range(1, k_max + 1):
            rng = _rng(seed, 8, k)
            fam = independent_family(rng, k, extra=int(rng.integers(0, 8)))
            mu = product_measure_on_independent(fam)
            half = Fraction(1, 2)
            bad = [i for i, a in enumerate(fam) if measure_of(mu, a) != half]
            bad += [(i, j) for i, j in itertools.combinations(range(k), 2)
                    if measure_of(mu, fam[i] ^ fam[j]) != half]
            cell_weight = Fraction(1, 1 << k)
            for code in range(1 << k):
                cell = SubsetMask.full(fam.ground)
                for i, a in enumerate(fam):
                    cell = cell & a.power(code >> i & 1)
                if measure_of(mu, cell) != cell_weight:
                    bad.append(("cell", code))
            if bad:
                raise _Failure({"family": family_to_json(fam), "bad": bad[:5]})
        return {"k_max": k_max}

    return _run("product_measure", body)


def check_i1_atom(seed: int, trials: int = 1000) -> CheckResult:
    """For laminar G0 + g, the gap between the brackets of g is one atom."""

    def body():
        counts = {"atom": 0, "g_in_algebra": 0}
        for trial in range(trials):
            rng = _rng(seed, 9, trial)
            ground = int(rng.integers(2, 17))
            fam = laminar_family(rng, ground, int(rng.integers(2, 10)))
            if len(fam) < 2:
                fam = fam.append(SubsetMask.full(ground))
            verdict = i1_atom_check(fam.subfamily(range(len(fam) - 1)), fam[-1])
            if verdict.status == "violated":
                raise _Failure({"family": family_to_json(fam)})
            counts[verdict.status] += 1
        return counts

    return _run("i1_atom_claim", body)


def check_dual_transfer(seed: int, trials: int = 200, exhaustive_ground: int = 5) -> CheckResult:
    """dual_transfer returns points whose membership family is independent."""

    def body():
        for trial in range(trials):
            rng = _rng(seed, 10, trial)
            n = trial % 3
            A = list(independent_family(rng, 1 << (n + 1), extra=int(rng.integers(0, 16))))
            gs = dual_transfer(A, n)
            if len(gs) != n + 1 or not is_independent(transfer_family(A, gs)):
                raise _Failure({"sets": family_to_json(SetFamily(A[0].ground, tuple(A))), "n": n, "points": gs})
        pairs = 0
        for ground in range(1, exhaustive_ground + 1):
            for a, b in itertools.product(range(1 << ground), repeat=2):
                A = [SubsetMask(ground, a), SubsetMask(ground, b)]
                if not is_independent(SetFamily(ground, tuple(A))):
                    continue
                pairs += 1
                gs = dual_transfer(A, 0)
                if not is_independent(transfer_family(A, gs)) or gs[0] not in A[1] or gs[0] in A[0]:
                    raise _Failure({"sets": [A[0].indices(), A[1].indices()], "points": gs})
        return {"random_trials": trials, "exhaustive_pairs": pairs}

    return _run("dual_transfer", body)


def check_duality(seed: int, trials: int = 1000) -> CheckResult:
    """max_independent(F) equals the VC dimension of the transpose of F."""

    def body():
        for trial in range(trials):
            rng = _rng(seed, 11, trial)
            ground = int(rng.integers(1, 17))
            size = int(rng.integers(0, 13))
            if trial % 2:
                fam = random_family(rng, ground, size, p=float(rng.uniform(0.1, 0.9)))
            else:
                k = int(rng.integers(1, 4))
                base = independent_family(rng, k, extra=int(rng.integers(0, 8)))
                fam = SetFamily(base.ground, base.members + random_family(rng, base.ground, size // 2).members)
                fam = _perm(rng, fam)
            left = max_independent(fam)[0]
            right = vc_dimension(transpose(fam))
            if left != right:
                raise _Failure({"family": family_to_json(fam), "max_independent": left, "vc": right})
        return {"trials": trials}

    return _run("duality", body)


# -- further module invariants ------------------------------------------------


def check_extraction_random(seed: int, trials: int = 200, t_max: int = 16) -> CheckResult:
    def body():
        for trial in range(trials):
            rng = _rng(seed, 12, trial)
            t = int(rng.integers(1, t_max + 1))
            size = int(rng.integers(1, min(1 << t, 64) + 1))
            C = PatternFamily(t, tuple(random_mask(rng, t) for _ in range(size)))
            sets = sauer_shelah_extract(C)
            if len(set(sets)) != len(C) or not all(shattered(C, S) for S in sets):
                raise _Failure({"patterns": patterns_to_json(C)})
        return {"trials": trials, "t_max": t_max}

    return _run("extraction_random", body)


def check_threshold_minimality() -> CheckResult:
    def body():
        for n in range(1, 6):
            for r in range(1, 5):
                s = i_threshold(n, r)
                lhs = lambda s: sum(comb(r * s, i) for i in range(n))
                if not lhs(s) < 2**s or (s > 1 and lhs(s - 1) < 2 ** (s - 1)):
                    raise _Failure({"n": n, "r": r, "s": s})
        return {"n_max": 5, "r_max": 4}

    return _run("threshold_minimality", body)


def check_defects(seed: int, trials: int = 100) -> CheckResult:
    """Defects vanish on generating subfamilies, shrink along chains, and type <= determination."""

    def body():
        for trial in range(trials):
            rng = _rng(seed, 13, trial)
            ground = int(rng.integers(2, 9))
            fam = random_family(rng, ground, int(rng.integers(1, 5)))
            alg = generate_algebra(fam)
            raw = rng.integers(0, 5, size=len(alg.atoms))
            if raw.sum() == 0:
                raw[0] = 1
            mu = Measure(alg, tuple(Fraction(int(w), int(raw.sum())) for w in raw))
            prev_t = prev_d = None
            for k in range(len(fam) + 1):
                sub = fam.subfamily(range(k))
                t, d = type_defect(mu, sub), determination_defect(mu, sub)
                ok = 0 <= t <= d
                if prev_t is not None:
                    ok = ok and t <= prev_t and d <= prev_d
                if not ok:
                    raise _Failure({"family": family_to_json(fam), "k": k})
                prev_t, prev_d = t, d
            if prev_t != 0 or prev_d != 0:
                raise _Failure({"family": family_to_json(fam), "full_defects": [str(prev_t), str(prev_d)]})
        return {"trials": trials}

    return _run("measure_defects", body)


def check_cylinder_oracles(seed: int, trials: int = 60) -> CheckResult:
    """Refinement and inclusion-exclusion give the same exact measures."""

    def body():
        for trial in range(trials):
            rng = _rng(seed, 14, trial)
            m = 3 * int(rng.integers(3, 8))
            n_max = int(rng.integers(0, m // 3))
            u = build_A(_random_params(rng, m), n_max)
            v = build_A(_random_params(rng, m), n_max)
            if union_measure(u) != union_measure_incl_excl(u) or diff_measure(u, v) != diff_measure_incl_excl(u, v):
                raise _Failure({"m": m, "trial": trial})
            par = _random_params(rng, m)
            last = 0
            for k in range(m):
                try:
                    n0 = convergence_index(par, k, m // 3 - 1)
                except PreconditionFailed:
                    break
                if n0 < last:
                    raise _Failure({"params": params_to_json(par), "k": k})
                last = n0
        return {"trials": trials}

    return _run("cylinder_oracles", body)


PROFILES = {
    "quick": {"sauer_t": 3, "poly_trials": 200, "minimal_cases": 200, "chain_families": 200,
              "i1_trials": 300, "transfer_trials": 60, "duality_trials": 300, "cyl_trials": 30,
              "extract_trials": 100},
    "full": {"sauer_t": 4, "poly_trials": 1000, "minimal_cases": 500, "chain_families": 500,
             "i1_trials": 1000, "transfer_trials": 200, "duality_trials": 1000, "cyl_trials": 100,
             "extract_trials": 400},
}


def _checks(seed: int, profile: str) -> list[Callable[[], CheckResult]]:
    cfg = PROFILES[profile]
    return [
        check_i_table,
        lambda: check_sauer_exhaustive(cfg["sauer_t"]),
        lambda: check_poly_harness(seed, cfg["poly_trials"]),
        check_separation,
        lambda: check_cylinders(seed, cfg["cyl_trials"]),
        lambda: check_minimal_oracles(seed, cases=cfg["minimal_cases"]),
        lambda: check_minimal_chains(seed, cfg["chain_families"]),
        lambda: check_product_measure(seed),
        lambda: check_i1_atom(seed, cfg["i1_trials"]),
        lambda: check_dual_transfer(seed, cfg["transfer_trials"]),
        lambda: check_duality(seed, cfg["duality_trials"]),
        lambda: check_extraction_random(seed, cfg["extract_trials"]),
        check_threshold_minimality,
        lambda: check_defects(seed),
        lambda: check_cylinder_oracles(seed),
    ]


CHECKS = [
    "i_table", "sauer_exhaustive", "poly_bound_harness", "separation_bound", "cylinder_facts",
    "minimal_extension_oracles", "minimal_chains_no_independent_pair", "product_measure",
    "i1_atom_claim", "dual_transfer", "duality", "extraction_random", "threshold_minimality",
    "measure_defects", "cylinder_oracles",
]


@dataclass
class RunReport:
    command: str
    seed: int
    profile: str
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, timing: bool = True) -> dict:
        checks = [c.to_json() for c in self.checks]
        if not timing:
            for c in checks:
                c.pop("seconds")
        return {"command": self.command, "version": __version__, "seed": self.seed, "profile": self.profile,
                "status": "pass" if self.ok else "fail", "checks": checks}


def verify_suite(seed: int = 42, profile: str = "quick", stop_on_failure: bool = False) -> RunReport:
    """Run every acceptance and invariant check under ``seed``.

    ``quick`` sweeps ``2^T`` with ``|T| = 3`` and runs fewer random trials;
    ``full`` runs everything at acceptance scale, including the
    ``|T| = 4`` sweep over all 65535 pattern families.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    results = []
    for check in _checks(seed, profile):
        result = check()
        results.append(result)
        if stop_on_failure and not result.passed:
            break
    return RunReport("verify", seed, profile, results)
