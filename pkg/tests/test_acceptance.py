"""Acceptance gate.

Runs every acceptance check at full scale with master seed 42 and prints one
``PASS``/``FAIL`` line per criterion, whether or not pytest captures output::

    pytest tests/test_acceptance.py

Wall-clock limits are asserted alongside correctness where one is set.
"""

import pytest

from finitebool import harness

SEED = 42

CRITERIA = [
    ("01", "I(n,r) threshold table, minimality certified", harness.check_i_table, 1.0),
    ("02", "Sauer-Shelah sweep over all 65535 families on 4 coordinates",
     lambda: harness.check_sauer_exhaustive(4), 60.0),
    ("03", "polynomial image bound, 1000 families per (n, polynomial)",
     lambda: harness.check_poly_harness(SEED, trials=1000, ground_max=12), 120.0),
    ("04", "separation of the A-sets: >= 5/28 at p=0, >= 5/224 at p=1",
     lambda: harness.check_separation((0, 1), count=5, m=36, n_max=5), 10.0),
    ("05", "cylinder sizes 3n+1, measures 2^-(3n+1), disjointness",
     lambda: harness.check_cylinders(SEED, trials=100, n_top=8), None),
    ("06", "three minimal-extension criteria agree",
     lambda: harness.check_minimal_oracles(SEED, ground_max=4, cases=500, max_atoms=12), None),
    ("07", "no independent pair gives minimal chains under 5 permutations",
     lambda: harness.check_minimal_chains(SEED, families=500, perms=5), None),
    ("08", "product measure on independent families, k <= 10",
     lambda: harness.check_product_measure(SEED, k_max=10), None),
    ("09", "bracket gap of g over a laminar G0 is an atom",
     lambda: harness.check_i1_atom(SEED, trials=1000), None),
    ("10", "dual transfer yields an independent family",
     lambda: harness.check_dual_transfer(SEED, trials=200, exhaustive_ground=5), None),
    ("11", "max independent size equals VC dimension of the transpose",
     lambda: harness.check_duality(SEED, trials=1000), None),
]


@pytest.mark.parametrize("number,label,check,limit", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(number, label, check, limit, capsys):
    result = check()
    in_time = limit is None or result.seconds < limit
    ok = result.passed and in_time
    note = f"{result.seconds:.2f}s" + ("" if in_time else f" over the {limit:.0f}s limit")
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number}: {label}  ({note})")
    assert result.passed, result.witness
    assert in_time, note
