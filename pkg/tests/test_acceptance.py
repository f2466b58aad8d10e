"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line with its runtime against the limit.  Under pytest the lines
are also collected and repeated in the terminal summary; ``python tests/test_acceptance.py``
runs them directly.
"""

import sys
import time


from sigmahull.code import VerificationFailure
from sigmahull.families import smallest_cyclic_pair
from sigmahull.suites import (
    check_code_lemmas,
    check_families,
    check_grs_lemmas,
    check_medium_field,
    check_membership,
    check_mxp_dual,
    check_mxp_hull,
    check_mxp_intersection,
    check_mxp_special_hulls,
    check_power_equation,
    check_rank_identities,
    check_subfield_containment,
    check_tables,
    scaled_family_specs,
)

LINES: list[str] = []


def _report(num: int, title: str, ok: bool, secs: float, limit: float, detail: str = "") -> None:
    ok = ok and secs < limit
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} ({secs:.2f}s, limit {limit:g}s){detail}"
    LINES.append(line)
    print(line)
    assert ok, line


def _run(results):
    return all(r.ok for r in results), sum(r.instances for r in results), sum(r.failures for r in results)


def test_criterion_1_rank_identities():
    t0 = time.perf_counter()
    r = check_rank_identities(count=500, seed=1, fields=((2, 2), (2, 3), (3, 2), (5, 2)), max_n=12)
    secs = time.perf_counter() - t0
    _report(1, "rank identities vs row-space oracle, 500 per field over GF(4/8/9/25)",
            r.ok and r.instances >= 2000, secs, 120, f"  {r.instances} instances, {r.failures} failures")


def test_criterion_2_lemmas():
    t0 = time.perf_counter()
    a = check_code_lemmas(count=200, seed=2)
    b = check_grs_lemmas(count=200, seed=2)
    secs = time.perf_counter() - t0
    per = {**a.counts, **b.counts}
    ok = a.ok and b.ok and min(per.values()) >= 200 and len(per) == 8
    _report(2, "transport and GRS dual lemmas, 200 instances each", ok, secs, 120,
            f"  min per lemma {min(per.values())}, {a.failures + b.failures} failures")


def test_criterion_3_matrix_product():
    t0 = time.perf_counter()
    rs = [check_mxp_dual(100, seed=3), check_mxp_hull(100, seed=3),
          check_mxp_special_hulls(100, seed=3), check_mxp_intersection(100, seed=3)]
    secs = time.perf_counter() - t0
    ok, n, f = _run(rs)
    zero_hull = rs[1].counts.get("mu has a zero", 0)
    zero_int = rs[3].counts.get("mu has a zero", 0)
    ok = ok and all(r.instances >= 100 for r in rs) and zero_hull > 0 and zero_int > 0
    _report(3, "matrix-product dual, hull, special hulls, intersection over GF(9)/GF(25)", ok, secs, 300,
            f"  {n} instances ({zero_hull}+{zero_int} with a zero multiplier), {f} failures")


def test_criterion_4_membership():
    t0 = time.perf_counter()
    r = check_membership(random_cases=1000, seed=4)
    secs = time.perf_counter() - t0
    ok = r.ok and r.counts.get("random", 0) >= 1000 and r.counts.get("exhaustive", 0) > 0
    _report(4, "membership witness vs direct sigma inner products", ok, secs, 180,
            f"  {r.counts.get('exhaustive', 0)} exhaustive + {r.counts.get('random', 0)} random, "
            f"{r.failures} disagreements")


def test_criterion_5_families():
    t0 = time.perf_counter()
    specs = scaled_family_specs()
    pairs = {(fs.p, fs.e, fs.ell): (fs.params["x1"], fs.params["x2"])
             for fs in specs if fs.family == "cyclic"}
    smallest = all(v == smallest_cyclic_pair(*k) for k, v in pairs.items())
    r = check_families(specs)
    secs = time.perf_counter() - t0
    ok = r.ok and r.instances >= 20 and smallest
    _report(5, "every legal (variant, k, h) builds with hull h and is MDS", ok, secs, 600,
            f"  {r.instances} instances, {r.failures} failures, "
            f"{r.counts.get('mds enumerated', 0)} MDS by enumeration")


def test_criterion_6_tables():
    t0 = time.perf_counter()
    r = check_tables()
    secs = time.perf_counter() - t0
    cells = sum(r.counts.values())
    _report(6, "table rows regenerate bit-exactly, novelty predicate holds", r.ok, secs, 1,
            f"  {r.instances} rows, {cells} cells")


def test_criterion_7_medium_field():
    t0 = time.perf_counter()
    r = check_medium_field(hs=(0, 1))
    secs = time.perf_counter() - t0
    _report(7, "GF(625), n=156, k=2, h in {0,1} with hull oracle", r.ok and r.instances == 2, secs, 120,
            f"  {', '.join(sorted(r.counts))}")


def test_criterion_8_power_equation():
    t0 = time.perf_counter()
    named = check_power_equation(fields=((3, 2), (3, 4), (5, 2)))
    # fields where some F_{p^ell} fails the condition, for the converse direction
    converse = check_power_equation(fields=((3, 3), (5, 3), (3, 6)))
    sub = check_subfield_containment()
    secs = time.perf_counter() - t0
    ok = named.ok and converse.ok and sub.ok
    unsolved = sum(1 for k in converse.counts if "not all" in k)
    _report(8, "power equation solvable on all of F_{p^ell}^* iff 2 ell | e, by exhaustion", ok and unsolved > 0,
            secs, 60, f"  {named.instances} cases on GF(9/81/25), {converse.instances} converse cases")


if __name__ == "__main__":
    fails = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except (AssertionError, VerificationFailure):
                fails += 1
    sys.exit(1 if fails else 0)
