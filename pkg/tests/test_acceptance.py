"""Acceptance criteria 1-10. Each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also collected in the terminal summary.
"""

import json
import random
import subprocess
import sys
import time

from leafpaths.generators import make_t_delta_h, random_degree_sequence, random_tree_with_degrees
from leafpaths.greedy import identity_eq1_check, min_height_k, min_radius
from leafpaths.kraft import binary_shapes, kraft_survey
from leafpaths.oracle import (
    EnumerationScope,
    brute_lp,
    brute_min_height_k,
    brute_min_radius,
    conjecture_gap_report,
    f_of_D_upper,
    free_trees,
)
from leafpaths.pathlens import (
    ceil_log,
    certified_lower_bound,
    lp,
    lp_set,
    rooting_certificates,
    theorem1_holds,
)
from leafpaths.tree import degree_sequence_of, out_degree_sequence_of, root_at

GRID = [(d, h) for d in (3, 4, 5) for h in range(1, 7)]
WEDDERBURN_ETHERINGTON = [1, 1, 1, 2, 3, 6, 11, 23, 46, 98]


def _partitions(total, maxv, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for v in range(min(total, maxv), -1, -1):
        for rest in _partitions(total - v, v, parts - 1):
            yield (v,) + rest


def _degree_sequences(n):
    for p in _partitions(n - 2, n - 2, n):
        yield tuple(x + 1 for x in p)


def _random_out_degrees(rng, n):
    s = random_degree_sequence(n, rng.randrange(2**31))
    t = random_tree_with_degrees(s, rng.randrange(2**31))
    return out_degree_sequence_of(root_at(t, rng.randrange(n))).entries


def test_c01_family_values(criterion):
    start = time.perf_counter()
    bad = []
    for d, h in GRID:
        t = make_t_delta_h(d, h)
        s = degree_sequence_of(t)
        ok = (
            lp_set(t) == set(range(0, 2 * h + 1, 2))
            and lp(t) == h + 1
            and s.leaves == d * (d - 1) ** (h - 1)
            and min_radius(s)[0] == h
        )
        if not ok:
            bad.append((d, h))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    criterion("C1 family values", ok, f"grid={len(GRID)} mismatches={bad} time={elapsed:.3f}s")
    assert ok


def test_c02_degree_leaf_bound(criterion):
    checked = violations = 0
    for n in range(1, 11):
        for t in free_trees(n):
            delta = t.max_degree()
            if delta < 3:
                continue
            checked += 1
            violations += not theorem1_holds(lp(t), delta, len(t.leaves()))
    tight = all(
        h + 1 == ceil_log(d - 1, (d - 2) * d * (d - 1) ** (h - 1)) for d, h in GRID
    )
    ok = checked > 0 and violations == 0 and tight
    criterion("C2 lp >= log_{D-1}((D-2)l)", ok,
              f"trees={checked} violations={violations} tight_on_family={tight}")
    assert ok


def test_c03_radius_bound(criterion):
    rep = conjecture_gap_report(EnumerationScope(n=12, n_min=2, no_degree2=True))
    checked = [r for r in rep.records if r.radius_bound_ok is not None]
    failed = [r for r in checked if not r.radius_bound_ok]
    ok = len(checked) == len(rep.records) > 0 and not failed
    criterion("C3 lp >= rad - log2(rad)", ok,
              f"shapes={len(checked)} violations={len(failed)} max_gap={rep.max_gap}")
    assert ok


def test_c04_greedy_radius(criterion):
    seqs = mismatch = eq_fail = 0
    for n in range(2, 10):
        for s in _degree_sequences(n):
            seqs += 1
            mismatch += min_radius(s)[0] != brute_min_radius(s)
            eq_fail += not identity_eq1_check(s)
    ok = seqs > 0 and mismatch == 0 and eq_fail == 0
    criterion("C4 greedy radius == brute", ok,
              f"sequences={seqs} mismatches={mismatch} identity_failures={eq_fail}")
    assert ok


def test_c05_lp_oracle(criterion):
    shapes = shape_bad = 0
    for n in range(1, 11):
        for t in free_trees(n):
            shapes += 1
            shape_bad += lp_set(t) != brute_lp(t)
    rng = random.Random(20240605)
    rand_bad = 0
    for _ in range(1000):
        n = rng.randint(2, 200)
        t = random_tree_with_degrees(random_degree_sequence(n, rng.randrange(2**31)),
                                     rng.randrange(2**31))
        rand_bad += lp_set(t) != brute_lp(t)
    ok = shapes > 0 and shape_bad == 0 and rand_bad == 0
    criterion("C5 lp_set == brute_lp", ok,
              f"shapes={shapes} shape_mismatches={shape_bad} random=1000 random_mismatches={rand_bad}")
    assert ok


def test_c06_constrained_height(criterion):
    rng = random.Random(6)
    pairs = mono_bad = dbl_bad = brute_pairs = brute_bad = 0
    for _ in range(200):
        n = rng.randint(2, 40)
        s = _random_out_degrees(rng, n)
        ell = s.count(0)
        values = [min_height_k(s, k)[0] for k in range(1, ell + 1)]
        pairs += ell
        mono_bad += values != sorted(values)
        dbl_bad += sum(values[k - 1] > values[(k + 1) // 2 - 1] + 1 for k in range(1, ell + 1))
        if len(s) <= 12:
            for k in range(1, ell + 1):
                brute_pairs += 1
                brute_bad += values[k - 1] != brute_min_height_k(s, k)
    ok = mono_bad == 0 and dbl_bad == 0 and brute_bad == 0 and brute_pairs > 0
    criterion("C6 h(s+,k) properties", ok,
              f"sequences=200 pairs={pairs} monotone_fail={mono_bad} doubling_fail={dbl_bad} "
              f"brute_pairs={brute_pairs} brute_mismatches={brute_bad}")
    assert ok


def test_c07_certificates(criterion):
    rootings = bad = 0
    for n in range(1, 11):
        for t in free_trees(n):
            value = lp(t)
            for r in range(t.n):
                rootings += 1
                for c in rooting_certificates(root_at(t, r)):
                    bad += c.bound > value or c.recompute() != c.bound
            bad += certified_lower_bound(t).bound > value if n >= 2 else 0
    family_eq = all(certified_lower_bound(make_t_delta_h(d, h)).bound == h + 1 for d, h in GRID)
    ok = rootings > 0 and bad == 0 and family_eq
    criterion("C7 certified bounds <= lp", ok,
              f"rootings={rootings} violations={bad} equality_on_family={family_eq}")
    assert ok


def test_c08_kraft(criterion):
    start = time.perf_counter()
    counts = [len(binary_shapes(ell)) for ell in range(1, 11)]
    rows = list(kraft_survey(10))
    elapsed = time.perf_counter() - start
    violated = [r for r in rows if not r.holds]
    eq = [r for r in rows if r.equality]
    perfect_eq = all(r.equality for r in rows if r.perfect)
    full_match = {r.shape_id for r in eq} == {r.shape_id for r in rows if r.every_internal_has_2_children}
    ok = (counts == WEDDERBURN_ETHERINGTON and not violated and perfect_eq and elapsed < 60)
    criterion("C8 Kraft survey", ok,
              f"shapes={len(rows)} violations={len(violated)} equality={len(eq)} "
              f"perfect_equality={perfect_eq} equality_is_full_shapes={full_match} time={elapsed:.2f}s")
    assert ok


def test_c09_f_of_d(criterion):
    details = []
    ok = True
    for D, expected in ((2, 2), (3, 3)):
        r = f_of_D_upper(D, 12)
        witness_lp = len(brute_lp(r.witness))
        this = (r.value == expected and witness_lp == r.value and r.kind == "upper_bound"
                and r.consistent)
        ok &= this
        details.append(f"D={D} f<={r.value} witness_lp={witness_lp} lower={r.lower_bound:.3f}")
    criterion("C9 f(D) upper bounds", ok, "; ".join(details))
    assert ok


_PERF_SCRIPT = """
import json, resource, time
from leafpaths.generators import make_t_delta_h
from leafpaths.pathlens import lp_set
t = make_t_delta_h(3, 16)
start = time.perf_counter()
s = lp_set(t)
elapsed = time.perf_counter() - start
rss_kib = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
print(json.dumps({"n": t.n, "lp": len(s), "seconds": elapsed, "rss_kib": rss_kib}))
"""


def test_c10_performance(criterion):
    # separate process so peak RSS reflects only this workload
    res = subprocess.run([sys.executable, "-c", _PERF_SCRIPT], capture_output=True, text=True,
                         check=True)
    m = json.loads(res.stdout)
    mib = m["rss_kib"] / 1024
    ok = m["lp"] == 17 and m["seconds"] < 5.0 and mib < 1024
    criterion("C10 T_{3,16} performance", ok,
              f"n={m['n']} lp={m['lp']} time={m['seconds']:.3f}s peak_rss={mib:.0f}MiB")
    assert ok
