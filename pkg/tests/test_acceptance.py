"""Acceptance criteria, one test each.

Each test records a one-line PASS/FAIL verdict, printed at the end of the
pytest run.  ``python tests/test_acceptance.py`` runs them without pytest.
"""

import itertools
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from boxwords.family import WordFamily, check_alpha, double, doubled_family, paper_k2_family, theorem_bound
from boxwords.geometry import encode_family, neighbourly_pair, read_simplices
from boxwords.parity import char_sum_box, check_lemma1, handcrafted_tilings, random_tiling, verify_tiling
from boxwords.search import SearchProblem, conjecture_probe, max_family, universe_size

from conftest import brute_admissible, brute_char_sum

DATA = Path(__file__).parent / "data"
RESULTS: dict[int, str] = {}


def record(number, ok, detail):
    RESULTS[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[number])
    assert ok, RESULTS[number]


def test_criterion_1_paper_k2_example():
    start = time.monotonic()
    rep = check_alpha(WordFamily(["00*", "*10", "1*1"], 2))
    res = max_family(SearchProblem(3, 2))
    elapsed = time.monotonic() - start
    ok = rep.ok and res.size == 3 and res.optimal and elapsed < 1.0
    record(1, ok, f"alpha={rep.ok} size={res.size} optimal={res.optimal} time={elapsed:.2f}s")


def test_criterion_2_bound_at_k3():
    start = time.monotonic()
    sizes = {}
    for n in range(4, 8):
        res = max_family(SearchProblem(n, 3, use_theorem_bound=False))
        assert res.optimal and check_alpha(res.best_family).ok
        sizes[n] = res.size
    doubled = double(paper_k2_family())
    elapsed = time.monotonic() - start
    ok = (
        all(s <= 6 for s in sizes.values())
        and sizes[7] == 6
        and len(doubled) == 6
        and doubled.n == 7
        and check_alpha(doubled).ok
        and elapsed < 300
    )
    record(2, ok, f"maxima={sizes} doubled={len(doubled)} time={elapsed:.2f}s")


def test_criterion_3_doubling():
    fam = paper_k2_family()
    sizes = []
    ok = True
    for m in range(1, 7):
        fam = double(fam)
        sizes.append(len(fam))
        ok &= len(fam) == 3 * 2 ** m == (3 * 2 ** (m + 2)) // 4
        ok &= fam.k == m + 2 and check_alpha(fam).ok
    first = double(paper_k2_family())
    ok &= len(first) == 6 and first.n == 7 and brute_admissible([str(w) for w in first], 3)
    record(3, ok, f"sizes m=1..6: {sizes}")


def test_criterion_4_lemma1_parity():
    start = time.monotonic()
    rng = random.Random(20240601)
    checked = 0
    failures = 0
    per_n = {}
    for n in range(2, 13):
        count = 0
        for i in range(1200):
            # every sixth tiling mixes in pinwheel substitutions (not hierarchical)
            pin = 0.3 if i % 6 == 5 else 0.0
            t = random_tiling(n, rng, pinwheel_probability=pin)
            if not verify_tiling(t).ok:
                failures += 1
                continue
            for split in check_lemma1(t):
                checked += 1
                failures += not split.balanced
            count += 1
        per_n[n] = count
    for t in handcrafted_tilings():
        assert verify_tiling(t).ok
        for split in check_lemma1(t):
            checked += 1
            failures += not split.balanced
    elapsed = time.monotonic() - start
    ok = failures == 0 and min(per_n.values()) >= 1000 and elapsed < 120
    record(4, ok, f"tilings per n >= {min(per_n.values())} classes={checked} failures={failures} time={elapsed:.1f}s")


def test_criterion_5_character_sums():
    rng = random.Random(5)
    cases = 0
    mismatches = 0
    for _ in range(10_000):
        n = rng.randint(1, 14)
        word = "".join(rng.choice("01**") if n > 10 else rng.choice("01*") for _ in range(n))
        support = {i for i in range(1, n + 1) if rng.random() < 0.5}
        if rng.random() < 0.5:
            # support inside prop: the nonzero branch, where the exponent matters
            support = {i + 1 for i, ch in enumerate(word) if ch != "*" and rng.random() < 0.7}
        cases += 1
        mismatches += char_sum_box(support, word) != brute_char_sum(support, word)
    # exponent check: sum over A of chi_{prop A} has magnitude 2^(n - |prop A|)
    exp_ok = all(
        abs(brute_char_sum({1, 2}, "10" + "*" * m)) == 2 ** (m + 2 - 2) for m in range(0, 6)
    )
    ok = mismatches == 0 and cases >= 10_000 and exp_ok
    record(5, ok, f"cases={cases} mismatches={mismatches} exponent_uses_n={exp_ok}")


def _naive_max(n, k):
    cands = ["".join(p) for p in itertools.product("01*", repeat=n) if n - "".join(p).count("*") == k]
    best = 1
    for r in range(2, len(cands) + 1):
        if any(brute_admissible(list(c), k) for c in itertools.combinations(cands, r)):
            best = r
        else:
            break
    return best


def test_criterion_6_search_oracle():
    start = time.monotonic()
    cases = [(n, k) for n in range(2, 12) for k in range(1, n) if universe_size(n, k) <= 20]
    bad = []
    for n, k in cases:
        expected = _naive_max(n, k)
        for symmetry in (True, False):
            res = max_family(SearchProblem(n, k, symmetry=symmetry, use_theorem_bound=False))
            if res.size != expected or not res.optimal:
                bad.append((n, k, symmetry, res.size, expected))
    elapsed = time.monotonic() - start
    ok = not bad and elapsed < 60
    record(6, ok, f"cases={cases} mismatches={bad} time={elapsed:.2f}s")


def test_criterion_7_conjecture_probe_k4():
    start = time.monotonic()
    rep = conjecture_probe(4, range(5, 10), budget_nodes=2_000_000)
    seeded = conjecture_probe(4, [15], budget_nodes=200_000, seeds={15: doubled_family(2)})
    elapsed = time.monotonic() - start
    sizes = {row.n: row.size for row in rep.rows}
    ok = all(s <= 14 for s in sizes.values())
    ok &= all(check_alpha(row.family).ok for row in rep.rows + seeded.rows)
    (row15,) = seeded.rows
    ok &= row15.size >= 12 and elapsed < 600
    opt = {row.n: row.optimal for row in rep.rows}
    record(7, ok, f"maxima={sizes} optimal={opt} n=15 seeded size={row15.size} time={elapsed:.1f}s")


def test_criterion_8_geometry():
    start = time.monotonic()
    ok = True
    details = []
    for name in ("two_triangles.simplices", "four_triangles.simplices"):
        simplices = read_simplices(DATA / name)
        for s, t in itertools.combinations(simplices, 2):
            cert = neighbourly_pair(s, t)
            ok &= cert.ok and cert.point is not None
            ok &= cert.ok and cert.hyperplane.value(cert.point) == 0
        enc = encode_family(simplices)
        rep = check_alpha(enc.family)
        d = simplices[0].d
        ok &= rep.ok and enc.family.k == d + 1 == 3
        ok &= len(enc.family) <= theorem_bound(d + 1) == 6
        details.append(f"{name}: |V|={len(enc.family)} n={enc.family.n}")
    elapsed = time.monotonic() - start
    ok &= elapsed < 10
    record(8, ok, "; ".join(details) + f" time={elapsed:.2f}s")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
