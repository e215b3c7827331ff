"""End-to-end acceptance checks, one per criterion.

Each check prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run directly with `python3 tests/test_acceptance.py`.
"""

import functools
import itertools
import math
import random
import sys
import time
import traceback
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from sweep import sweep  # noqa: E402

from permpoly.census import (count_bijections, count_condition_based, count_degree_p_classes,  # noqa: E402
                             count_exhaustive, degree_p_class_scan)
from permpoly.hierarchy import decompose  # noqa: E402
from permpoly.modmath import (binom_block_det, binom_block_matrix, mat_det_exact,  # noqa: E402
                              paired_power_det, paired_power_matrix)
from permpoly.nullpoly import count_null_closed, enumerate_null, is_null, omega  # noqa: E402
from permpoly.permtest import Method, check_any, crt_build_poly, is_perm_bruteforce  # noqa: E402
from permpoly.poly import IntPoly, equivalent, induced_table  # noqa: E402
from permpoly.recover import (SampleSet, depth, recover, recover_composite, recover_recursive,  # noqa: E402
                              required_samples)

RESULTS: list[str] = []


def criterion(number: int, title: str):
    def wrap(body):
        @functools.wraps(body)
        def run():
            start = time.perf_counter()
            try:
                detail = body()
            except Exception as e:
                line = f"FAIL criterion {number}: {title} ({type(e).__name__}: {e})"
                RESULTS.append(line)
                print(line)
                raise
            line = f"PASS criterion {number}: {title} [{detail}; {time.perf_counter() - start:.2f}s]"
            RESULTS.append(line)
            print(line)
        run.criterion = number
        return run
    return wrap


def _fastest(fn, repeats=5):
    best = math.inf
    for _ in range(repeats):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


@criterion(1, "2x^2 + x permutes Z/2^d for d = 1..32 by closed form, each < 1 ms")
def test_criterion_01_quadratic_power_of_two():
    slowest = 0.0
    for d in range(1, 33):
        f = IntPoly(2**d, [0, 1, 2])
        verdict, elapsed = _fastest(lambda: check_any(f))
        assert verdict.is_permutation, f"d={d}"
        # mod 2 the quadratic term vanishes and the degree-1 rule applies
        assert verdict.method is (Method.DEGREE1 if d == 1 else Method.POWER2), f"d={d}: {verdict.method}"
        assert elapsed < 1e-3, f"d={d} took {elapsed * 1e3:.3f} ms"
        slowest = max(slowest, elapsed)
        if d <= 16:
            assert is_perm_bruteforce(f).is_permutation, f"brute force disagrees at d={d}"
    return f"slowest {slowest * 1e6:.0f} us"


@criterion(2, "exhaustive census mod 4, 8, 16 gives 1/2, 1/4, 1/8, 1/8, 1/8 in < 60 s")
def test_criterion_02_power_of_two_census():
    start = time.perf_counter()
    want = [F(1, 2), F(1, 4), F(1, 8), F(1, 8), F(1, 8)]
    for m in (4, 8, 16):
        got = [count_exhaustive(m, n).ratio for n in range(1, 6)]
        assert got == want, f"m={m}: {got}"
    elapsed = time.perf_counter() - start
    assert elapsed < 60, f"{elapsed:.1f} s"
    return "15 ratios exact"


@criterion(3, "census mod 9 gives 2/3, 2/9, 4/27, 4/81, 16/243; mod 27 agrees; < 120 s")
def test_criterion_03_power_of_three_census():
    start = time.perf_counter()
    want = [F(2, 3), F(2, 9), F(4, 27), F(4, 81), F(16, 243)]
    assert [count_exhaustive(9, n).ratio for n in range(1, 6)] == want
    by_conditions = [count_condition_based(3, 3, n) for n in range(1, 6)]
    assert [r.ratio for r in by_conditions] == want
    for n in range(1, 4):
        assert count_exhaustive(27, n).n_pp == by_conditions[n - 1].n_pp, f"m=27, n={n}"
    elapsed = time.perf_counter() - start
    assert elapsed < 120, f"{elapsed:.1f} s"
    return "mod 27 condition counts match exhaustive for n <= 3"


SWEEP_CONFIGS = [(8, 4), (9, 4), (16, 4), (25, 4), (27, 4), (6, 3), (12, 3), (36, 3)]


@criterion(4, "check_any agrees with brute force on every swept coefficient tuple")
def test_criterion_04_soundness_sweep():
    notes = []
    for m, deg in SWEEP_CONFIGS:
        res = sweep(m, deg)
        assert not res.disagreements, f"m={m}: {res.disagreements[:3]}"
        assert not res.bad_witnesses, f"m={m}: {res.bad_witnesses[:3]}"
        # exhaustive sweeps call check_any once per (a_1..a_n); brute force covers every a_0
        notes.append(f"m={m} {m ** (deg + 1)} tuples" if res.exhaustive else f"m={m} {res.checked} sampled")
    return ", ".join(notes)


@criterion(5, "degree-3 scan mod 3: 12 classes, 2 per bijection, 6 bijections, < 1 s")
def test_criterion_05_degree_p_classes():
    start = time.perf_counter()
    scan = degree_p_class_scan(3)
    total = sum(len(v) for v in scan.values())
    assert total == 12 == count_degree_p_classes(3)
    assert all(len(v) == 2 for v in scan.values())
    assert len(scan) == 6 == math.factorial(3) == count_bijections(3, 1, 3)
    elapsed = time.perf_counter() - start
    assert elapsed < 1, f"{elapsed:.2f} s"
    return "12 = 6 x 2"


@criterion(6, "null polynomial counts and least null degrees")
def test_criterion_06_null_counts():
    assert len(enumerate_null(4, 3)) == 4 == count_null_closed(2, 2)
    assert len(enumerate_null(9, 5)) == 27 == count_null_closed(3, 2)
    for p in (2, 3, 5):
        assert omega(p, monic=True) == p, f"p={p}"
    assert omega(4) == 2
    assert omega(4, monic=True) == 4
    return "4, 27, omega ok"


RECOVERY_CONFIGS = [(2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)]
ROUND_TRIPS = 200


def _random_permutation(rng, m, max_deg):
    while True:
        f = IntPoly(m, [rng.randrange(m) for _ in range(rng.randint(1, max_deg) + 1)])
        if is_perm_bruteforce(f):
            return f


@criterion(7, "recovery round trip, 200 permutations per (p, d), < 5 min")
def test_criterion_07_recovery_round_trip():
    start = time.perf_counter()
    rng = random.Random(7)
    exact = 0
    for p, d in RECOVERY_CONFIGS:
        m = p**d
        for i in range(ROUND_TRIPS):
            # a quarter of the generators stay at degree <= p-1
            f = _random_permutation(rng, m, p - 1 if i % 4 == 0 else p * d - 1)
            table = induced_table(f)
            seed = recover(table, p, d).seed
            assert induced_table(seed) == table, f"{f} mod {m}"
            assert is_null(f - seed), f"{f} - {seed} is not null"
            if f.degree <= p - 1:
                assert seed == f, f"{f} came back as {seed}"
                exact += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 300, f"{elapsed:.1f} s"
    return f"{ROUND_TRIPS * len(RECOVERY_CONFIGS)} tables matched, {exact} low-degree seeds exact"


@criterion(8, "recovery from p^(ceil((d-1)/p)+1) structured samples reproduces the table")
def test_criterion_08_structured_samples():
    rng = random.Random(8)
    notes = []
    for p, d in [(2, 4), (2, 5), (3, 4)]:
        m = p**d
        xs = required_samples(p, d)
        assert len(xs) == p ** (depth(p, d) + 1) == p ** (-(-(d - 1) // p) + 1)
        for _ in range(25):
            f = _random_permutation(rng, m, p * d - 1)
            table = induced_table(f)
            seed = recover_recursive(SampleSet.from_table(table, xs), p, d).seed
            assert induced_table(seed) == table, f"{f} mod {m}"
        notes.append(f"{m} from {len(xs)}")
    return "tables mod " + ", ".join(notes) + " samples"


@criterion(9, "decompose validates every permutation of degree <= 4 mod 9 and mod 16")
def test_criterion_09_hierarchy():
    counts = []
    for p, d in [(3, 2), (2, 4)]:
        perms = sweep(p**d, 4).permutations
        assert perms
        for f in perms:
            decompose(f, p, d)
        counts.append(len(perms))
    return f"{counts[0]} mod 9, {counts[1]} mod 16"


@criterion(10, "paired-power and binomial-block determinants match their matrices")
def test_criterion_10_determinants():
    checked = 0
    for size in (1, 2, 3):
        for xs in itertools.permutations((1, 2, 3), size):
            for shifted in (False, True):
                mat = paired_power_matrix(xs, shifted)
                assert paired_power_det(xs, shifted) == mat_det_exact(mat) == oracles.det(mat), (xs, shifted)
                checked += 1
            for l in (1, 2):
                for n in range(l, l + 3):
                    mat = binom_block_matrix(xs, n, l)
                    assert binom_block_det(xs, n, l) == mat_det_exact(mat) == oracles.det(mat), (xs, n, l)
                    checked += 1
    return f"{checked} determinants"


@criterion(11, "x mod 4 and 2x mod 9 combine to 29x mod 36, a permutation, recovered from its table")
def test_criterion_11_crt():
    f = crt_build_poly([IntPoly(4, [0, 1]), IntPoly(9, [0, 2])])
    assert f == IntPoly(36, [0, 29])
    assert check_any(f).is_permutation and oracles.is_perm(f.coeffs, 36)
    back = recover_composite(induced_table(f))
    assert equivalent(back, f) and back == f
    return str(f)


CRITERIA = sorted((obj for name, obj in dict(globals()).items() if name.startswith("test_criterion_")),
                  key=lambda fn: fn.criterion)


if __name__ == "__main__":
    failed = 0
    for check in CRITERIA:
        try:
            check()
        except Exception:
            failed += 1
            traceback.print_exc(limit=2)
    sys.exit(1 if failed else 0)
