"""Acceptance criteria, one test each.

Every test appends a PASS/FAIL line (tolerance and runtime included) to the
summary printed at the end of the pytest run.
"""

import bisect
import json
import random
import time
import warnings
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

import pytest
from conftest import ACCEPTANCE_LINES
from oracles import brute_min_size, complement_set, greedy_terms

from addcomp.cli import main
from addcomp.complement import b_count, b_members, b_upper_bound, bound_window, q_of
from addcomp.cover import (CoverInstance, cover_exact, cover_structured, cover_validate,
                           lower_bound_holds, repair_cap)
from addcomp.errors import CapError
from addcomp.sequence import count
from addcomp.verify import (criterion, ladder_trend, lemma_exhaustive, lemma_random,
                            pair_stats, safe_limit, sumset_coverage)


@contextmanager
def criterion_line(n, title, tol, limit=None):
    """Time the body and record one summary line whatever the outcome."""
    info = {"detail": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        dt = time.perf_counter() - t0
        timing = f"{dt:.2f} s" + (f" (limit {limit} s)" if limit else "")
        if ok and limit and dt >= limit:
            ok = False
            info["detail"] = (info["detail"] + "; " if info["detail"] else "") + "too slow"
        status = "PASS" if ok else "FAIL"
        extra = f" [{info['detail']}]" if info["detail"] else ""
        ACCEPTANCE_LINES.append(f"{status} {n:02d} {title} (tol {tol}; {timing}){extra}")
    if limit:
        assert dt < limit, f"criterion {n} took {dt:.2f} s"


def cover_instances(max_m=20, max_size=4):
    terms = greedy_terms(4)
    for m in range(1, max_m + 1):
        seen = set()
        for k in range(1, len(terms) + 1):
            res = frozenset(a % m for a in terms[:k])
            if res not in seen:
                seen.add(res)
                yield m, res, k
        for size in range(1, min(max_size, m) + 1):
            for combo in combinations(range(m), size):
                yield m, frozenset(combo), size


def test_01_cover_oracle_equivalence():
    with criterion_line(1, "cover_exact equals brute-force minimum, m <= 20", "exact", 30) as info:
        n = 0
        for m, res, k in cover_instances():
            sol = cover_exact(CoverInstance(m, res, k))
            assert sol.size == brute_min_size(m, res), (m, sorted(res))
            n += 1
        info["detail"] = f"{n} instances"


def test_02_level_one_structured_cover():
    with criterion_line(2, "L(4) = 2 and level-1 progression cover", "exact"):
        inst = CoverInstance.from_elements(4, [1, 4])
        assert inst.residues == frozenset({0, 1})
        assert cover_exact(inst).size == 2
        sol = cover_structured(2, 4, [1, 4])
        assert sol.size == 2 == 4 // 2
        assert cover_validate(inst, sol.translates)[0]


def test_03_level_two_structured_cover(seq4):
    m, n = 31591, 4
    lo, hi = 7898, 7899 + repair_cap(4)
    with criterion_line(3, "level-2 progression cover size in [7898, 7899 + cap]",
                        f"size in [{lo}, {hi}]", 1) as info:
        try:
            sol = cover_structured(n, m, seq4.terms)
        except CapError as exc:
            info["detail"] = f"unattainable: {exc}"
            raise
        inst = CoverInstance.from_elements(m, seq4.terms)
        assert cover_validate(inst, sol.translates)[0]
        assert lo <= sol.size <= hi


def test_04_lemma():
    with criterion_line(4, "sum/difference lemma: 3969 exhaustive + 10^4 random", "exact", 10):
        assert lemma_exhaustive(6) == (3969, 3969)
        assert lemma_random(10 ** 4, 50, seed=0) == (10 ** 4, 10 ** 4)


def test_05_greedy_determinism(tmp_path, capsys):
    with criterion_line(5, "construct --levels 2 gives (1, 4, 130, 31591)", "exact"):
        out = tmp_path / "seq.json"
        assert main(["construct", "--levels", "2", "--out", str(out)]) == 0
        capsys.readouterr()
        terms = [int(t) for t in json.loads(out.read_text())["terms"]]
        assert terms == [1, 4, 130, 31591]
        assert sorted(t % 4 for t in terms) == [0, 1, 2, 3]
        assert main(["construct", "--levels", "2", "--extra", "1", "--out", str(out)]) == 0
        capsys.readouterr()
        assert json.loads(out.read_text())["terms"][-1] == "32349186"


def test_06_complement_counting(seq5, blocks3):
    with criterion_line(6, "b_count = |b_members(1, x)| for x <= 10^5 (K = 3)", "exact") as info:
        X = 10 ** 5
        members = b_members(blocks3, 1, X)
        U = {b.k: b.U for b in blocks3.blocks}
        assert members == sorted(complement_set(list(seq5.terms), U, 3, X))
        for x in range(1, X + 1):
            assert b_count(blocks3, x) == bisect.bisect_right(members, x), x
        assert b_count(blocks3, 10) == 6 and b_count(blocks3, 130) == 66
        info["detail"] = f"B(10^5) = {len(members)}"


def test_07_block_bound(seq5, blocks3):
    with criterion_line(7, "block bound dominates B(x), 100 samples per window", "exact") as info:
        rng = random.Random(0)
        sampled = {}
        for k in range(1, blocks3.K + 1):
            lo, hi = bound_window(seq5, blocks3, k)
            xs = list(range(lo, hi)) if hi - lo <= 100 else rng.sample(range(lo, hi), 100)
            for x in xs:
                assert b_upper_bound(seq5, blocks3, x, k) >= b_count(blocks3, x), (x, k)
            sampled[k] = len(xs)
        assert b_upper_bound(seq5, blocks3, 130, 2) == 70 >= b_count(blocks3, 130) == 66
        info["detail"] = "samples " + ", ".join(f"k={k}: {v}" for k, v in sampled.items())


def test_08_coverage(seq5, blocks3):
    with criterion_line(8, "A + B covers [5, 10^5] with K = 3, N0 = 5", "exact", 5):
        cov = sumset_coverage(seq5.terms, blocks3, 10 ** 5,
                              exact_limit=safe_limit(seq5, blocks3))
        assert cov.N0 == 5
        assert [g for g in cov.gaps if g >= 5] == []


def test_09_criterion_exactness(seq5, blocks3):
    with criterion_line(9, "criterion at x = 130: T = 74/3, scale = 130/9, R = 111/65", "exact"):
        r = criterion(seq5, blocks3, 130)
        assert r.B == len(b_members(blocks3, 1, 130))
        assert (r.T, r.scale, r.R) == (Fraction(74, 3), Fraction(130, 9), Fraction(111, 65))


def test_10_trend_report(seq6, blocks4):
    with criterion_line(10, "ladder trend R(x_1), R(x_2) reported (K = 4)", "report only") as info:
        trend = ladder_trend(seq6, blocks4)
        assert len(trend["R"]) == 2
        r1, r2 = trend["R"]
        info["detail"] = (f"R(x_1) = {float(r1):.4f}, R(x_2) = {float(r2):.4f}, "
                          f"decreasing = {trend['decreasing']}")
        if trend["warning"]:
            warnings.warn(trend["warning"])


def test_11_invariants(seq6, blocks4):
    with criterion_line(11, "cover validity, pair sums, L k >= m, growth", "exact") as info:
        checked = 0
        for b in blocks4.blocks:
            inst = CoverInstance.from_elements(b.a, seq6.terms[: b.k])
            assert cover_validate(inst, b.U)[0]
            assert len(b.U) * inst.k >= inst.m
            checked += 1
        for m, res, k in cover_instances(max_m=12, max_size=3):
            inst = CoverInstance(m, res, k)
            sol = cover_exact(inst)
            assert cover_validate(inst, sol.translates)[0] and lower_bound_holds(inst, sol)
            checked += 1
        for x in (1, 4, 9, 130, 5000, 31591, 60000):
            ps = pair_stats(seq6.terms, b_members(blocks4, 1, x), x)
            AB = count(seq6, x) * b_count(blocks4, x)
            assert sum(ps.sigma.values()) == AB == sum(ps.delta.values())
        t = seq6.terms
        assert all(t[m] >= m ** 5 * t[m - 1] for m in range(1, len(t)))
        assert all(q_of(seq6, k) >= 1 for k in range(1, len(t)))
        info["detail"] = f"{checked} covers"
