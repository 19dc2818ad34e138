"""Checks on a built pair (A, B): sumset coverage, pair statistics, the
sum/difference lemma, and the exact second-order criterion.

Every quantity here is an integer or a Fraction.  The criterion ratio R(x)
is reported, never compared against 1: the underlying statements are about
limits, not finite samples.
"""

from __future__ import annotations

import csv
import io
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence as Seq

import numpy as np

from .complement import ComplementBlocks, b_count, q_of
from .errors import CapError, PreconditionError, SpanError, VerificationError
from .greedy import level_ladder
from .sequence import Sequence, count, largest_le

SIEVE_CAP = 10 ** 8
ENUM_CAP = 10 ** 7


# -- sumset coverage --------------------------------------------------------

def _repeat(pattern: int, period: int, times: int) -> int:
    """pattern | pattern << period | ... (times copies), by doubling."""
    out, shift = 0, 0
    cur, cur_len = pattern, 1
    while times:
        if times & 1:
            out |= cur << (shift * period)
            shift += cur_len
        times >>= 1
        if times:
            cur |= cur << (cur_len * period)
            cur_len *= 2
    return out


def b_bitmask(blocks: ComplementBlocks, X: int) -> int:
    """Bit n set iff n ∈ B, for 1 <= n <= X."""
    mask = 0
    for b in blocks.blocks:
        top = min(b.j_max, X // b.a)
        if top < b.j_min:
            continue
        pattern = sum(1 << u for u in b.U)
        mask |= _repeat(pattern, b.a, top - b.j_min + 1) << (b.j_min * b.a)
    return mask & ((1 << (X + 1)) - 1)


@dataclass(frozen=True)
class Coverage:
    X: int
    N0: int
    gaps: tuple[int, ...]


def sumset_coverage(a_terms: Iterable[int], blocks: ComplementBlocks, X: int,
                    cap: int = SIEVE_CAP, exact_limit: int | None = None) -> Coverage:
    """Least N0 with [N0, X] ⊆ A + B, and the uncovered integers below N0.

    Stored A terms and B blocks are finite truncations, so anything found
    covered is covered for the full sets too.  Gaps above `exact_limit`
    (where truncation could matter) cannot be decided and raise SpanError.
    """
    if X < 1:
        raise PreconditionError("X must be >= 1")
    if X > cap:
        raise CapError(f"X={X} exceeds sieve cap {cap}")
    bmask = b_bitmask(blocks, X)
    window = ((1 << (X + 1)) - 1) ^ 1
    cov = 0
    for a in sorted(set(a_terms)):
        if a >= X:
            break
        cov |= bmask << a
    missing = window & ~cov
    if missing >> X & 1:
        raise VerificationError(f"{X} itself is not in A + B; no covered tail")
    N0 = missing.bit_length()
    gaps = _bits(missing)
    if exact_limit is not None and gaps and gaps[-1] > exact_limit:
        raise SpanError(f"gap at {gaps[-1]} lies beyond the truncation-safe limit {exact_limit}")
    return Coverage(X, N0 if gaps else 1, tuple(gaps))


def _bits(n: int) -> list[int]:
    out = []
    while n:
        low = n & -n
        out.append(low.bit_length() - 1)
        n ^= low
    return out


def witness(n: int, a_terms: Iterable[int], blocks: ComplementBlocks) -> tuple[int, int] | None:
    """Some (a, b) with a + b = n, a ∈ A, b ∈ B, or None."""
    for a in sorted(a_terms):
        if a >= n:
            break
        if blocks.contains(n - a):
            return a, n - a
    return None


# -- pair statistics ----------------------------------------------------------

@dataclass(frozen=True)
class PairStats:
    x: int
    sigma: dict
    delta: dict


def pair_stats(a_terms: Iterable[int], b_terms: Iterable[int], x: int,
               cap: int = ENUM_CAP) -> PairStats:
    """Windowed counts: sigma(n) of a + b = n, delta(n) of b - a = n, with a, b <= x."""
    A = [a for a in a_terms if a <= x]
    B = [b for b in b_terms if b <= x]
    if len(A) * len(B) > cap:
        raise CapError(f"{len(A) * len(B)} pairs exceed enumeration cap {cap}")
    sigma = Counter(a + b for a in A for b in B)
    delta = Counter(b - a for a in A for b in B)
    return PairStats(x, dict(sigma), dict(delta))


def sum_diff_counts(U: Iterable[int], V: Iterable[int]) -> tuple[Counter, Counter]:
    """Unwindowed sigma(n) = #{u + v = n} and delta(n) = #{v - u = n}."""
    U, V = list(U), list(V)
    return (Counter(u + v for u in U for v in V),
            Counter(v - u for u in U for v in V))


def lemma_check(U: Iterable[int], V: Iterable[int]) -> tuple[int, Fraction, bool]:
    """Compare sum_{sigma>1} (sigma-1) with (1/|U|) sum_{delta>1} (delta-1)."""
    U, V = sorted(set(U)), sorted(set(V))
    if not U or not V:
        raise PreconditionError("U and V must be nonempty")
    sig, dlt = sum_diff_counts(U, V)
    lhs = sum(c - 1 for c in sig.values() if c > 1)
    rhs = Fraction(sum(c - 1 for c in dlt.values() if c > 1), len(U))
    return lhs, rhs, lhs >= rhs


def _lemma_fast(U: np.ndarray, V: np.ndarray) -> tuple[int, int, int]:
    # lhs, rhs numerator, |U|  (rhs = num / |U|)
    off = int(U.max())
    sums = np.bincount((U[:, None] + V[None, :]).ravel())
    diffs = np.bincount((V[None, :] - U[:, None] + off).ravel())
    lhs = int(np.maximum(sums - 1, 0).sum())
    num = int(np.maximum(diffs - 1, 0).sum())
    return lhs, num, len(U)


def lemma_exhaustive(max_elem: int) -> tuple[int, int]:
    """(pairs where the inequality holds, total pairs) over nonempty U, V ⊆ [1, max_elem]."""
    pool = range(1, max_elem + 1)
    subsets = [np.array(c) for r in pool for c in combinations(pool, r)]
    held = 0
    for U in subsets:
        for V in subsets:
            lhs, num, size = _lemma_fast(U, V)
            held += lhs * size >= num
    return held, len(subsets) ** 2


def lemma_random(pairs: int, max_elem: int, seed: int = 0) -> tuple[int, int]:
    """Same as lemma_exhaustive on random nonempty subsets of [1, max_elem]."""
    rng = random.Random(seed)
    pool = list(range(1, max_elem + 1))
    held = 0
    for _ in range(pairs):
        U = np.array(sorted(rng.sample(pool, rng.randint(1, max_elem))))
        V = np.array(sorted(rng.sample(pool, rng.randint(1, max_elem))))
        lhs, num, size = _lemma_fast(U, V)
        held += lhs * size >= num
    return held, pairs


# -- criterion ----------------------------------------------------------------

@dataclass(frozen=True)
class CriterionReport:
    x: int
    A: int
    B: int
    a_star: int
    T: Fraction            # A B - x - a*/A
    scale: Fraction        # a*/A^2
    R: Fraction | None     # T / scale
    exactness_ratio: Fraction   # A B / x

    def row(self) -> dict:
        row = {"x": self.x, "A": self.A, "B": self.B, "a_star": self.a_star}
        for name, val in (("T", self.T), ("scale", self.scale), ("R", self.R),
                          ("exactness", self.exactness_ratio)):
            row[f"{name}_num"] = "" if val is None else val.numerator
            row[f"{name}_den"] = "" if val is None else val.denominator
        return row


CSV_FIELDS = ["x", "A", "B", "a_star", "T_num", "T_den", "scale_num", "scale_den",
              "R_num", "R_den", "exactness_num", "exactness_den"]


def safe_limit(seq: Sequence, blocks: ComplementBlocks) -> int:
    limit = seq.last
    if blocks.safe_limit is not None:
        limit = min(limit, blocks.safe_limit)
    return min(limit, blocks.span)


def criterion(seq: Sequence, blocks: ComplementBlocks, x: int) -> CriterionReport:
    limit = safe_limit(seq, blocks)
    if not 1 <= x <= limit:
        raise SpanError(f"x={x} outside the exact range [1, {limit}]")
    A = count(seq, x)
    B = b_count(blocks, x)
    a_star = largest_le(seq, x)
    T = A * B - x - Fraction(a_star, A)
    scale = Fraction(a_star, A * A)
    R = T / scale if scale > 0 else None
    return CriterionReport(x, A, B, a_star, T, scale, R, Fraction(A * B, x))


def default_points(seq: Sequence, blocks: ComplementBlocks) -> list[int]:
    """Ladder points x_k and block starts q_k a_k inside the exact range."""
    limit = safe_limit(seq, blocks)
    pts = set(level_ladder(seq).points())
    pts.update(q_of(seq, b.k) * b.a for b in blocks.blocks)
    return sorted(p for p in pts if p <= limit)


def criterion_sweep(seq: Sequence, blocks: ComplementBlocks,
                    points: Seq[int] | None = None) -> list[CriterionReport]:
    if points is None:
        points = default_points(seq, blocks)
    return sorted((criterion(seq, blocks, x) for x in points), key=lambda r: r.x)


def ladder_trend(seq: Sequence, blocks: ComplementBlocks) -> dict:
    """R at successive ladder points and whether it decreases.

    A rise is expected at small levels and is reported as a warning only.
    """
    limit = safe_limit(seq, blocks)
    pts = [p for p in level_ladder(seq).points() if p <= limit]
    reports = [criterion(seq, blocks, p) for p in pts]
    decreasing = all(b.R < a.R for a, b in zip(reports, reports[1:]))
    out = {"points": pts, "R": [r.R for r in reports], "decreasing": decreasing, "warning": None}
    if len(reports) >= 2 and not decreasing:
        out["warning"] = ("R(x_k) did not decrease along the ladder; a faster "
                          "growth_factor_rule (e.g. quadratic) moves the ladder "
                          "points further out")
    return out


def write_csv(reports: Iterable[CriterionReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({k: (int(v) if v not in ("", None) else None) for k, v in row.items()})
    return rows
