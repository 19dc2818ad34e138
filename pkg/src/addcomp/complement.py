"""Block construction of the exact complement B and exact counting on it.

B = V_1 ∪ V_2 ∪ ... with V_k = U_k + a_k * {j_min(k), ..., j_max(k)}, where
U_k ⊆ [1, a_k] covers Z_{a_k} together with A ∩ [1, a_k],
j_min(k) = q_k - 1 and j_max(k) = floor(q_{k+1} a_{k+1} / a_k).
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from . import cover as cv
from .errors import CapError, ParseError, PreconditionError, SpanError
from .greedy import level_ladder
from .sequence import Sequence

ENUM_CAP = 10 ** 7


def q_of(seq: Sequence, k: int) -> int:
    """q_k = floor(a_{k+1} / (k^4 a_k)), checked against its floor sandwich."""
    if k < 1 or k + 1 > len(seq):
        raise PreconditionError(f"q_{k} needs a_{k} and a_{k + 1}")
    unit = k ** 4 * seq[k]
    q = seq[k + 1] // unit
    if not (q * unit <= seq[k + 1] < (q + 1) * unit):
        raise PreconditionError(f"q_{k} sandwich fails")
    if q < 1:
        raise PreconditionError(f"q_{k} = {q}; the sequence grows too slowly for the blocks")
    return q


@dataclass(frozen=True)
class Block:
    k: int
    a: int
    U: tuple[int, ...]
    j_min: int
    j_max: int
    cover: str = ""

    @property
    def lo(self) -> int:
        return self.U[0] + self.j_min * self.a

    @property
    def hi(self) -> int:
        return self.U[-1] + self.j_max * self.a

    def count_le(self, x: int) -> int:
        """|V_k ∩ [1, x]|; the (u, j) pairs give distinct integers since U ⊆ [1, a]."""
        if x < self.lo:
            return 0
        j, rem = divmod(x, self.a)
        # u + j' a <= x  <=>  j' <= j when u <= rem, else j' <= j - 1
        below = bisect_right(self.U, rem)
        total = 0
        for top, n_u in ((j, below), (j - 1, len(self.U) - below)):
            span = min(top, self.j_max) - self.j_min + 1
            if span > 0:
                total += span * n_u
        return total

    def contains(self, y: int) -> bool:
        j, u = divmod(y, self.a)
        if u == 0:
            j, u = j - 1, self.a
        i = bisect_left(self.U, u)
        return i < len(self.U) and self.U[i] == u and self.j_min <= j <= self.j_max

    def members(self, lo: int, hi: int) -> list[int]:
        lo, hi = max(lo, self.lo), min(hi, self.hi)
        if lo > hi:
            return []
        out = []
        for j in range(max(self.j_min, (lo - self.a) // self.a), min(self.j_max, hi // self.a) + 1):
            base = j * self.a
            out.extend(base + u for u in self.U if lo <= base + u <= hi)
        out.sort()
        return out


@dataclass(frozen=True)
class ComplementBlocks:
    blocks: tuple[Block, ...]
    safe_limit: int | None = None   # B ∩ [1, x] is final for x <= safe_limit
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for b in self.blocks:
            if list(b.U) != sorted(set(b.U)) or b.U[0] < 1 or b.U[-1] > b.a:
                raise PreconditionError(f"U_{b.k} must be sorted distinct values in [1, a_k]")
            if b.j_min > b.j_max:
                raise PreconditionError(f"empty j range in block {b.k}")
        for b1, b3 in zip(self.blocks, self.blocks[2:]):
            if not b1.hi < b3.lo:
                raise PreconditionError(f"blocks {b1.k} and {b3.k} overlap")

    @property
    def K(self) -> int:
        return len(self.blocks)

    @property
    def span(self) -> int:
        return max(b.hi for b in self.blocks)

    def L(self, k: int) -> int:
        return len(self.blocks[k - 1].U)

    @cached_property
    def _overlaps(self) -> list[list[int]]:
        # sorted members of V_i ∩ V_{i+1}; only adjacent blocks can meet
        out = []
        for b, nb in zip(self.blocks, self.blocks[1:]):
            lo, hi = nb.lo, b.hi
            if lo > hi:
                out.append([])
                continue
            small, other = (nb, b) if (hi - lo) // nb.a * len(nb.U) <= (hi - lo) // b.a * len(b.U) else (b, nb)
            out.append([y for y in small.members(lo, hi) if other.contains(y)])
        return out

    def contains(self, y: int) -> bool:
        return any(b.contains(y) for b in self.blocks if b.lo <= y <= b.hi)

    # serialization

    def to_json(self) -> str:
        payload = {
            "blocks": [
                {"k": b.k, "a_k": str(b.a), "U_k": [str(u) for u in b.U],
                 "j_min": str(b.j_min), "j_max": str(b.j_max), "cover": b.cover}
                for b in self.blocks
            ],
            "safe_limit": None if self.safe_limit is None else str(self.safe_limit),
        }
        return json.dumps(payload, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ComplementBlocks":
        try:
            data = json.loads(text)
            blocks = tuple(
                Block(int(b["k"]), _dec(b["a_k"]), tuple(_dec(u) for u in b["U_k"]),
                      _dec(b["j_min"]), _dec(b["j_max"]), b.get("cover", ""))
                for b in data["blocks"]
            )
            safe = data.get("safe_limit")
            return cls(blocks, None if safe is None else _dec(safe))
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise ParseError(f"bad block file: {exc}") from exc

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path) -> "ComplementBlocks":
        return cls.from_json(Path(path).read_text())


def _dec(s) -> int:
    if not isinstance(s, str) or not s.isdigit():
        raise ValueError(f"expected a decimal string, got {s!r}")
    return int(s)


def choose_cover(seq: Sequence, k: int, strategy: str = "auto",
                 exact_cap: int = cv.EXACT_CAP, ladder_moduli=frozenset()) -> cv.CoverSolution:
    """U_k for modulus a_k.

    auto: exact below the cap, the progression cover at ladder moduli (greedy
    if its repair budget runs out), greedy elsewhere.
    """
    a = seq[k]
    elems = seq.terms[:k]
    inst = cv.CoverInstance.from_elements(a, elems)
    if strategy == "exact":
        return cv.cover_exact(inst, exact_cap)
    if strategy == "greedy":
        return cv.cover_greedy(inst)
    if strategy != "auto":
        raise PreconditionError(f"unknown cover strategy {strategy!r}")
    if a <= exact_cap:
        return cv.cover_exact(inst, exact_cap)
    step = _ladder_step(seq, a) if a in ladder_moduli else None
    if step is not None:
        try:
            return cv.cover_structured(step, a, elems)
        except CapError as exc:
            sol = cv.cover_greedy(inst)
            sol.notes["structured_failed"] = str(exc)
            return sol
    return cv.cover_greedy(inst)


def _ladder_step(seq: Sequence, a: int) -> int | None:
    for lv in level_ladder(seq):
        if seq[lv.n] == a:
            return lv.n
    return None


def build_blocks(seq: Sequence, K: int, strategy: str = "auto",
                 exact_cap: int = cv.EXACT_CAP) -> ComplementBlocks:
    """Blocks V_1..V_K.  Needs a_1..a_{K+2}: j_max(K) uses q_{K+1}."""
    if K < 1:
        raise PreconditionError("K must be >= 1")
    if len(seq) < K + 2:
        raise PreconditionError(f"{K} blocks need a_1..a_{K + 2}; only {len(seq)} terms stored")
    q = {k: q_of(seq, k) for k in range(1, K + 2)}
    moduli = level_ladder(seq).moduli(seq)
    blocks = []
    for k in range(1, K + 1):
        sol = choose_cover(seq, k, strategy, exact_cap, moduli)
        inst = cv.CoverInstance.from_elements(seq[k], seq.terms[:k])
        ok, missing = cv.cover_validate(inst, sol.translates)
        if not ok:
            raise PreconditionError(f"U_{k} leaves {len(missing)} residues uncovered")
        j_max = q[k + 1] * seq[k + 1] // seq[k]
        blocks.append(Block(k, seq[k], tuple(sorted(sol.translates)), q[k] - 1, j_max, sol.exactness))
    safe = (q[K + 1] - 1) * seq[K + 1]
    return ComplementBlocks(tuple(blocks), safe, {"q": q})


def b_count(blocks: ComplementBlocks, x: int) -> int:
    """|B ∩ [1, x]| for the stored blocks, adjacent overlaps counted once."""
    if x > blocks.span:
        raise SpanError(f"x={x} beyond the stored blocks (last member {blocks.span})")
    if x < 1:
        return 0
    total = sum(b.count_le(x) for b in blocks.blocks)
    total -= sum(bisect_right(ov, x) for ov in blocks._overlaps)
    return total


def b_members(blocks: ComplementBlocks, lo: int, hi: int, cap: int = ENUM_CAP) -> list[int]:
    """Sorted distinct members of B in [lo, hi]."""
    if hi - lo + 1 > cap:
        raise CapError(f"window of {hi - lo + 1} exceeds enumeration cap {cap}")
    if hi > blocks.span:
        raise SpanError(f"hi={hi} beyond the stored blocks (last member {blocks.span})")
    found = set()
    for b in blocks.blocks:
        found.update(b.members(lo, hi))
    return sorted(found)


def bound_window(seq: Sequence, blocks: ComplementBlocks, k: int) -> tuple[int, int]:
    """Half-open range [q_k a_k, (q_{k+1} - 1) a_{k+1}) where the block bound applies."""
    if not 1 <= k <= blocks.K:
        raise PreconditionError(f"k={k} outside 1..{blocks.K}")
    return q_of(seq, k) * seq[k], (q_of(seq, k + 1) - 1) * seq[k + 1]


def b_upper_bound(seq: Sequence, blocks: ComplementBlocks, x: int, k: int) -> Fraction:
    """(floor(x/a_k) - q_k + 2) L(a_k) + sum_{i=2..k} (floor(q_i a_i / a_{i-1}) - q_{i-1} + 2) L(a_{i-1})."""
    lo, hi = bound_window(seq, blocks, k)
    if not lo <= x < hi:
        raise SpanError(f"x={x} outside [{lo}, {hi}) for k={k}")
    total = (x // seq[k] - q_of(seq, k) + 2) * blocks.L(k)
    for i in range(2, k + 1):
        total += (q_of(seq, i) * seq[i] // seq[i - 1] - q_of(seq, i - 1) + 2) * blocks.L(i - 1)
    return Fraction(total)


def l_ratios(seq: Sequence, blocks: ComplementBlocks) -> list[tuple[int, Fraction]]:
    """(a_k, A(a_k) |U_k| / a_k) per block; 1 would be a perfect tiling."""
    return [(b.a, Fraction(b.k * len(b.U), b.a)) for b in blocks.blocks]
