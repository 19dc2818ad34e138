"""Covering Z_m by translates of a residue set.

Given the residues R of A ∩ [1, m] modulo m, L(m) is the least number of
translates b_1..b_l with R + {b_j} = Z_m.  Translates are reported as
representatives in [1, m] (the value m stands for the zero class), which
matches how complement blocks take U ⊆ [1, a_k].
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from math import gcd
from dataclasses import dataclass, field
from typing import Iterable

from .errors import CapError, PreconditionError

EXACT_CAP = 2 ** 14

EXACT = "exact-minimum"
UPPER_BOUND = "upper-bound"
STRUCTURED = "structured"


@dataclass(frozen=True)
class CoverInstance:
    m: int
    residues: frozenset
    k: int

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError("modulus must be positive")
        res = frozenset(int(r) % self.m for r in self.residues)
        object.__setattr__(self, "residues", res)
        if not res:
            raise PreconditionError("residue set is empty")
        if self.k < len(res):
            raise PreconditionError("k is smaller than the number of distinct residues")

    @classmethod
    def from_elements(cls, m: int, elements: Iterable[int]) -> "CoverInstance":
        """Instance for the elements of A ∩ [1, m] (elements > m are dropped)."""
        elems = [int(a) for a in elements if 1 <= int(a) <= m]
        if not elems:
            raise PreconditionError(f"no elements in [1, {m}]")
        return cls(m, frozenset(a % m for a in elems), len(elems))


@dataclass(frozen=True)
class CoverSolution:
    translates: tuple[int, ...]
    exactness: str
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.translates)

    def ratio(self, inst: CoverInstance):
        """The A(m) L(m) / m diagnostic, as a float for display."""
        return inst.k * self.size / inst.m


class _Masks:
    """Bitmask of R + t in Z_m, cached per translate."""

    def __init__(self, inst: CoverInstance):
        self.m = inst.m
        self.full = (1 << inst.m) - 1
        self.pattern = sum(1 << r for r in inst.residues)
        self._cache: dict[int, int] = {}

    def __call__(self, t: int) -> int:
        got = self._cache.get(t)
        if got is None:
            s = t % self.m
            got = ((self.pattern << s) | (self.pattern >> (self.m - s))) & self.full
            self._cache[t] = got
        return got


def _rep(t: int, m: int) -> int:
    t %= m
    return t if t else m


def cover_validate(inst: CoverInstance, translates: Iterable[int]) -> tuple[bool, list[int]]:
    """Return (covers everything, sorted uncovered residues)."""
    m = inst.m
    covered = bytearray(m)
    for t in translates:
        for r in inst.residues:
            covered[(r + t) % m] = 1
    missing = [i for i in range(m) if not covered[i]]
    return not missing, missing


def _lower_bound(inst: CoverInstance) -> int:
    return -(-inst.m // len(inst.residues))


class _Search:
    """Depth-first branch and bound over translates of one instance.

    Branches on the smallest uncovered residue (one of its |R| covering
    translates must be chosen) and prunes when the uncovered count exceeds
    budget * |R|.  Failed (mask, floor) states are memoized with the largest
    budget known to fail.
    """

    def __init__(self, inst: CoverInstance):
        self.m = inst.m
        self.masks = _Masks(inst)
        self.full = self.masks.full
        res = sorted(inst.residues)
        self.width = len(res)
        # options[r]: translates whose coverage contains residue r, ascending
        self.options = [sorted({_rep(r - x, self.m) for x in res}) for r in range(self.m)]
        # reach[f]: residues coverable by some translate > f
        self.reach = [0] * (self.m + 1)
        for f in range(self.m - 1, -1, -1):
            self.reach[f] = self.reach[f + 1] | self.masks(f + 1)
        self.failed: dict[tuple[int, int], int] = {}
        self.path: list[int] = []

    def feasible(self, mask: int, budget: int, floor: int) -> bool:
        """Can `budget` more translates, all > floor, finish the cover?"""
        if mask == self.full:
            return True
        if budget * self.width < self.m - mask.bit_count():
            return False
        if ~mask & self.full & ~self.reach[floor]:
            return False
        return self._search(mask, budget, floor)

    def _search(self, mask: int, budget: int, floor: int) -> bool:
        full, masks, failed = self.full, self.masks, self.failed
        reach = self.reach[floor]
        free = ~mask & full
        r = (free & -free).bit_length() - 1
        rest = budget - 1
        for t in self.options[r]:
            if t <= floor:
                continue
            nxt = mask | masks(t)
            if nxt == full:
                self.path.append(t)
                return True
            if rest * self.width < self.m - nxt.bit_count() or failed.get((nxt, floor), -1) >= rest:
                continue
            if ~nxt & full & ~reach:
                continue
            if self._search(nxt, rest, floor):
                self.path.append(t)
                return True
        failed[(mask, floor)] = budget
        return False

    def min_size(self, start: int) -> int:
        size = start
        self.path.clear()
        while not self.feasible(0, size, 0):
            size += 1
        return size

    def lexicographic(self, size: int) -> list[int]:
        """Lexicographically smallest sorted cover of the given (optimal) size."""
        chosen: list[int] = []
        mask, floor = 0, 0
        for left in range(size - 1, -1, -1):
            free = ~mask & self.full
            r = (free & -free).bit_length() - 1
            # r must be covered by this or a later (larger) translate
            for t in range(floor + 1, self.options[r][-1] + 1):
                nxt = mask | self.masks(t)
                if nxt != mask and self.feasible(nxt, left, t):
                    chosen.append(t)
                    mask, floor = nxt, t
                    break
        if mask != self.full or len(chosen) != size:
            raise AssertionError(f"size {size} is not attainable")
        return chosen


# L(m) is invariant under r -> u r + c with gcd(u, m) = 1; small moduli share
# one size computation per affine class.
_AFFINE_LIMIT = 64


def _affine_canonical(m: int, residues) -> tuple[int, ...]:
    # the minimal image starts with 0, so only shifts onto an element matter
    best = None
    for u in range(1, m + 1):
        if gcd(u, m) != 1:
            continue
        image = [u * r % m for r in residues]
        for s in image:
            cand = tuple(sorted((x - s) % m for x in image))
            if best is None or cand < best:
                best = cand
    return best


@lru_cache(maxsize=1 << 14)
def _class_min_size(m: int, canon: tuple[int, ...]) -> int:
    inst = CoverInstance(m, frozenset(canon), len(canon))
    return _Search(inst).min_size(_lower_bound(inst))


def cover_exact(inst: CoverInstance, cap: int = EXACT_CAP,
                lexicographic: bool = True) -> CoverSolution:
    """Minimum cover by branch and bound (see _Search).

    The result is the lexicographically smallest optimal translate list; with
    ``lexicographic=False`` the first optimal cover found is returned instead
    (cheaper, same size).
    """
    m = inst.m
    if m > cap:
        raise CapError(f"m={m} exceeds exact-search cap {cap}")
    search = _Search(inst)
    if lexicographic and m <= _AFFINE_LIMIT:
        size = _class_min_size(m, _affine_canonical(m, inst.residues))
    else:
        size = search.min_size(_lower_bound(inst))
        if not lexicographic:
            return CoverSolution(tuple(sorted(search.path)), EXACT)
    return CoverSolution(tuple(search.lexicographic(size)), EXACT)


def _greedy_fill(inst: CoverInstance, covered: bytearray, limit: int | None = None) -> list[int]:
    """Lazy greedy on top of an existing coverage state (mutated in place).

    Picks the translate with the most newly covered residues, smallest value
    first on ties.  Stops once everything is covered or `limit` picks are made.
    """
    m = inst.m
    res = sorted(inst.residues)
    left = m - sum(covered)
    heap = [(-len(res), t) for t in range(1, m + 1)]
    picks: list[int] = []
    while left and (limit is None or len(picks) < limit):
        neg, t = heapq.heappop(heap)
        gain = sum(1 for r in res if not covered[(r + t) % m])
        if gain != -neg:
            if gain:
                heapq.heappush(heap, (-gain, t))
            continue
        picks.append(t)
        for r in res:
            covered[(r + t) % m] = 1
        left -= gain
    return picks


def cover_greedy(inst: CoverInstance) -> CoverSolution:
    """Greedy upper bound for L(m); valid for any modulus."""
    picks = _greedy_fill(inst, bytearray(inst.m))
    return CoverSolution(tuple(sorted(picks)), UPPER_BOUND)


def repair_cap(k: int) -> int:
    return -(-k // 2) + 2


def cover_structured(n: int, m: int, elements: Iterable[int],
                     max_extra: int | None = None) -> CoverSolution:
    """Arithmetic-progression cover {n, 2n, ..., ceil(m/n) n} (mod m).

    `elements` are the integers of A ∩ [1, m]; they must hit every class mod
    n.  When n does not divide m the progression can leave gaps; those are
    patched greedily with at most `max_extra` translates (default
    ceil(k/2) + 2), otherwise CapError.
    """
    elems = sorted(int(a) for a in elements if 1 <= int(a) <= m)
    if n < 1 or not elems:
        raise PreconditionError("need n >= 1 and at least one element in [1, m]")
    if len({a % n for a in elems}) != n:
        raise PreconditionError(f"elements do not cover every class mod {n}")
    inst = CoverInstance.from_elements(m, elems)
    if max_extra is None:
        max_extra = repair_cap(inst.k)
    base = sorted({_rep(j * n, m) for j in range(1, -(-m // n) + 1)})
    covered = bytearray(m)
    for t in base:
        for r in inst.residues:
            covered[(r + t) % m] = 1
    gaps = m - sum(covered)
    extra = []
    if gaps:
        extra = _greedy_fill(inst, covered, limit=max_extra)
        if not all(covered):
            raise CapError(
                f"structured cover mod {m} with step {n} leaves {gaps} gaps; "
                f"{max_extra} repair translates are not enough")
    translates = tuple(sorted(set(base) | set(extra)))
    return CoverSolution(translates, STRUCTURED,
                         {"step": n, "base": len(base), "extra": len(extra)})


def lower_bound_holds(inst: CoverInstance, sol: CoverSolution) -> bool:
    return sol.size * inst.k >= inst.m


def solve(inst: CoverInstance, mode: str = "exact", cap: int = EXACT_CAP) -> CoverSolution:
    """Dispatch used by the CLI: exact, greedy, or auto (exact under cap)."""
    if mode == "exact":
        return cover_exact(inst, cap)
    if mode == "greedy":
        return cover_greedy(inst)
    if mode == "auto":
        return cover_exact(inst, cap) if inst.m <= cap else cover_greedy(inst)
    raise PreconditionError(f"unknown cover mode {mode!r}")


__all__ = [
    "CoverInstance", "CoverSolution", "cover_exact", "cover_greedy",
    "cover_structured", "cover_validate", "solve", "EXACT", "UPPER_BOUND",
    "STRUCTURED", "EXACT_CAP", "repair_cap", "lower_bound_holds",
]
