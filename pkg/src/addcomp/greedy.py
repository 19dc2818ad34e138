"""Greedy construction of the thin sequence and its level ladder.

Seeds a_1 = 1, a_2 = 4.  Levels n_1 = 2, n_{k+1} = a_{n_k}.  While filling
a_{n_k+1}, ..., a_{n_{k+1}} every new term takes the smallest residue modulo
n_{k+1} not yet used by earlier terms, so that a_1..a_{n_{k+1}} end up a
complete residue system mod n_{k+1}.  Each term is the least integer with
that residue that is strictly above f(m) m^4 a_m.

The divisibility condition n_k | a_{n_k} is not enforced: for k >= 2 it
cannot hold together with the complete-residue requirement (a_{n_{k-1}} =
n_k already takes residue 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapError, PreconditionError
from .sequence import Sequence, growth_factor

SEEDS = (1, 4)
FIRST_LEVEL = 2
MAX_TERMS = 64


@dataclass(frozen=True)
class Level:
    k: int
    n: int
    x: int | None  # a_{n+1}, the evaluation point, once built


@dataclass(frozen=True)
class LevelLadder:
    levels: tuple[Level, ...]

    def __iter__(self):
        return iter(self.levels)

    def __len__(self):
        return len(self.levels)

    def points(self) -> list[int]:
        return [lv.x for lv in self.levels if lv.x is not None]

    def moduli(self, seq: Sequence) -> set[int]:
        """The values a_{n_k} for stored levels (where the progression cover applies)."""
        return {seq[lv.n] for lv in self.levels}


@dataclass
class GreedyState:
    terms: list[int]
    modulus: int            # n_{k+1}, the modulus the current block must fill
    level_end: int          # index n_{k+1}
    used: set[int] = field(default_factory=set)
    growth_exponent: int = 4
    growth_factor_rule: str = "linear"

    @classmethod
    def initial(cls, growth_factor_rule: str = "linear", growth_exponent: int = 4) -> "GreedyState":
        terms = list(SEEDS)
        modulus = terms[FIRST_LEVEL - 1]
        return cls(terms, modulus, modulus, {a % modulus for a in terms},
                   growth_exponent, growth_factor_rule)


def next_term(state: GreedyState) -> int:
    """Append and return the next greedy term, advancing the level when full."""
    m = len(state.terms)
    if m >= state.level_end:
        _advance_level(state)
    mod = state.modulus
    r = next(i for i in range(mod) if i not in state.used)
    floor = (growth_factor(state.growth_factor_rule, m) * m ** state.growth_exponent
             * state.terms[-1] + 1)
    term = floor + (r - floor) % mod
    state.terms.append(term)
    state.used.add(r)
    return term


def _advance_level(state: GreedyState) -> None:
    # level just completed at index level_end; next modulus is a_{level_end}
    mod = state.terms[state.level_end - 1]
    used = {a % mod for a in state.terms}
    if len(used) != len(state.terms):
        raise PreconditionError("residues collide at level boundary")
    state.modulus = mod
    state.level_end = mod
    state.used = used


def build_sequence(levels: int, growth_factor_rule: str = "linear", extra_terms: int = 0,
                   max_terms: int = MAX_TERMS) -> tuple[Sequence, LevelLadder]:
    """Terms a_1..a_{n_K} (plus `extra_terms` further terms) and their ladder."""
    if levels < 1:
        raise PreconditionError("levels must be >= 1")
    if extra_terms < 0:
        raise PreconditionError("extra_terms must be >= 0")
    state = GreedyState.initial(growth_factor_rule)
    target = FIRST_LEVEL
    for _ in range(levels - 1):
        while len(state.terms) < target:
            _step(state, max_terms)
        target = state.terms[target - 1]
        if target + extra_terms > max_terms:
            raise CapError(f"level {levels} needs {target} terms; cap is {max_terms}")
    while len(state.terms) < target + extra_terms:
        _step(state, max_terms)
    seq = Sequence(tuple(state.terms), state.growth_exponent, growth_factor_rule)
    return seq, level_ladder(seq)


def _step(state: GreedyState, max_terms: int) -> None:
    if len(state.terms) >= max_terms:
        raise CapError(f"term cap {max_terms} reached")
    next_term(state)


def level_ladder(seq: Sequence) -> LevelLadder:
    """Levels k with a_{n_k} stored; x_k = a_{n_k + 1} when that term exists."""
    levels = []
    n, k = FIRST_LEVEL, 1
    while n <= len(seq):
        x = seq[n + 1] if n + 1 <= len(seq) else None
        levels.append(Level(k, n, x))
        n, k = seq[n], k + 1
    return LevelLadder(tuple(levels))


def crs_levels(seq: Sequence) -> dict[int, bool]:
    """For each stored level n_k: do a_1..a_{n_k} form a complete residue system mod n_k?"""
    out = {}
    for lv in level_ladder(seq):
        out[lv.n] = sorted(a % lv.n for a in seq.terms[: lv.n]) == list(range(lv.n))
    return out
