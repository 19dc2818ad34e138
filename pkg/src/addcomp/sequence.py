"""Finite prefixes of increasing integer sequences and their counting functions.

All queries are exact on ``[1, last term]``; anything beyond the stored
prefix is rejected rather than extrapolated.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .errors import ParseError, PreconditionError, SpanError

# name -> divergent factor f(m) used in a_{m+1} >= f(m) * m**e * a_m
GROWTH_RULES: dict[str, Callable[[int], int]] = {
    "linear": lambda m: m,
    "quadratic": lambda m: m * m,
    "cubic": lambda m: m ** 3,
}
NO_GROWTH = "none"


def growth_factor(rule: str, m: int) -> int:
    try:
        return GROWTH_RULES[rule](m)
    except KeyError:
        raise PreconditionError(f"unknown growth rule {rule!r}") from None


@dataclass(frozen=True)
class Sequence:
    """Strictly increasing positive integers a_1 < a_2 < ... < a_N.

    ``growth_factor_rule`` names f in a_{m+1} >= f(m) m^e a_m; the rule
    ``"none"`` disables the growth check (useful for arbitrary test sets).
    """

    terms: tuple[int, ...]
    growth_exponent: int = 4
    growth_factor_rule: str = "linear"

    def __post_init__(self):
        terms = tuple(int(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise PreconditionError("sequence needs at least one term")
        if terms[0] < 1:
            raise PreconditionError("terms must be positive")
        for i in range(len(terms) - 1):
            if terms[i + 1] <= terms[i]:
                raise PreconditionError(f"terms not strictly increasing at index {i + 1}")
        if self.growth_factor_rule != NO_GROWTH:
            bad = self.growth_violations()
            if bad:
                raise PreconditionError(f"growth condition fails at m={bad[0]}")

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, n: int) -> int:
        """1-based access: ``seq[n]`` is a_n."""
        if not 1 <= n <= len(self.terms):
            raise SpanError(f"a_{n} not stored (prefix has {len(self.terms)} terms)")
        return self.terms[n - 1]

    @property
    def last(self) -> int:
        return self.terms[-1]

    def growth_bound(self, m: int) -> int:
        """Least value a_{m+1} may take: f(m) * m^e * a_m."""
        f = growth_factor(self.growth_factor_rule, m)
        return f * m ** self.growth_exponent * self[m]

    def growth_violations(self) -> list[int]:
        return [m for m in range(1, len(self.terms))
                if self.terms[m] < self.growth_bound(m)]

    # serialization

    def to_json(self) -> str:
        payload = {
            "terms": [str(t) for t in self.terms],
            "growth_exponent": self.growth_exponent,
            "growth_factor_rule": self.growth_factor_rule,
        }
        return json.dumps(payload, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Sequence":
        try:
            data = json.loads(text)
            terms = tuple(_parse_decimal(t) for t in data["terms"])
            return cls(terms, int(data.get("growth_exponent", 4)),
                       data.get("growth_factor_rule", "linear"))
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise ParseError(f"bad sequence file: {exc}") from exc

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path) -> "Sequence":
        return cls.from_json(Path(path).read_text())


def _parse_decimal(s) -> int:
    if not isinstance(s, str) or not s.isdigit():
        raise ValueError(f"expected a decimal string, got {s!r}")
    return int(s)


def _check_in_prefix(seq: Sequence, x: int) -> None:
    if x < 1:
        raise PreconditionError("x must be >= 1")
    if x > seq.last:
        raise SpanError(f"x={x} exceeds the stored prefix (last term {seq.last})")


def count(seq: Sequence, x: int) -> int:
    """A(x): number of terms <= x."""
    _check_in_prefix(seq, x)
    return bisect_right(seq.terms, x)


def largest_le(seq: Sequence, x: int) -> int:
    """a*(x): the largest term not exceeding x."""
    _check_in_prefix(seq, x)
    i = bisect_right(seq.terms, x)
    if i == 0:
        raise PreconditionError(f"no term <= {x}")
    return seq.terms[i - 1]


def growth_ratios(seq: Sequence) -> list[tuple[int, Fraction, Fraction]]:
    """Exact (m, a_{m+1}/(m a_m), a_{m+1}/(m^4 a_m)) for every consecutive pair."""
    if len(seq) < 2:
        raise PreconditionError("need at least two terms")
    out = []
    for m in range(1, len(seq)):
        nxt, cur = seq[m + 1], seq[m]
        out.append((m, Fraction(nxt, m * cur), Fraction(nxt, m ** 4 * cur)))
    return out
