"""Thin sequences with exact additive complements: construction and checks."""

from .complement import ComplementBlocks, b_count, b_members, b_upper_bound, build_blocks, q_of
from .cover import (CoverInstance, CoverSolution, cover_exact, cover_greedy,
                    cover_structured, cover_validate)
from .errors import (AddcompError, CapError, ParseError, PreconditionError, SpanError,
                     VerificationError)
from .greedy import LevelLadder, build_sequence, level_ladder, next_term
from .sequence import Sequence, count, growth_ratios, largest_le
from .verify import (CriterionReport, PairStats, criterion, criterion_sweep, lemma_check,
                     pair_stats, sumset_coverage)

__version__ = "0.1.0"
