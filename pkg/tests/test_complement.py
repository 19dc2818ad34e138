import bisect
from fractions import Fraction

import pytest
from oracles import complement_set

from addcomp.complement import (Block, ComplementBlocks, b_count, b_members, b_upper_bound,
                                bound_window, build_blocks, q_of)
from addcomp.cover import CoverInstance, cover_validate
from addcomp.errors import CapError, ParseError, PreconditionError, SpanError
from addcomp.sequence import Sequence


@pytest.mark.parametrize("k, q", [(1, 4), (2, 2), (3, 3)])
def test_q_values(seq4, k, q):
    assert q_of(seq4, k) == q


def test_q_needs_next_term(seq4):
    with pytest.raises(PreconditionError):
        q_of(seq4, 4)


def test_first_blocks(blocks1, blocks2):
    b1 = blocks1.blocks[0]
    assert (b1.U, b1.j_min, b1.j_max) == ((1,), 3, 8)
    assert b_members(blocks1, 1, 9) == [4, 5, 6, 7, 8, 9]
    b2 = blocks2.blocks[1]
    assert (b2.a, b2.U, b2.j_min, b2.j_max) == (4, (1, 3), 1, 97)
    assert b2.hi == 391


def test_blocks_need_two_more_terms():
    with pytest.raises(PreconditionError):
        build_blocks(Sequence((1, 4)), 1)


@pytest.mark.parametrize("x, expected", [(10, 6), (130, 66), (3, 0), (8, 5), (4, 1)])
def test_b_count(blocks2, x, expected):
    assert b_count(blocks2, x) == expected


def test_b_members(blocks2):
    assert b_members(blocks2, 1, 10) == [4, 5, 6, 7, 8, 9]
    assert b_members(blocks2, 388, 391) == [389, 391]
    assert b_members(blocks2, 1, 3) == []


def test_span_and_caps(blocks2):
    with pytest.raises(SpanError):
        b_count(blocks2, 392)
    with pytest.raises(CapError):
        b_members(blocks2, 1, 300, cap=100)


def test_count_matches_definition_oracle(seq5, blocks3):
    U = {b.k: b.U for b in blocks3.blocks}
    upto = 20000
    members = sorted(complement_set(list(seq5.terms), U, 3, upto))
    assert b_members(blocks3, 1, upto) == members
    for x in range(1, upto + 1, 7):
        assert b_count(blocks3, x) == bisect.bisect_right(members, x)


def test_upper_bound_examples(seq4, blocks2):
    assert b_upper_bound(seq4, blocks2, 8, 2) == 10 >= b_count(blocks2, 8)
    assert b_upper_bound(seq4, blocks2, 130, 2) == 70 >= b_count(blocks2, 130)
    assert isinstance(b_upper_bound(seq4, blocks2, 130, 2), Fraction)


def test_upper_bound_window(seq4, blocks2):
    assert bound_window(seq4, blocks2, 2) == (8, 260)
    # the first window [q_1 a_1, (q_2 - 1) a_2) = [4, 4) is empty
    assert bound_window(seq4, blocks2, 1) == (4, 4)
    with pytest.raises(SpanError):
        b_upper_bound(seq4, blocks2, 4, 1)
    with pytest.raises(SpanError):
        b_upper_bound(seq4, blocks2, 260, 2)


def test_block_invariants(seq6, blocks4):
    for b in blocks4.blocks:
        ci = CoverInstance.from_elements(b.a, seq6.terms[: b.k])
        assert cover_validate(ci, b.U)[0]
        assert b.j_min == q_of(seq6, b.k) - 1
        assert b.j_max == q_of(seq6, b.k + 1) * seq6[b.k + 1] // b.a
    for b1, b3 in zip(blocks4.blocks, blocks4.blocks[2:]):
        assert b1.hi < b3.lo
    assert blocks4.safe_limit == (q_of(seq6, 5) - 1) * seq6[5]
    assert [b.cover for b in blocks4.blocks] == ["exact-minimum"] * 3 + ["upper-bound"]


def test_overlapping_blocks_rejected():
    with pytest.raises(PreconditionError):
        ComplementBlocks((Block(1, 1, (1,), 0, 50), Block(2, 4, (1,), 1, 3),
                          Block(3, 10, (1,), 1, 2)))


def test_json_round_trip(blocks4):
    text = blocks4.to_json()
    back = ComplementBlocks.from_json(text)
    assert back == blocks4
    assert back.to_json() == text


def test_json_parse_error():
    with pytest.raises(ParseError):
        ComplementBlocks.from_json('{"blocks": [{"k": 1}]}')
