"""Word-level combinatorics: parsing, reduction, orders, crystal moves."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from basiccat.signword import (
    MINUS,
    PLUS,
    bar,
    crystal_e,
    crystal_f,
    dom_leq,
    flip_at,
    h_prefix,
    h_suffix,
    parse_word,
    reduced_form,
    vee,
    weight,
    word_stats,
    words,
)

word_st = st.text(alphabet=(PLUS, MINUS), max_size=14)


def test_parse_word_accepts_unicode_minus():
    assert parse_word("+−–") == "+--"


def test_parse_word_rejects_garbage():
    with pytest.raises(ValueError):
        parse_word("+x-")
    with pytest.raises(ValueError):
        parse_word(17)


def test_words_lex_order_and_count():
    ws = list(words(3))
    assert len(ws) == 8
    assert ws == sorted(ws)
    assert ws[0] == "+++" and ws[-1] == "---"
    assert list(words(0)) == [""]
    with pytest.raises(ValueError):
        list(words(-1))


def test_reduced_form_frozen():
    assert reduced_form("+-") == ((1,), (2,))
    assert reduced_form("-+") == ((), ())
    assert reduced_form("--++") == ((), ())
    assert reduced_form("+-+--") == ((1,), (4, 5))
    assert reduced_form("-++-") == ((3,), (4,))
    assert reduced_form("+-+--").word == "+--"


def _random_order_reduction(t: str, rng) -> tuple[int, ...]:
    """Oracle: delete adjacent surviving (-,+) pairs in random order."""
    alive = list(range(1, len(t) + 1))
    while True:
        cand = [
            k
            for k in range(len(alive) - 1)
            if t[alive[k] - 1] == MINUS and t[alive[k + 1] - 1] == PLUS
        ]
        if not cand:
            return tuple(alive)
        k = rng.choice(cand)
        del alive[k : k + 2]


@given(word_st, st.randoms(use_true_random=False))
def test_reduction_is_confluent(t, rng):
    rf = reduced_form(t)
    assert rf.plus_positions + rf.minus_positions == _random_order_reduction(t, rng)


@given(word_st)
def test_word_stats_invariants(t):
    st_ = word_stats(t)
    assert st_.weight == weight(t) == t.count(MINUS) - t.count(PLUS)
    assert st_.d == st_.h_plus + st_.h_minus + 1
    # cancellation removes two letters at a time
    assert (st_.d - 1) % 2 == st_.n % 2
    assert st_.h_minus - st_.h_plus == st_.weight


def test_word_stats_frozen():
    assert word_stats("+-+--") == (5, 1, 1, 2, 4)


def test_h_prefix_suffix_consistency():
    t = "+-+--"
    assert h_prefix(t, len(t)) == h_suffix(t, 1) == (1, 2)
    assert h_prefix(t, 0) == (0, 0)
    assert h_suffix(t, len(t) + 1) == (0, 0)
    assert h_suffix(t, 4) == (0, 2)
    with pytest.raises(ValueError):
        h_prefix(t, 6)
    with pytest.raises(ValueError):
        h_suffix(t, 0)


def test_dominance_frozen():
    assert dom_leq("+-", "-+")
    assert not dom_leq("-+", "+-")
    assert dom_leq("+-", "+-")
    # different weights are incomparable
    assert not dom_leq("++", "+-")
    with pytest.raises(ValueError):
        dom_leq("+", "+-")


def test_dominance_is_a_partial_order_refined_by_lex():
    for n in range(6):
        ws = list(words(n))
        for s, t in itertools.product(ws, ws):
            if dom_leq(s, t):
                assert s <= t  # lex with '+' < '-' is a linear extension
                if dom_leq(t, s):
                    assert s == t
            for u in ws:
                if dom_leq(s, t) and dom_leq(t, u):
                    assert dom_leq(s, u)


def test_flip_at():
    assert flip_at("+-+", 2) == "+++"
    with pytest.raises(ValueError):
        flip_at("+-+", 0)


def test_crystal_frozen():
    assert crystal_e("++") == "+-"
    assert crystal_e("--") is None
    assert crystal_f("--") == "+-"
    # "-+" reduces to the empty word, both operators die
    assert crystal_e("-+") is None and crystal_f("-+") is None


def test_crystal_partial_inverse_and_weight_shift():
    for n in range(1, 9):
        for t in words(n):
            u = crystal_e(t)
            if u is not None:
                assert weight(u) == weight(t) + 2
                assert crystal_f(u) == t
            u = crystal_f(t)
            if u is not None:
                assert weight(u) == weight(t) - 2
                assert crystal_e(u) == t


@settings(max_examples=60)
@given(word_st)
def test_crystal_exhaustion_matches_h(t):
    """h_+ counts raising moves, h_- lowering moves, to the very end."""
    stats = word_stats(t)
    u, k = t, 0
    while (v := crystal_e(u)) is not None:
        u, k = v, k + 1
    assert k == stats.h_plus
    u, k = t, 0
    while (v := crystal_f(u)) is not None:
        u, k = v, k + 1
    assert k == stats.h_minus


@given(word_st)
def test_bar_and_vee_are_involutions(t):
    assert bar(bar(t)) == t
    assert vee(vee(t)) == t
    assert weight(vee(t)) == -weight(t)
    assert weight(bar(t)) == -weight(t)


def test_bar_vee_frozen():
    assert bar("++-") == "+--"
    assert vee("++-") == "--+"
