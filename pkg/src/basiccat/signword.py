"""Sign words and their reduction combinatorics.

A sign word is an element of {+,-}^n written as a Python string of '+'
and '-' characters.  Positions are 1-based with position 1 leftmost.
Words of length n index the simple objects of the n-fold tensor block;
the surviving positions of the reduced form index the through-strands of
the associated cup diagram.
"""

from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple

PLUS = "+"
MINUS = "-"

# Unicode minus signs occasionally appear in hand-written input.
_MINUS_ALIASES = {"−", "–"}


def parse_word(text: str) -> str:
    """Normalize and validate a sign word.

    Accepts ASCII '+'/'-' and the unicode minus; returns the canonical
    ASCII form.  Raises ValueError on anything else.
    """
    if not isinstance(text, str):
        raise ValueError(f"sign word must be a string, got {type(text).__name__}")
    out = []
    for ch in text:
        if ch in _MINUS_ALIASES:
            ch = MINUS
        if ch not in (PLUS, MINUS):
            raise ValueError(f"invalid sign character {ch!r} in word {text!r}")
        out.append(ch)
    return "".join(out)


def words(n: int) -> Iterator[str]:
    """All sign words of length n in lexicographic order ('+' < '-')."""
    if n < 0:
        raise ValueError("word length must be >= 0")
    for tup in itertools.product((PLUS, MINUS), repeat=n):
        yield "".join(tup)


class ReducedForm(NamedTuple):
    """Surviving positions after cancelling all (-,+) pairs.

    plus_positions and minus_positions are 1-based and increasing; every
    surviving '+' precedes every surviving '-'.
    """

    plus_positions: tuple[int, ...]
    minus_positions: tuple[int, ...]

    @property
    def word(self) -> str:
        return PLUS * len(self.plus_positions) + MINUS * len(self.minus_positions)


def reduced_form(t: str) -> ReducedForm:
    """Cancel (- at a, + at b > a) pairs until none remain.

    A pair may be cancelled when every position strictly between its
    endpoints is already cancelled; the result does not depend on the
    cancellation order.  Matching '-' as an opening bracket against the
    next '+' realizes one admissible order in a single scan.
    """
    t = parse_word(t)
    open_minus: list[int] = []
    plus_surv: list[int] = []
    minus_surv: list[int] = []
    for pos, ch in enumerate(t, start=1):
        if ch == MINUS:
            open_minus.append(pos)
        elif open_minus:
            open_minus.pop()
        else:
            plus_surv.append(pos)
    minus_surv = open_minus
    # every surviving '+' sits to the left of every surviving '-'
    assert not plus_surv or not minus_surv or plus_surv[-1] < minus_surv[0]
    return ReducedForm(tuple(plus_surv), tuple(minus_surv))


class WordStats(NamedTuple):
    n: int
    weight: int
    h_plus: int
    h_minus: int
    d: int


def word_stats(t: str) -> WordStats:
    """Length, sl2 weight, through-strand counts and d = h_+ + h_- + 1."""
    t = parse_word(t)
    rf = reduced_form(t)
    hp, hm = len(rf.plus_positions), len(rf.minus_positions)
    return WordStats(len(t), t.count(MINUS) - t.count(PLUS), hp, hm, hp + hm + 1)


def weight(t: str) -> int:
    """#(-) - #(+)."""
    t = parse_word(t)
    return t.count(MINUS) - t.count(PLUS)


def h_suffix(t: str, j: int) -> tuple[int, int]:
    """(h_+, h_-) of the suffix t_j .. t_n; j may be n+1 (empty suffix)."""
    t = parse_word(t)
    if not 1 <= j <= len(t) + 1:
        raise ValueError(f"suffix start {j} out of range for length {len(t)}")
    rf = reduced_form(t[j - 1 :])
    return len(rf.plus_positions), len(rf.minus_positions)


def h_prefix(t: str, i: int) -> tuple[int, int]:
    """(h_+, h_-) of the prefix t_1 .. t_i; i may be 0 (empty prefix)."""
    t = parse_word(t)
    if not 0 <= i <= len(t):
        raise ValueError(f"prefix end {i} out of range for length {len(t)}")
    rf = reduced_form(t[:i])
    return len(rf.plus_positions), len(rf.minus_positions)


def dom_leq(s: str, t: str) -> bool:
    """Dominance order: s <= t iff every prefix of s has at least as many '+'.

    Both words must have the same length and the same total '+' count
    comparison is enforced at the full length (equal weights), otherwise
    the words are incomparable and False is returned; unequal lengths are
    a usage error.
    """
    s, t = parse_word(s), parse_word(t)
    if len(s) != len(t):
        raise ValueError("dominance compares words of equal length")
    ps = pt = 0
    for cs, ct in zip(s, t):
        ps += cs == PLUS
        pt += ct == PLUS
        if ps < pt:
            return False
    return ps == pt


def flip_at(t: str, i: int) -> str:
    """Flip the sign at 1-based position i."""
    t = parse_word(t)
    if not 1 <= i <= len(t):
        raise ValueError(f"position {i} out of range for length {len(t)}")
    ch = MINUS if t[i - 1] == PLUS else PLUS
    return t[: i - 1] + ch + t[i:]


def crystal_e(t: str) -> str | None:
    """Flip the rightmost surviving '+' to '-'; None if none survives."""
    rf = reduced_form(t)
    if not rf.plus_positions:
        return None
    return flip_at(t, rf.plus_positions[-1])


def crystal_f(t: str) -> str | None:
    """Flip the leftmost surviving '-' to '+'; None if none survives."""
    rf = reduced_form(t)
    if not rf.minus_positions:
        return None
    return flip_at(t, rf.minus_positions[0])


def bar(t: str) -> str:
    """Reverse the word and flip every sign (an anti-involution)."""
    t = parse_word(t)
    return "".join(PLUS if ch == MINUS else MINUS for ch in reversed(t))


def vee(t: str) -> str:
    """Flip every sign in place (order-reversing duality on each block)."""
    t = parse_word(t)
    return "".join(PLUS if ch == MINUS else MINUS for ch in t)
