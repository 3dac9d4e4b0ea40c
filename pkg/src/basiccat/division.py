"""Divisions of sign words, cup diagrams and homological tables.

A division of a word t in {+,-}^n partitions {1..n} into fixed positions
(I_+, I_-) and a set of disjoint pairs such that

  (D0) fixed positions carry t's sign: I_+ in plus positions, I_- in minus;
  (D1) every position is fixed or paired, never both;
  (D2) every element of I_+ is left of every element of I_-;
  (D3) each pair covers one '+' and one '-';
  (D4) no fixed position lies strictly inside a pair and pairs never cross.

A pair is switchable when its '+' sits at the smaller position.  Switching
the signs inside every switchable pair sends t to a word t^D above t in
dominance order; the number s(D) of switchable pairs is the homological
degree at which L(t^D) appears against the standard object of t.  For a
given target there is at most one division, which makes the Ext tables,
minimal projective resolutions and decomposition matrices below exact
integer data.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from basiccat.signword import (
    MINUS,
    PLUS,
    dom_leq,
    flip_at,
    parse_word,
    reduced_form,
    vee,
    weight,
    words,
    word_stats,
)


@dataclass(frozen=True)
class Division:
    """Fixed sets and pairs; pairs stored as (lo, hi) position tuples."""

    fixed_plus: frozenset[int]
    fixed_minus: frozenset[int]
    pairs: frozenset[tuple[int, int]]

    @staticmethod
    def make(
        fixed_plus: Sequence[int],
        fixed_minus: Sequence[int],
        pairs: Sequence[Sequence[int]],
    ) -> "Division":
        norm = frozenset((min(p), max(p)) for p in pairs)
        return Division(frozenset(fixed_plus), frozenset(fixed_minus), norm)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)


def validate_division(t: str, D: Division) -> list[str]:
    """Return the list of violated axioms, empty when D is a division of t."""
    t = parse_word(t)
    n = len(t)
    problems: list[str] = []
    seen: Counter[int] = Counter()
    for i in D.fixed_plus | D.fixed_minus:
        seen[i] += 1
    for a, b in D.pairs:
        seen[a] += 1
        seen[b] += 1
    if set(seen) != set(range(1, n + 1)) or any(c != 1 for c in seen.values()):
        problems.append("D1: fixed sets and pairs must partition {1..n}")
    for i in D.fixed_plus:
        if not (1 <= i <= n) or t[i - 1] != PLUS:
            problems.append(f"D0: fixed plus position {i} does not carry '+'")
    for i in D.fixed_minus:
        if not (1 <= i <= n) or t[i - 1] != MINUS:
            problems.append(f"D0: fixed minus position {i} does not carry '-'")
    if D.fixed_plus and D.fixed_minus and max(D.fixed_plus) > min(D.fixed_minus):
        problems.append("D2: a fixed plus sits right of a fixed minus")
    for a, b in D.pairs:
        if not (1 <= a < b <= n):
            problems.append(f"D3: malformed pair ({a},{b})")
            continue
        if {t[a - 1], t[b - 1]} != {PLUS, MINUS}:
            problems.append(f"D3: pair ({a},{b}) does not cover one '+' and one '-'")
        for i in itertools.chain(D.fixed_plus, D.fixed_minus):
            if a < i < b:
                problems.append(f"D4: fixed position {i} inside pair ({a},{b})")
                break
    ordered = sorted(D.pairs)
    for (a, b), (c, d) in itertools.combinations(ordered, 2):
        if a < c < b < d:
            problems.append(f"D4: pairs ({a},{b}) and ({c},{d}) cross")
    return problems


def switchable_pairs(t: str, D: Division) -> list[tuple[int, int]]:
    """Pairs whose '+' is at the smaller position."""
    t = parse_word(t)
    return [(a, b) for a, b in D.sorted_pairs() if t[a - 1] == PLUS]


def division_degree(t: str, D: Division) -> int:
    return len(switchable_pairs(t, D))


def apply_division(t: str, D: Division) -> tuple[str, int]:
    """The word t^D (switch every switchable pair) and the degree s(D)."""
    t = parse_word(t)
    out = list(t)
    deg = 0
    for a, b in D.pairs:
        if t[a - 1] == PLUS:
            out[a - 1], out[b - 1] = MINUS, PLUS
            deg += 1
    return "".join(out), deg


def _balanced(seg: str) -> bool:
    return seg.count(PLUS) == seg.count(MINUS)


def _gap_matchings(t: str, lo: int, hi: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Non-crossing perfect matchings by opposite-sign pairs of positions lo..hi.

    Empty range yields the empty matching; an unbalanced range yields
    nothing.  The first position is matched against every admissible
    partner whose enclosed segment is balanced, which produces each
    non-crossing matching exactly once.
    """
    if lo > hi:
        yield ()
        return
    first = t[lo - 1]
    for b in range(lo + 1, hi + 1, 2):
        if t[b - 1] == first:
            continue
        if not _balanced(t[lo:b - 1]):
            continue
        for inner in _gap_matchings(t, lo + 1, b - 1):
            for outer in _gap_matchings(t, b + 1, hi):
                yield ((lo, b),) + inner + outer


def enumerate_divisions(t: str) -> list[Division]:
    """All divisions of t.

    Fixed positions cut the word into contiguous gaps; a choice of fixed
    sets is admissible iff it respects (D0)/(D2) and every gap is
    sign-balanced, and the divisions with those fixed sets correspond to
    independent non-crossing opposite-sign matchings of the gaps.
    """
    t = parse_word(t)
    n = len(t)
    out: list[Division] = []

    def scan(pos: int, phase: int, gap_start: int, fp: list[int], fm: list[int],
             gaps: list[tuple[int, int]]) -> None:
        if pos > n:
            if _balanced(t[gap_start - 1 : n]):
                finish(fp, fm, gaps + [(gap_start, n)])
            return
        ch = t[pos - 1]
        # the position joins the current gap
        scan(pos + 1, phase, gap_start, fp, fm, gaps)
        # or it becomes fixed, closing the gap before it
        if not _balanced(t[gap_start - 1 : pos - 1]):
            return
        if ch == PLUS and phase == 0:
            fp.append(pos)
            scan(pos + 1, 0, pos + 1, fp, fm, gaps + [(gap_start, pos - 1)])
            fp.pop()
        elif ch == MINUS:
            fm.append(pos)
            scan(pos + 1, 1, pos + 1, fp, fm, gaps + [(gap_start, pos - 1)])
            fm.pop()

    def finish(fp: list[int], fm: list[int], gaps: list[tuple[int, int]]) -> None:
        per_gap = []
        for lo, hi in gaps:
            if lo > hi:
                continue
            ms = list(_gap_matchings(t, lo, hi))
            if not ms:
                return
            per_gap.append(ms)
        for combo in itertools.product(*per_gap):
            pairs = tuple(itertools.chain.from_iterable(combo))
            out.append(Division(frozenset(fp), frozenset(fm), frozenset(pairs)))

    scan(1, 0, 1, [], [], [])
    return out


def _all_matchings(items: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not items:
        yield ()
        return
    a, rest = items[0], items[1:]
    for k, b in enumerate(rest):
        sub = rest[:k] + rest[k + 1 :]
        for m in _all_matchings(sub):
            yield ((a, b),) + m


def enumerate_divisions_bruteforce(t: str) -> list[Division]:
    """Exhaustive reference enumeration, kept as the oracle.

    Runs over every perfect matching of every even subset of positions,
    assigns the remaining positions as fixed with t's signs (forced by
    (D0)), and filters through the validator.  Exponential; practical to
    n about 8.
    """
    t = parse_word(t)
    n = len(t)
    out = []
    positions = tuple(range(1, n + 1))
    for k in range(0, n // 2 + 1):
        for paired in itertools.combinations(positions, 2 * k):
            fixed = [i for i in positions if i not in paired]
            fp = [i for i in fixed if t[i - 1] == PLUS]
            fm = [i for i in fixed if t[i - 1] == MINUS]
            for pairs in _all_matchings(paired):
                D = Division.make(fp, fm, pairs)
                if not validate_division(t, D):
                    out.append(D)
    return out


def recover_division(t: str, s: str) -> Division | None:
    """The unique division D with t^D = s, or None.

    Three stages, all within the gaps cut out by the reduced form of s:
    positions where t and s differ are matched innermost-first with the
    '+' of t opening and the '-' of t closing (these are the switched
    pairs); untouched positions are then matched within each region (a
    gap minus its switched pairs' interiors, or the interior of an
    innermost switched pair) with '-' opening and '+' closing (the
    non-switchable pairs).  Any mismatch means no division exists.
    """
    t, s = parse_word(t), parse_word(s)
    if len(t) != len(s) or weight(t) != weight(s):
        return None
    rf = reduced_form(s)
    fixed = sorted(rf.plus_positions + rf.minus_positions)
    if any(t[i - 1] != s[i - 1] for i in fixed):
        return None
    n = len(t)
    cuts = [0] + fixed + [n + 1]
    pairs: list[tuple[int, int]] = []
    for lo, hi in zip(cuts, cuts[1:]):
        gap = range(lo + 1, hi)
        # stage one: switched pairs from the sign differences
        stack: list[int] = []
        switched: list[tuple[int, int]] = []
        untouched: list[int] = []
        for i in gap:
            if t[i - 1] == s[i - 1]:
                untouched.append(i)
            elif t[i - 1] == PLUS:
                stack.append(i)
            else:
                if not stack:
                    return None
                switched.append((stack.pop(), i))
        if stack:
            return None
        pairs.extend(switched)
        # stage two: group untouched positions by the innermost switched
        # pair containing them (or the gap top level) and bracket-match
        # each region with '-' opening
        regions: dict[tuple[int, int] | None, list[int]] = {}
        for i in untouched:
            host = None
            for a, b in switched:
                if a < i < b and (host is None or host[0] < a):
                    host = (a, b)
            regions.setdefault(host, []).append(i)
        for members in regions.values():
            rstack: list[int] = []
            for i in members:
                if t[i - 1] == MINUS:
                    rstack.append(i)
                else:
                    if not rstack:
                        return None
                    pairs.append((rstack.pop(), i))
            if rstack:
                return None
    D = Division.make(
        [i for i in fixed if s[i - 1] == PLUS],
        [i for i in fixed if s[i - 1] == MINUS],
        pairs,
    )
    if validate_division(t, D):
        return None
    u, _deg = apply_division(t, D)
    if u != s:
        return None
    return D


def min_projective_resolution(t: str) -> list[dict[str, int]]:
    """Term i lists the words u with P(u) a summand in homological degree i.

    Multiplicities are division counts of the given degree; by uniqueness
    of divisions per target every multiplicity is 1, which the tests pin.
    """
    t = parse_word(t)
    by_degree: dict[int, Counter[str]] = {}
    for D in enumerate_divisions(t):
        u, deg = apply_division(t, D)
        by_degree.setdefault(deg, Counter())[u] += 1
    if not by_degree:
        return []
    top = max(by_degree)
    return [dict(by_degree.get(i, Counter())) for i in range(top + 1)]


def ext_standard_simple(t: str, s: str) -> dict[int, int]:
    """dim Ext^i from the standard of t to the simple of s, as {i: dim}.

    Nonzero exactly when s = t^D, in which case the only degree is s(D)
    with dimension one.
    """
    D = recover_division(t, s)
    if D is None:
        return {}
    return {division_degree(t, D): 1}


def weight_blocks(n: int) -> dict[int, tuple[str, ...]]:
    """Words of length n grouped by weight, lex-sorted within each block.

    Lexicographic order with '+' < '-' refines dominance, so each block
    list is a linear extension of the order on simple labels.
    """
    blocks: dict[int, list[str]] = {}
    for t in words(n):
        blocks.setdefault(weight(t), []).append(t)
    return {w: tuple(sorted(blocks[w])) for w in sorted(blocks)}


@dataclass(frozen=True)
class BlockTable:
    """Integer matrices of one weight block, rows and columns in `order`."""

    weight: int
    order: tuple[str, ...]
    M: tuple[tuple[int, ...], ...]
    Minv: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]

    def index(self, t: str) -> int:
        return self.order.index(t)


@dataclass(frozen=True)
class DecompTable:
    """Euler form, decomposition and tilting multiplicities at length n.

    M[t][u] = (-1)^{s(D)} when u = t^D and 0 otherwise (the Euler matrix
    of the standard-to-simple Ext tables); Minv is its exact integer
    inverse, whose rows give both (P(t) : standard u) and the standard
    composition multiplicities [standard u : simple t]; B transports Minv
    through the sign-flip duality and lists tilting multiplicities
    (T(t) : standard s).
    """

    n: int
    blocks: dict[int, BlockTable]

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(t for w in sorted(self.blocks) for t in self.blocks[w].order)

    def _entry(self, kind: str, t: str, u: str) -> int:
        t, u = parse_word(t), parse_word(u)
        wt, wu = weight(t), weight(u)
        if wt != wu:
            return 0
        blk = self.blocks[wt]
        mat = getattr(blk, kind)
        return mat[blk.index(t)][blk.index(u)]

    def m_entry(self, t: str, u: str) -> int:
        return self._entry("M", t, u)

    def minv_entry(self, t: str, u: str) -> int:
        return self._entry("Minv", t, u)

    def b_entry(self, t: str, u: str) -> int:
        return self._entry("B", t, u)

    def as_json_dict(self) -> dict:
        return {
            "n": self.n,
            "blocks": [
                {
                    "weight": w,
                    "order": list(blk.order),
                    "M": [list(r) for r in blk.M],
                    "Minv": [list(r) for r in blk.Minv],
                    "B": [list(r) for r in blk.B],
                }
                for w, blk in sorted(self.blocks.items())
            ],
        }


def _invert_unitriangular(order: tuple[str, ...], M: list[list[int]]) -> list[list[int]]:
    """Exact inverse of an upper unitriangular integer matrix."""
    k = len(order)
    inv = [[0] * k for _ in range(k)]
    for i in range(k - 1, -1, -1):
        row = [0] * k
        row[i] = 1
        for j in range(i + 1, k):
            if M[i][j]:
                c = M[i][j]
                rj = inv[j]
                for l in range(j, k):
                    if rj[l]:
                        row[l] -= c * rj[l]
        inv[i] = row
    return inv


@lru_cache(maxsize=None)
def decomp_tables(n: int) -> DecompTable:
    """Build every block table at length n."""
    blocks: dict[int, BlockTable] = {}
    raw: dict[int, tuple[tuple[str, ...], list[list[int]], list[list[int]]]] = {}
    for w, order in weight_blocks(n).items():
        idx = {t: i for i, t in enumerate(order)}
        k = len(order)
        M = [[0] * k for _ in range(k)]
        for t in order:
            i = idx[t]
            for D in enumerate_divisions(t):
                u, deg = apply_division(t, D)
                assert M[i][idx[u]] == 0, "two divisions with one target"
                M[i][idx[u]] = -1 if deg % 2 else 1
        Minv = _invert_unitriangular(order, M)
        raw[w] = (order, M, Minv)
    for w, (order, M, Minv) in raw.items():
        dual_order, _dm, dual_inv = raw[-w]
        didx = {t: i for i, t in enumerate(dual_order)}
        k = len(order)
        B = [[0] * k for _ in range(k)]
        for i, t in enumerate(order):
            for j, s in enumerate(order):
                B[i][j] = dual_inv[didx[vee(t)]][didx[vee(s)]]
        blocks[w] = BlockTable(
            w,
            order,
            tuple(tuple(r) for r in M),
            tuple(tuple(r) for r in Minv),
            tuple(tuple(r) for r in B),
        )
    return DecompTable(n, blocks)


@dataclass(frozen=True)
class ELStructure:
    """Socle-filtration data of the induced module on the simple of t.

    labels are the words s^1, .., s^h obtained by flipping the i-th
    surviving '+' of t; the i-th summand N_i is uniserial with radical
    layers L(s^i), L(s^{i+1}), .., L(s^h) from top to bottom.
    """

    t: str
    labels: tuple[str, ...]

    def layers(self, i: int) -> tuple[str, ...]:
        if not 1 <= i <= len(self.labels):
            raise ValueError(f"summand index {i} out of range")
        return self.labels[i - 1 :]

    def multiplicities(self) -> dict[str, int]:
        return {s: j for j, s in enumerate(self.labels, start=1)}


def el_structure(t: str) -> ELStructure:
    t = parse_word(t)
    rf = reduced_form(t)
    labels = tuple(flip_at(t, p) for p in rf.plus_positions)
    return ELStructure(t, labels)


def hom_standards(t: str, s: str) -> int:
    """dim Hom between the standards of t and s: 1 iff t <= s in dominance."""
    return 1 if dom_leq(t, s) else 0


def socle_label(s: str) -> str:
    """Label of the socle of the standard of s: the dominance minimum +^a-^b."""
    s = parse_word(s)
    a = s.count(PLUS)
    return PLUS * a + MINUS * (len(s) - a)


def tilt_ext_degree(s: str) -> int:
    """Top homological degree against the tilting side: the cup count of s."""
    st = word_stats(s)
    num = st.n - st.d + 1
    assert num % 2 == 0 and num >= 0
    return num // 2


def render_cup_diagram(t: str, D: Division) -> str:
    """ASCII cup diagram: word on top, rays '|' under fixed positions,
    cups  \\_/ under pairs with '*' filling switchable cups, nested cups
    drawn on deeper lines."""
    t = parse_word(t)
    problems = validate_division(t, D)
    if problems:
        raise ValueError("; ".join(problems))
    n = len(t)
    width = max(2 * n - 1, 0)
    col = lambda i: 2 * (i - 1)
    ordered = D.sorted_pairs()

    def level(p: tuple[int, int]) -> int:
        inner = [q for q in ordered if p[0] < q[0] and q[1] < p[1]]
        return 1 + max((level(q) for q in inner), default=0)

    levels = {p: level(p) for p in ordered}
    depth = max(levels.values(), default=0)
    fixed = sorted(D.fixed_plus | D.fixed_minus)
    lines = [" ".join(t)]
    for lv in range(1, max(depth, 1 if fixed else 0) + 1):
        row = [" "] * width
        for i in fixed:
            row[col(i)] = "|"
        for p, plv in levels.items():
            a, b = p
            if plv > lv:
                row[col(a)] = "|"
                row[col(b)] = "|"
            elif plv == lv:
                row[col(a)] = "\\"
                row[col(b)] = "/"
                fill = "*" if t[a - 1] == PLUS else "_"
                for c in range(col(a) + 1, col(b)):
                    row[c] = fill
        lines.append("".join(row).rstrip())
    return "\n".join(lines)
