"""Sequences strictly decreasing within blocks, ordered by positive roots.

Elements are integer tuples over a value window, strictly decreasing
inside each block; A <= B when B - A has non-negative prefix sums and
zero total.  Two sequences are in one family when they agree outside
indexes whose value is r or r+1 modulo N at a common level; the slots of
a family are the indexes free to flip between the two values, read left
to right, with '+' marking the low value (congruent to r).  The splitting
chooses the rightmost unfrozen slot and classifies by the suffix beyond
it, then by the value at the slot and its left neighbour.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from ..signword import MINUS, PLUS
from .model import GT, LT, MID_MINUS, MID_PLUS, PRIMAL, FamilyData, PosetStructure, SplittingData


class ParabolicPoset(PosetStructure):
    kind = "parabolic"
    sides = (PRIMAL,)

    def __init__(self, block_sizes: Sequence[int], lo: int, hi: int, N: int, r: int):
        if N == 1:
            raise ValueError("modulus 1 collapses all values; families need N != 1")
        if N < 0:
            raise ValueError(f"modulus must be >= 0, got {N}")
        block_sizes = tuple(int(b) for b in block_sizes)
        if not block_sizes or any(b <= 0 for b in block_sizes):
            raise ValueError(f"block sizes must be positive, got {block_sizes}")
        if lo > hi:
            raise ValueError(f"empty value window [{lo}, {hi}]")
        self.block_sizes = block_sizes
        self.lo, self.hi, self.N, self.r = lo, hi, N, r
        self.m = sum(block_sizes)

        starts = []
        pos = 0
        for b in block_sizes:
            starts.append(pos)
            pos += b
        self.block_starts = set(starts)
        self._block_of = []
        for bi, b in enumerate(block_sizes):
            self._block_of.extend([bi] * b)

        window = range(lo, hi + 1)
        per_block = [
            [tuple(sorted(c, reverse=True)) for c in itertools.combinations(window, b)]
            for b in block_sizes
        ]
        elements = tuple(
            tuple(itertools.chain.from_iterable(combo))
            for combo in itertools.product(*per_block)
        )

        fibers: dict[tuple, list[tuple]] = {}
        for seq in elements:
            fibers.setdefault(self._family_key(seq), []).append(seq)

        families = []
        for key, members in fibers.items():
            starred = [j for j, tok in enumerate(key) if isinstance(tok, tuple)]
            locked = set()
            for j in starred:
                if (j + 1 < self.m and self._block_of[j] == self._block_of[j + 1]
                        and key[j] == key[j + 1]):
                    locked.add(j)
                    locked.add(j + 1)
            structural = [j for j in starred if j not in locked]
            low_of = {j: self._low_value(key[j]) for j in structural}
            slots = tuple(j for j in structural if lo <= low_of[j] and low_of[j] + 1 <= hi)
            varying = tuple(
                j for j in range(self.m) if len({seq[j] for seq in members}) > 1
            )
            assert varying == slots, (key, varying, slots)
            base = min(members)
            words = {
                seq: "".join(PLUS if self._is_low(seq[j]) else MINUS for j in slots)
                for seq in members
            }
            complete = len(slots) == len(structural)
            assert len(members) == 2 ** len(slots), (key, len(members))
            families.append(
                FamilyData(fid=key, base=base, slots=slots,
                           members=tuple(sorted(members)), words=words, complete=complete)
            )
        families.sort(key=lambda f: f.base)
        super().__init__(
            elements, families,
            {"block_sizes": list(block_sizes), "lo": lo, "hi": hi, "N": N, "r": r},
        )

    # ---- residues ------------------------------------------------------

    def _is_low(self, v: int) -> bool:
        if self.N == 0:
            return v == self.r
        return (v - self.r) % self.N == 0

    def _is_high(self, v: int) -> bool:
        if self.N == 0:
            return v == self.r + 1
        return (v - self.r - 1) % self.N == 0

    def _token(self, v: int):
        if self._is_low(v):
            return ("*", 0 if self.N == 0 else (v - self.r) // self.N)
        if self._is_high(v):
            return ("*", 0 if self.N == 0 else (v - 1 - self.r) // self.N)
        return v

    def _family_key(self, seq) -> tuple:
        return tuple(self._token(v) for v in seq)

    def _low_value(self, token) -> int:
        assert isinstance(token, tuple)
        return self.r if self.N == 0 else self.r + self.N * token[1]

    # ---- order ---------------------------------------------------------

    def _leq_raw(self, x, y) -> bool:
        acc = 0
        for a, b in zip(x, y):
            acc += b - a
            if acc < 0:
                return False
        return acc == 0

    def group_key(self, el):
        return sum(el)

    def _dom_matrix(self, group):
        rows = []
        for el in group:
            acc, row = 0, []
            for v in el:
                acc += v
                row.append(acc)
            rows.append(row)
        return rows

    # ---- splitting -----------------------------------------------------

    def _split(self, fam, unfrozen, ref, scope, side) -> SplittingData:
        j = unfrozen[-1]
        s = ref[j] if self._is_low(ref[j]) else ref[j] - 1

        parts: dict[str, list] = {LT: [], MID_MINUS: [], MID_PLUS: [], GT: []}
        for seq in scope:
            parts[self._classify(seq, ref, j, s)].append(seq)
        return SplittingData(
            fid=fam.fid, side=side, chosen=j,
            lt=frozenset(parts[LT]), minus=frozenset(parts[MID_MINUS]),
            plus=frozenset(parts[MID_PLUS]), gt=frozenset(parts[GT]),
        )

    def _classify(self, seq, ref, j: int, s: int) -> str:
        for jp in range(self.m - 1, j, -1):
            if seq[jp] != ref[jp]:
                return GT if seq[jp] < ref[jp] else LT
        v = seq[j]
        if v < s:
            return GT
        if v == s:
            if j not in self.block_starts and seq[j - 1] == s + 1:
                return GT
            return MID_PLUS
        if v == s + 1:
            return MID_MINUS
        return LT

    # ---- rendering -----------------------------------------------------

    def el_str(self, el) -> str:
        return "(" + ",".join(map(str, el)) + ")"

    def fid_str(self, fid) -> str:
        return str(fid)


def parabolic_poset(block_sizes: Sequence[int], lo: int, hi: int, N: int, r: int) -> ParabolicPoset:
    return ParabolicPoset(block_sizes, lo, hi, N, r)
