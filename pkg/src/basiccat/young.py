"""Partitions, multipartitions and their box combinatorics.

Partitions are tuples of weakly decreasing positive integers; boxes are
1-based (row, column) pairs with content y - x.  Multipartitions carry a
component index and integer charges, and each box gets the shifted
content y - x + s_i.  All helpers are exact integer or Fraction
arithmetic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple[int, ...]
Box = tuple[int, int]
MultiPartition = tuple[Partition, ...]
MultiBox = tuple[int, int, int]


def parse_partition(parts: Sequence[int]) -> Partition:
    out = tuple(int(p) for p in parts if p)
    if any(p < 0 for p in out):
        raise ValueError(f"negative part in {parts!r}")
    if any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        raise ValueError(f"parts must weakly decrease, got {parts!r}")
    return out


def p_size(lam: Partition) -> int:
    return sum(lam)


def row(lam: Partition, x: int) -> int:
    """Length of row x (1-based), zero beyond the diagram."""
    return lam[x - 1] if 1 <= x <= len(lam) else 0


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """lam <= mu: equal size and every prefix row sum of lam is <= mu's."""
    if p_size(lam) != p_size(mu):
        return False
    acc_l = acc_m = 0
    for k in range(max(len(lam), len(mu))):
        acc_l += row(lam, k + 1)
        acc_m += row(mu, k + 1)
        if acc_l > acc_m:
            return False
    return True


def addable_boxes(lam: Partition) -> list[Box]:
    """Positions where a box may be added, top row first."""
    out = []
    for x in range(1, len(lam) + 2):
        y = row(lam, x) + 1
        if x == 1 or row(lam, x - 1) >= y:
            out.append((x, y))
    return out


def removable_boxes(lam: Partition) -> list[Box]:
    out = []
    for x in range(1, len(lam) + 1):
        y = row(lam, x)
        if y and row(lam, x + 1) < y:
            out.append((x, y))
    return out


def add_box(lam: Partition, box: Box) -> Partition:
    x, y = box
    if box not in addable_boxes(lam):
        raise ValueError(f"box {box} not addable to {lam}")
    rows = list(lam) + [0]
    rows[x - 1] += 1
    return tuple(p for p in rows if p)


def remove_box(lam: Partition, box: Box) -> Partition:
    x, y = box
    if box not in removable_boxes(lam):
        raise ValueError(f"box {box} not removable from {lam}")
    rows = list(lam)
    rows[x - 1] -= 1
    return tuple(p for p in rows if p)


def content(box: Box) -> int:
    x, y = box
    return y - x


def diag_count(lam: Partition, k: int) -> int:
    """Number of boxes of content k."""
    n = 0
    for x, length in enumerate(lam, start=1):
        if 1 <= k + x <= length:
            n += 1
    return n


def diag_supports(lam: Partition) -> dict[int, int]:
    """All nonzero diagonal counts, keyed by content."""
    out: dict[int, int] = {}
    for x, length in enumerate(lam, start=1):
        for y in range(1, length + 1):
            out[y - x] = out.get(y - x, 0) + 1
    return out


def is_r_content(c: int, N: int, r: int) -> bool:
    """Content congruent to r modulo N; N = 0 means equality."""
    if N == 0:
        return c == r
    return (c - r) % N == 0


def r_addable(lam: Partition, N: int, r: int) -> list[Box]:
    return [b for b in addable_boxes(lam) if is_r_content(content(b), N, r)]


def r_removable(lam: Partition, N: int, r: int) -> list[Box]:
    return [b for b in removable_boxes(lam) if is_r_content(content(b), N, r)]


def strip_r_boxes(lam: Partition, N: int, r: int) -> tuple[Partition, frozenset[Box]]:
    """Remove every removable r-box at once.

    For N != 1 one pass reaches the fixed point: removing an r-box only
    exposes boxes of neighbouring contents, which are not r-boxes.  The
    fixed point is asserted.
    """
    removed = frozenset(r_removable(lam, N, r))
    rows = list(lam)
    for x, _y in removed:
        rows[x - 1] -= 1
    nu = tuple(p for p in rows if p)
    if any(nu[i] < nu[i + 1] for i in range(len(nu) - 1)):
        raise ValueError(f"simultaneous removal broke the shape of {lam}")
    assert not r_removable(nu, N, r), (lam, N, r)
    return nu, removed


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of n, lexicographically largest part first."""

    def gen(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    yield from gen(n, n)


def partitions_up_to(n: int) -> Iterator[Partition]:
    for k in range(n + 1):
        yield from partitions_of(k)


# ------------------------------------------------------------ multipartitions

def parse_multipartition(comps: Sequence[Sequence[int]]) -> MultiPartition:
    return tuple(parse_partition(c) for c in comps)


def mp_size(lam: MultiPartition) -> int:
    return sum(p_size(c) for c in lam)


def mp_boxes(lam: MultiPartition) -> list[MultiBox]:
    out = []
    for i, comp in enumerate(lam):
        for x, length in enumerate(comp, start=1):
            out.extend((x, y, i) for y in range(1, length + 1))
    return out


def shifted_content(box: MultiBox, charges: Sequence[int]) -> int:
    x, y, i = box
    return y - x + charges[i]


def mp_addable(lam: MultiPartition) -> list[MultiBox]:
    return [
        (x, y, i)
        for i, comp in enumerate(lam)
        for x, y in addable_boxes(comp)
    ]


def mp_removable(lam: MultiPartition) -> list[MultiBox]:
    return [
        (x, y, i)
        for i, comp in enumerate(lam)
        for x, y in removable_boxes(comp)
    ]


def mp_add_box(lam: MultiPartition, box: MultiBox) -> MultiPartition:
    x, y, i = box
    return lam[:i] + (add_box(lam[i], (x, y)),) + lam[i + 1 :]


def mp_remove_box(lam: MultiPartition, box: MultiBox) -> MultiPartition:
    x, y, i = box
    return lam[:i] + (remove_box(lam[i], (x, y)),) + lam[i + 1 :]


def multipartitions_of(n: int, ell: int) -> Iterator[MultiPartition]:
    for sizes in itertools.product(range(n + 1), repeat=ell):
        if sum(sizes) != n:
            continue
        for combo in itertools.product(*(list(partitions_of(k)) for k in sizes)):
            yield tuple(combo)


def multipartitions_up_to(n: int, ell: int) -> Iterator[MultiPartition]:
    for k in range(n + 1):
        yield from multipartitions_of(k, ell)


class ChargedParams:
    """kappa = p/q in lowest terms (non-integral) with integer charges.

    Carries the residue class, d^p value and z-box machinery shared by
    the poset and block layers.
    """

    def __init__(self, kappa: Fraction, charges: Sequence[int]):
        kappa = Fraction(kappa)
        if kappa.denominator == 1:
            raise ValueError(f"kappa must be non-integral, got {kappa}")
        self.kappa = kappa
        self.q = kappa.denominator
        self.charges = tuple(int(s) for s in charges)
        self.ell = len(self.charges)
        if self.ell == 0:
            raise ValueError("at least one charge is required")

    def content(self, box: MultiBox) -> int:
        return shifted_content(box, self.charges)

    def residue(self, box: MultiBox) -> int:
        return self.content(box) % self.q

    def dp(self, box: MultiBox) -> Fraction:
        x, y, i = box
        return self.kappa * self.ell * self.content(box) - i

    def dp_of_content(self, c: int, i: int) -> Fraction:
        return self.kappa * self.ell * c - i

    def is_z_box(self, box: MultiBox, z: int) -> bool:
        return self.residue(box) == z % self.q

    def z_addable(self, lam: MultiPartition, z: int) -> list[MultiBox]:
        return [b for b in mp_addable(lam) if self.is_z_box(b, z)]

    def z_removable(self, lam: MultiPartition, z: int) -> list[MultiBox]:
        return [b for b in mp_removable(lam) if self.is_z_box(b, z)]

    def strip_z_boxes(
        self, lam: MultiPartition, z: int
    ) -> tuple[MultiPartition, frozenset[MultiBox]]:
        """Simultaneous removal of all removable z-boxes (one-pass fixpoint)."""
        removed = frozenset(self.z_removable(lam, z))
        comps = [list(c) for c in lam]
        for x, _y, i in removed:
            comps[i][x - 1] -= 1
        nu = tuple(tuple(p for p in c if p) for c in comps)
        for c in nu:
            if any(c[i] < c[i + 1] for i in range(len(c) - 1)):
                raise ValueError(f"simultaneous removal broke the shape of {lam}")
        assert not self.z_removable(nu, z), (lam, z)
        return nu, removed
