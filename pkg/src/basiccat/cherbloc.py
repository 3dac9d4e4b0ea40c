"""Block combinatorics for rational-parameter cyclotomic categories.

Residue multisets, weight collections, block partitions of the
multipartitions of n, the family-move closure, per-class crystal
operators, the reflection Hom criterion and the level 2 parameter
dictionary.

Parameters are kappa = p/q in lowest terms (non-integral) with integer
charges, so two boxes interact exactly when their shifted contents agree
mod q and every residue class is an integer mod q.

Sign convention: a '+' slot is an addable box, a '-' slot a removable
one, and the crystal operator e ADDS a box (it flips + to -).  Much of
the literature runs the opposite way; here e raises wt_z = #removable -
#addable by 2, matching the sl2 weight of the class word.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from typing import Optional, Sequence

from .signword import MINUS, PLUS, crystal_e, crystal_f, reduced_form
from .young import (
    ChargedParams,
    MultiBox,
    MultiPartition,
    mp_add_box,
    mp_addable,
    mp_boxes,
    mp_remove_box,
    mp_removable,
    mp_size,
    multipartitions_of,
)

__all__ = [
    "blocks",
    "c_from_charges",
    "charges_from_c",
    "equal_parameter_test",
    "hom_refl_triv",
    "mp_crystal",
    "refl_criterion_value",
    "residue_fibers",
    "residue_multiset",
    "simf_closure",
    "weight_collection",
    "z_slot_word",
]


# ------------------------------------------------------------ residues

def residue_multiset(lam: MultiPartition, cp: ChargedParams) -> dict[int, int]:
    """Multiset of box residues (shifted contents mod q) as class -> count."""
    return dict(Counter(cp.residue(b) for b in mp_boxes(lam)))


def weight_collection(lam: MultiPartition, cp: ChargedParams) -> dict[int, int]:
    """wt_z = #removable z-boxes - #addable z-boxes, nonzero classes only."""
    wt: Counter = Counter()
    for b in mp_removable(lam):
        wt[cp.residue(b)] += 1
    for b in mp_addable(lam):
        wt[cp.residue(b)] -= 1
    return {z: w for z, w in sorted(wt.items()) if w}


def _freeze(d: dict) -> tuple:
    return tuple(sorted(d.items()))


def _sorted_classes(groups: dict) -> list[list[MultiPartition]]:
    classes = [sorted(v) for v in groups.values()]
    classes.sort(key=lambda c: c[0])
    return classes


def blocks(n: int, cp: ChargedParams) -> list[list[MultiPartition]]:
    """Partition of the multipartitions of n by their weight collection."""
    if n < 0:
        raise ValueError(f"negative size {n}")
    groups: defaultdict = defaultdict(list)
    for lam in multipartitions_of(n, cp.ell):
        groups[_freeze(weight_collection(lam, cp))].append(lam)
    return _sorted_classes(groups)


def residue_fibers(n: int, cp: ChargedParams) -> list[list[MultiPartition]]:
    """Partition of the multipartitions of n by their residue multiset.

    Independent route to the same decomposition as blocks(); the two are
    compared, never merged.
    """
    if n < 0:
        raise ValueError(f"negative size {n}")
    groups: defaultdict = defaultdict(list)
    for lam in multipartitions_of(n, cp.ell):
        groups[_freeze(residue_multiset(lam, cp))].append(lam)
    return _sorted_classes(groups)


# ------------------------------------------------------------ family moves

def simf_closure(n: int, cp: ChargedParams) -> list[list[MultiPartition]]:
    """Transitive closure of single-class family moves.

    Two multipartitions are related in one step when, for some residue
    class z, they strip to the same z-base and carry the same wt_z.
    """
    if n < 0:
        raise ValueError(f"negative size {n}")
    els = sorted(multipartitions_of(n, cp.ell))
    parent = {lam: lam for lam in els}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for z in range(cp.q):
        groups: defaultdict = defaultdict(list)
        for lam in els:
            base, _ = cp.strip_z_boxes(lam, z)
            wt = weight_collection(lam, cp).get(z, 0)
            groups[(base, wt)].append(lam)
        for members in groups.values():
            for other in members[1:]:
                union(members[0], other)

    classes: defaultdict = defaultdict(list)
    for lam in els:
        classes[find(lam)].append(lam)
    return _sorted_classes(classes)


# ------------------------------------------------------------ crystals

def z_slot_word(
    lam: MultiPartition, cp: ChargedParams, z: int
) -> tuple[str, list[MultiBox]]:
    """The class-z slot word of lam and its box labels.

    Slots are the addable (+) and removable (-) z-boxes ordered by
    increasing d^p; within one class all d^p values are distinct.
    """
    slots = [(b, PLUS) for b in cp.z_addable(lam, z)]
    slots += [(b, MINUS) for b in cp.z_removable(lam, z)]
    slots.sort(key=lambda t: cp.dp(t[0]))
    return "".join(s for _, s in slots), [b for b, _ in slots]


def mp_crystal(
    op: str, z: int, lam: MultiPartition, cp: ChargedParams
) -> Optional[MultiPartition]:
    """Apply the class-z crystal operator; e adds a box, f removes one."""
    if op not in ("e", "f"):
        raise ValueError(f"operator must be 'e' or 'f', got {op!r}")
    word, boxes = z_slot_word(lam, cp, z)
    new = crystal_e(word) if op == "e" else crystal_f(word)
    if new is None:
        return None
    i = next(k for k in range(len(word)) if word[k] != new[k])
    return mp_add_box(lam, boxes[i]) if op == "e" else mp_remove_box(lam, boxes[i])


def crystal_string_lengths(
    lam: MultiPartition, cp: ChargedParams, z: int
) -> tuple[int, int]:
    """(#e-steps, #f-steps) available at lam in class z: the surviving
    plus and minus counts of the slot word."""
    word, _ = z_slot_word(lam, cp, z)
    rf = reduced_form(word)
    return len(rf.plus_positions), len(rf.minus_positions)


# ------------------------------------------------------------ reflection Hom

def refl_criterion_value(
    kappa: Fraction, s0: Fraction, s1: Fraction, n: int
) -> Fraction:
    """kappa * (s_0 - s_1 + n - 1), the quantity whose negative
    integrality detects the one-dimensional Hom."""
    return Fraction(kappa) * (Fraction(s0) - Fraction(s1) + n - 1)


def hom_refl_triv(n: int, cp: ChargedParams) -> int:
    """Dimension (0 or 1) of the Hom from the reflection standard to the
    trivial one: 1 iff kappa*(s_0 - s_1 + n - 1) is a negative integer."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if cp.ell < 2:
        raise ValueError(f"need at least two charges, got {cp.ell}")
    val = refl_criterion_value(cp.kappa, cp.charges[0], cp.charges[1], n)
    return 1 if val.denominator == 1 and val < 0 else 0


# ------------------------------------------------------------ c dictionary

def c_from_charges(kappa: Fraction, s0: Fraction, s1: Fraction) -> tuple[Fraction, Fraction]:
    """Level 2 conversion: c_1 = -kappa, c_2 = kappa (s_1 - s_0) - 1/2."""
    kappa = Fraction(kappa)
    return -kappa, kappa * (Fraction(s1) - Fraction(s0)) - Fraction(1, 2)


def charges_from_c(c1: Fraction, c2: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Inverse conversion normalized to s_1 = 0: returns (kappa, s_0, 0)."""
    c1, c2 = Fraction(c1), Fraction(c2)
    if c1 == 0:
        raise ValueError("c_1 = 0 makes kappa integral")
    kappa = -c1
    s0 = (c2 + Fraction(1, 2)) / c1
    return kappa, s0, Fraction(0)


def equal_parameter_test(m: int, n: int) -> bool:
    """At the equal-parameter point c_1 = c_2 = m/(2n) the reflection Hom
    is nonzero exactly when m is a positive odd integer.  Evaluates the
    criterion through the c-dictionary; the caller compares with the
    parity form."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    c = Fraction(m, 2 * n)
    kappa, s0, s1 = charges_from_c(c, c)
    val = refl_criterion_value(kappa, s0, s1, n)
    return val.denominator == 1 and val < 0
