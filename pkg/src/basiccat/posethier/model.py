"""Family structure, splitting axioms and hierarchy checks for labelling posets.

A structure here is a finite truncation of a poset together with a
decomposition into families.  Each family carries an ordered tuple of
slots and a bijection between its members and sign words, increasing for
the dominance order on words of equal weight.  A splitting relative to a
family divides the whole truncation into four parts, below / two middles
/ above, subject to:

  chain      the four parts are arranged so that no element of an earlier
             part lies strictly above an element of a later part;
  wholeness  every family lies inside one part, middles split families by
             the keyed letter of their own word;
  coherence  families inside the middle share the same middle sets, and
             above/below placement of families is mutually consistent;
  middle map flipping the keyed letter is a poset isomorphism between the
             two middles.

The keyed letter is the rightmost one on the primal side and the leftmost
one on the dual side; the primal chain runs below, minus middle, plus
middle, above, while the dual chain swaps the two middles.  Hierarchies
descend into the minus middle; each descent freezes the keyed slot of
every family present, so at depth k a family reads only its first
n_slots - k letters (primal) or its last ones (dual).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from ..signword import MINUS, PLUS, dom_leq

PRIMAL = "primal"
DUAL = "dual"

LT, MID_MINUS, MID_PLUS, GT = "lt", "minus", "plus", "gt"


def chain_order(side: str) -> tuple[str, str, str, str]:
    if side == PRIMAL:
        return (LT, MID_MINUS, MID_PLUS, GT)
    if side == DUAL:
        return (LT, MID_PLUS, MID_MINUS, GT)
    raise ValueError(f"unknown side {side!r}")


def keyed_letter(word: str, side: str) -> str:
    return word[-1] if side == PRIMAL else word[0]


def flip_keyed(word: str, side: str) -> str:
    i = len(word) - 1 if side == PRIMAL else 0
    flipped = PLUS if word[i] == MINUS else MINUS
    return word[:i] + flipped + word[i + 1 :]


@dataclass(eq=False)
class FamilyData:
    """One family: base representative, slots in reading order, members."""

    fid: object
    base: object
    slots: tuple
    members: tuple
    words: dict  # element -> sign word over the slots
    complete: bool

    def __post_init__(self):
        self.word_of = self.words
        self.element_of = {w: el for el, w in self.words.items()}
        assert len(self.element_of) == len(self.members)

    @property
    def n_slots(self) -> int:
        return len(self.slots)


@dataclass(eq=False)
class SplittingData:
    """Four-part division of the truncation relative to one family."""

    fid: object
    side: str
    chosen: object
    lt: frozenset
    minus: frozenset
    plus: frozenset
    gt: frozenset
    anomalies: list = field(default_factory=list)

    def part_of(self) -> dict:
        out = {}
        for name in (LT, MID_MINUS, MID_PLUS, GT):
            for el in getattr(self, name):
                out[el] = name
        return out

    def parts(self) -> dict:
        return {name: getattr(self, name) for name in (LT, MID_MINUS, MID_PLUS, GT)}


class PosetStructure:
    """Base class: elements, order, families and splitting constructor.

    Subclasses supply _leq_raw, group_key (comparable pairs share the
    key), _split (the side-specific classifier) and element rendering.
    """

    kind = "abstract"
    sides: tuple[str, ...] = (PRIMAL,)

    def __init__(self, elements: Iterable, families: Iterable[FamilyData], params: dict):
        self.elements = tuple(elements)
        self.index = {el: i for i, el in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        self.families = tuple(families)
        self.family_of = {}
        for fam in self.families:
            for el in fam.members:
                assert el not in self.family_of, f"element {el} in two families"
                self.family_of[el] = fam
        self.params = dict(params)
        self._strict_pairs: Optional[list] = None
        self._strict_set: Optional[set] = None
        self._pair_arrays = None

    # ---- order -------------------------------------------------------

    def _leq_raw(self, x, y) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def group_key(self, el):  # pragma: no cover - abstract
        raise NotImplementedError

    def leq(self, x, y) -> bool:
        if x == y:
            return True
        return (x, y) in self.strict_set()

    def less(self, x, y) -> bool:
        return x != y and (x, y) in self.strict_set()

    def _dom_matrix(self, group: list):
        """Feature rows with x <= y iff row_x <= row_y componentwise.

        Subclasses may return None to fall back to pairwise _leq_raw;
        groups always share a group_key, so rows are aligned.
        """
        return None

    def strict_pairs(self) -> list:
        """All pairs (lo, hi) with lo strictly below hi, computed once."""
        if self._strict_pairs is None:
            groups: dict = {}
            for el in self.elements:
                groups.setdefault(self.group_key(el), []).append(el)
            pairs = []
            for group in groups.values():
                if len(group) < 2:
                    continue
                mat = self._dom_matrix(group)
                if mat is None:
                    for i, x in enumerate(group):
                        for y in group[i + 1 :]:
                            xy = self._leq_raw(x, y)
                            yx = self._leq_raw(y, x)
                            assert not (xy and yx), f"antisymmetry broken: {x} {y}"
                            if xy:
                                pairs.append((x, y))
                            elif yx:
                                pairs.append((y, x))
                    continue
                mat = np.asarray(mat, dtype=np.int64)
                for i, x in enumerate(group):
                    le = (mat[i] <= mat).all(axis=1)
                    ge = (mat <= mat[i]).all(axis=1)
                    le[i] = False
                    assert not (le & ge).any(), f"antisymmetry broken at {x}"
                    for j in np.nonzero(le)[0]:
                        pairs.append((x, group[int(j)]))
            self._strict_pairs = pairs
            self._strict_set = set(pairs)
        return self._strict_pairs

    def strict_set(self) -> set:
        if self._strict_set is None:
            self.strict_pairs()
        return self._strict_set

    def pair_index_arrays(self):
        """Strict pairs as two aligned index arrays (lo, hi)."""
        if self._pair_arrays is None:
            pairs = self.strict_pairs()
            lo = np.fromiter((self.index[p[0]] for p in pairs), dtype=np.int32, count=len(pairs))
            hi = np.fromiter((self.index[p[1]] for p in pairs), dtype=np.int32, count=len(pairs))
            self._pair_arrays = (lo, hi)
        return self._pair_arrays

    def covering_pairs(self) -> list:
        above: dict = {el: set() for el in self.elements}
        for lo, hi in self.strict_pairs():
            above[lo].add(hi)
        covers = []
        for lo in self.elements:
            ups = above[lo]
            for hi in ups:
                if not (ups & above[hi]):
                    covers.append((lo, hi))
        return covers

    # ---- splittings ----------------------------------------------------

    def split_family(
        self,
        fam: FamilyData,
        frozen: frozenset = frozenset(),
        universe: Optional[frozenset] = None,
        side: str = PRIMAL,
    ) -> Optional[SplittingData]:
        if side not in self.sides:
            raise ValueError(f"{self.kind} poset has no {side} splitting")
        unfrozen = [s for s in fam.slots if s not in frozen]
        if not unfrozen:
            return None
        members = fam.members if universe is None else [m for m in fam.members if m in universe]
        if not members:
            return None
        scope = self.elements if universe is None else [el for el in self.elements if el in universe]
        return self._split(fam, unfrozen, members[0], scope, side)

    def _split(self, fam, unfrozen, ref, scope, side):  # pragma: no cover - abstract
        raise NotImplementedError

    # ---- rendering -----------------------------------------------------

    def el_json(self, el):
        return list(el)

    def el_str(self, el) -> str:
        return str(el)

    def fid_str(self, fid) -> str:
        return str(fid)

    def as_json_dict(self, side: Optional[str] = None) -> dict:
        fams = []
        for fam in self.families:
            fams.append(
                {
                    "id": self.fid_str(fam.fid),
                    "base": self.el_json(fam.base),
                    "slots": [list(s) if isinstance(s, tuple) else s for s in fam.slots],
                    "n_slots": fam.n_slots,
                    "complete": fam.complete,
                    "members": [self.el_json(m) for m in fam.members],
                    "sigma": {w: self.el_json(el) for w, el in fam.element_of.items()},
                }
            )
        out = {
            "kind": self.kind,
            "params": {k: (str(v) if not isinstance(v, (int, str, list, bool, type(None))) else v) for k, v in self.params.items()},
            "elements": [self.el_json(el) for el in self.elements],
            "covering_pairs": [[self.el_json(a), self.el_json(b)] for a, b in self.covering_pairs()],
            "families": fams,
        }
        if side is not None:
            splits = []
            for fam in self.families:
                sp = self.split_family(fam, side=side)
                if sp is None:
                    continue
                splits.append(
                    {
                        "family": self.fid_str(fam.fid),
                        "side": sp.side,
                        "chosen": list(sp.chosen) if isinstance(sp.chosen, tuple) else sp.chosen,
                        "lt": [self.el_json(e) for e in sorted(sp.lt, key=self.index.get)],
                        "minus": [self.el_json(e) for e in sorted(sp.minus, key=self.index.get)],
                        "plus": [self.el_json(e) for e in sorted(sp.plus, key=self.index.get)],
                        "gt": [self.el_json(e) for e in sorted(sp.gt, key=self.index.get)],
                    }
                )
            out["splittings"] = splits
            out["side"] = side
        return out


# ---------------------------------------------------------------- checkers

def _witness(ps: PosetStructure, **kw) -> dict:
    out = {}
    for k, v in kw.items():
        if k.startswith("el_"):
            out[k[3:]] = ps.el_str(v)
        elif k.startswith("fid_"):
            out[k[4:]] = ps.fid_str(v)
        else:
            out[k] = v
    return out


def check_family_axioms(ps: PosetStructure, max_report: int = 25) -> dict:
    """Partition into families, word bijections, monotone word maps."""
    violations: list[dict] = []

    covered = sum(len(f.members) for f in ps.families)
    if covered != len(ps.elements) or len(ps.family_of) != len(ps.elements):
        violations.append({"axiom": "family-partition", "covered": covered, "elements": len(ps.elements)})

    for fam in ps.families:
        n = fam.n_slots
        words = fam.words
        for el, w in words.items():
            if len(w) != n or any(ch not in (PLUS, MINUS) for ch in w):
                violations.append(_witness(ps, axiom="sigma-word-shape", fid_family=fam.fid, el_element=el, word=w))
        if len(set(words.values())) != len(fam.members):
            violations.append(_witness(ps, axiom="sigma-injective", fid_family=fam.fid))
        if fam.complete and len(fam.members) != 2 ** n:
            violations.append(
                _witness(ps, axiom="family-size", fid_family=fam.fid, size=len(fam.members), expected=2 ** n)
            )

    for lo, hi in ps.strict_pairs():
        fa = ps.family_of[lo]
        if fa is ps.family_of[hi] and not dom_leq(fa.words[lo], fa.words[hi]):
            violations.append(
                _witness(ps, axiom="sigma-monotone", fid_family=fa.fid, el_low=lo, el_high=hi,
                         word_low=fa.words[lo], word_high=fa.words[hi])
            )
            if len(violations) > max_report + 5:
                break

    return {
        "kind": ps.kind,
        "elements": len(ps.elements),
        "families": len(ps.families),
        "complete_families": sum(1 for f in ps.families if f.complete),
        "violations": violations[:max_report],
        "violation_count": len(violations),
    }


def _keyed_index(fam: FamilyData, frozen: frozenset, side: str) -> Optional[int]:
    """Slot index read by the middle map: outermost unfrozen slot."""
    rng = range(fam.n_slots - 1, -1, -1) if side == PRIMAL else range(fam.n_slots)
    for i in rng:
        if fam.slots[i] not in frozen:
            return i
    return None


def _flip_at(word: str, i: int) -> str:
    flipped = PLUS if word[i] == MINUS else MINUS
    return word[:i] + flipped + word[i + 1 :]


def _check_one_splitting(
    ps: PosetStructure,
    fam: FamilyData,
    sp: SplittingData,
    scope: Optional[frozenset],
    pair_idx,
    violations: list,
    counters: dict,
    max_report: int,
    frozen_map: Optional[dict] = None,
) -> None:
    """Tiling, chain and middle-map checks shared by top level and nodes."""
    side = sp.side
    parts = sp.parts()
    universe = set(ps.elements) if scope is None else set(scope)
    frozen_map = frozen_map or {}

    tiled = set()
    total = 0
    for name, part in parts.items():
        total += len(part)
        tiled |= part
    if tiled != universe or total != len(universe):
        violations.append(_witness(ps, axiom="split-tiling", fid_family=fam.fid,
                                   missing=len(universe - tiled), extra=len(tiled - universe), overlap=total - len(tiled)))
        return

    order = chain_order(side)
    rank = np.full(len(ps.elements), -1, dtype=np.int8)
    for level, name in enumerate(order):
        for el in parts[name]:
            rank[ps.index[el]] = level
    lo_idx, hi_idx = pair_idx
    rlo, rhi = rank[lo_idx], rank[hi_idx]
    mask = (rlo >= 0) & (rhi >= 0) & (rlo > rhi)
    bad = np.nonzero(mask)[0]
    counters["chain_pairs"] = counters.get("chain_pairs", 0) + int(len(lo_idx))
    for k in bad[:max_report]:
        lo = ps.elements[int(lo_idx[k])]
        hi = ps.elements[int(hi_idx[k])]
        violations.append(
            _witness(ps, axiom="S0-chain", fid_family=fam.fid, side=side,
                     el_low=hi, el_high=lo,
                     part_low=order[int(rank[ps.index[hi]])], part_high=order[int(rank[ps.index[lo]])])
        )

    for note in sp.anomalies:
        violations.append(_witness(ps, axiom="mid-flex", fid_family=fam.fid, **note))

    # middle map: flip the keyed unfrozen letter inside each member's own family
    minus_set, plus_set = parts[MID_MINUS], parts[MID_PLUS]

    def partner_of(el):
        fb = ps.family_of[el]
        ki = _keyed_index(fb, frozen_map.get(fb.fid, frozenset()), side)
        if ki is None:
            return None, False
        return fb.element_of.get(_flip_at(fb.words[el], ki)), True

    iota = {}
    for el in minus_set:
        partner, keyed = partner_of(el)
        if not keyed:
            continue  # slotless family inside a middle; S2 reports it
        if partner is None or partner not in universe:
            counters["iota_truncated"] = counters.get("iota_truncated", 0) + 1
            continue
        if partner not in plus_set:
            violations.append(_witness(ps, axiom="S4-into-plus", fid_family=fam.fid, el_element=el, el_partner=partner))
            continue
        iota[el] = partner
    for el in plus_set:
        partner, keyed = partner_of(el)
        if not keyed:
            continue
        if partner is None or partner not in universe:
            counters["iota_truncated"] = counters.get("iota_truncated", 0) + 1
        elif partner not in minus_set:
            violations.append(_witness(ps, axiom="S4-into-minus", fid_family=fam.fid, el_element=el, el_partner=partner))

    if iota:
        idx_minus = np.zeros(len(ps.elements), dtype=bool)
        for el in iota:
            idx_minus[ps.index[el]] = True
        both = np.nonzero(idx_minus[lo_idx] & idx_minus[hi_idx])[0]
        for k in both:
            lo = ps.elements[int(lo_idx[k])]
            hi = ps.elements[int(hi_idx[k])]
            if not ps.less(iota[lo], iota[hi]):
                violations.append(_witness(ps, axiom="S4-order-iso", fid_family=fam.fid, el_low=lo, el_high=hi))
        inv = {v: k for k, v in iota.items()}
        idx_plus = np.zeros(len(ps.elements), dtype=bool)
        for el in inv:
            idx_plus[ps.index[el]] = True
        both = np.nonzero(idx_plus[lo_idx] & idx_plus[hi_idx])[0]
        for k in both:
            lo = ps.elements[int(lo_idx[k])]
            hi = ps.elements[int(hi_idx[k])]
            if not ps.less(inv[lo], inv[hi]):
                violations.append(_witness(ps, axiom="S4-order-iso-inverse", fid_family=fam.fid, el_low=lo, el_high=hi))


def _check_splitting_set(
    ps: PosetStructure,
    scope: Optional[frozenset],
    frozen_map: dict,
    side: str,
    pair_idx,
    violations: list,
    counters: dict,
    max_report: int,
) -> dict:
    """Full (S) axiom pass inside one scope; returns the emitted splittings.

    scope None means the whole truncation.  frozen_map gives, per family
    id, the slots this scope has already frozen; a family with every slot
    frozen is never split and must stay out of every middle.
    """
    fams = []
    members_of = {}
    for fam in ps.families:
        members = fam.members if scope is None else tuple(m for m in fam.members if m in scope)
        if members:
            fams.append(fam)
            members_of[fam.fid] = members

    splits: dict = {}
    for fam in fams:
        splits[fam.fid] = ps.split_family(
            fam, frozen=frozen_map.get(fam.fid, frozenset()), universe=scope, side=side
        )

    part_of_family: dict = {}
    for fam in fams:
        sp = splits[fam.fid]
        if sp is None:
            continue
        _check_one_splitting(ps, fam, sp, scope, pair_idx, violations, counters, max_report, frozen_map)

        # S1: nonempty middles once every word over the unfrozen slots occurs
        n_unfrozen = sum(1 for s in fam.slots if s not in frozen_map.get(fam.fid, frozenset()))
        if not (sp.minus and sp.plus):
            if len(members_of[fam.fid]) == 2 ** n_unfrozen:
                violations.append(_witness(ps, axiom="S1-middles", fid_family=fam.fid,
                                           minus=len(sp.minus), plus=len(sp.plus)))
            else:
                counters["s1_skipped_incomplete"] = counters.get("s1_skipped_incomplete", 0) + 1

        # S2: wholeness and keyed-letter coherence
        el_part = sp.part_of()
        for fb in fams:
            names = {el_part[m] for m in members_of[fb.fid]}
            mids = names & {MID_MINUS, MID_PLUS}
            if (mids and names - {MID_MINUS, MID_PLUS}) or (not mids and len(names) > 1):
                violations.append(_witness(ps, axiom="S2-wholeness", fid_family=fam.fid,
                                           fid_other=fb.fid, parts=sorted(names)))
                part_of_family[(fam.fid, fb.fid)] = "mixed"
                continue
            if mids:
                part_of_family[(fam.fid, fb.fid)] = "mid"
                ki = _keyed_index(fb, frozen_map.get(fb.fid, frozenset()), side)
                if ki is None:
                    violations.append(_witness(ps, axiom="S2-keyed-letter", fid_family=fam.fid,
                                               fid_other=fb.fid, word="", part=sorted(mids)))
                    continue
                for m in members_of[fb.fid]:
                    letter = fb.words[m][ki]
                    want = MID_PLUS if letter == PLUS else MID_MINUS
                    if el_part[m] != want:
                        violations.append(_witness(ps, axiom="S2-keyed-letter", fid_family=fam.fid,
                                                   el_element=m, word=fb.words[m], part=el_part[m]))
            else:
                part_of_family[(fam.fid, fb.fid)] = names.pop()

    # S3: middle coherence and mutual placement
    for fam in fams:
        if splits[fam.fid] is None:
            continue
        for fb in fams:
            rel = part_of_family.get((fam.fid, fb.fid))
            if rel == "mid" and fb.fid != fam.fid:
                spb = splits[fb.fid]
                if spb is None:
                    violations.append(_witness(ps, axiom="S3-middle-splitting-missing",
                                               fid_family=fam.fid, fid_other=fb.fid))
                elif spb.minus != splits[fam.fid].minus or spb.plus != splits[fam.fid].plus:
                    violations.append(_witness(ps, axiom="S3-middle-coherence",
                                               fid_family=fam.fid, fid_other=fb.fid))
            if splits.get(fb.fid) is not None and fb.fid != fam.fid:
                back = part_of_family.get((fb.fid, fam.fid))
                if (rel == GT) != (back == LT):
                    violations.append(_witness(ps, axiom="S3-mutual-placement",
                                               fid_family=fam.fid, fid_other=fb.fid,
                                               forward=rel, back=back))
    return splits


def check_splitting_axioms(ps: PosetStructure, side: str = PRIMAL, max_report: int = 25) -> dict:
    """Evaluate the splitting axioms of the given side on every family."""
    if side not in ps.sides:
        return {"kind": ps.kind, "side": side, "available": False, "violations": [],
                "violation_count": 0, "families_checked": 0}

    violations: list[dict] = []
    counters: dict = {}
    pair_idx = ps.pair_index_arrays()
    splits = _check_splitting_set(ps, None, {}, side, pair_idx, violations, counters, max_report)

    return {
        "kind": ps.kind,
        "side": side,
        "available": True,
        "families_checked": sum(1 for sp in splits.values() if sp is not None),
        "counters": counters,
        "violations": violations[:max_report],
        "violation_count": len(violations),
    }


@dataclass(eq=False)
class HierNode:
    nid: int
    depth: int
    elements: frozenset
    parent: Optional[int]
    via: object


def _node_frozen_map(ps: PosetStructure, depth: int, side: str) -> dict:
    """Depth k freezes every family's outermost k slots."""
    out = {}
    if depth == 0:
        return out
    for fam in ps.families:
        k = min(depth, fam.n_slots)
        if k:
            sl = fam.slots[fam.n_slots - k :] if side == PRIMAL else fam.slots[:k]
            out[fam.fid] = frozenset(sl)
    return out


def check_hierarchy(
    ps: PosetStructure,
    side: str = PRIMAL,
    max_depth: Optional[int] = None,
    max_nodes: int = 4000,
    max_report: int = 25,
) -> dict:
    """Descend minus middles, freezing each family's keyed slot per level.

    Every node is re-checked against the full splitting-axiom set over its
    own element set, with words shortened by the frozen slots; nesting and
    termination of the descent are verified at the end.
    """
    if side not in ps.sides:
        return {"kind": ps.kind, "side": side, "available": False, "violations": [],
                "violation_count": 0, "nodes": 0}

    violations: list[dict] = []
    counters: dict = {}
    lo_all, hi_all = ps.pair_index_arrays()
    dropped = MINUS  # each descent keeps the minus side of the keyed letter

    root = HierNode(0, 0, frozenset(ps.elements), None, None)
    nodes = [root]
    seen = {(root.elements, 0): 0}
    queue = [root]
    truncated = False

    while queue:
        node = queue.pop()
        if len(nodes) > max_nodes:
            truncated = True
            break
        in_node = np.zeros(len(ps.elements), dtype=bool)
        for el in node.elements:
            in_node[ps.index[el]] = True
        sel = np.nonzero(in_node[lo_all] & in_node[hi_all])[0]
        pair_idx = (lo_all[sel], hi_all[sel])
        frozen_map = _node_frozen_map(ps, node.depth, side)

        k = node.depth
        if k:
            for fam in ps.families:
                members = [m for m in fam.members if m in node.elements]
                if not members:
                    continue
                if fam.n_slots < k:
                    violations.append(_witness(ps, axiom="H-slot-underflow", fid_family=fam.fid,
                                               depth=k, n_slots=fam.n_slots))
                    continue
                # frozen letters all read '-': the descent kept that side
                sub_words = {}
                for m in members:
                    w = fam.words[m]
                    head, tail = (w[: fam.n_slots - k], w[fam.n_slots - k :]) if side == PRIMAL else (w[k:], w[:k])
                    if tail != dropped * k:
                        violations.append(_witness(ps, axiom="H-frozen-minus", fid_family=fam.fid,
                                                   el_element=m, word=w, depth=k))
                    sub_words[m] = head
                if len(set(sub_words.values())) != len(members):
                    violations.append(_witness(ps, axiom="H-sigma-injective", fid_family=fam.fid, depth=k))
                for lo_i, hi_i in zip(*pair_idx):
                    lo, hi = ps.elements[int(lo_i)], ps.elements[int(hi_i)]
                    if lo in sub_words and hi in sub_words and not dom_leq(sub_words[lo], sub_words[hi]):
                        violations.append(_witness(ps, axiom="H-sigma-monotone", fid_family=fam.fid,
                                                   el_low=lo, el_high=hi, depth=k))

        node_splits = _check_splitting_set(ps, node.elements, frozen_map, side, pair_idx,
                                           violations, counters, max_report)

        if max_depth is not None and node.depth >= max_depth:
            if any(sp is not None and sp.minus for sp in node_splits.values()):
                truncated = True
            continue
        for fid, sp in node_splits.items():
            if sp is None or not sp.minus:
                continue
            key = (frozenset(sp.minus), node.depth + 1)
            if key in seen:
                continue
            child = HierNode(len(nodes), node.depth + 1, key[0], node.nid, fid)
            seen[key] = child.nid
            nodes.append(child)
            queue.append(child)

    # nesting of distinct nodes: element sets disjoint or contained (same
    # for the family-index sets they carry)
    fam_sets = []
    for nd in nodes:
        fam_sets.append(frozenset(ps.family_of[el].fid for el in nd.elements))
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            a, b = nodes[i].elements, nodes[j].elements
            if (a & b) and not (a <= b or b <= a):
                violations.append({"axiom": "H-nesting", "node": nodes[i].nid, "other": nodes[j].nid})
            fa, fb = fam_sets[i], fam_sets[j]
            if (fa & fb) and not (fa <= fb or fb <= fa):
                violations.append({"axiom": "H-nesting-families", "node": nodes[i].nid, "other": nodes[j].nid})

    depth = max(n.depth for n in nodes)
    max_slots = max((f.n_slots for f in ps.families), default=0)
    if depth > max_slots:
        violations.append({"axiom": "H-depth", "depth": depth, "max_slots": max_slots})

    return {
        "kind": ps.kind,
        "side": side,
        "available": True,
        "nodes": len(nodes),
        "max_depth": depth,
        "truncated": truncated,
        "tree": [{"id": n.nid, "depth": n.depth, "parent": n.parent,
                  "via": None if n.via is None else ps.fid_str(n.via), "size": len(n.elements)}
                 for n in nodes],
        "counters": counters,
        "violations": violations[:max_report],
        "violation_count": len(violations),
    }


def family_dag(ps: PosetStructure) -> dict:
    """Directed graph on families: a -> b when a has an element below b."""
    edges = set()
    for lo, hi in ps.strict_pairs():
        fa, fb = ps.family_of[lo].fid, ps.family_of[hi].fid
        if fa != fb:
            edges.add((fa, fb))

    out: dict = {}
    for a, b in edges:
        out.setdefault(a, []).append(b)
    state: dict = {}
    cycle: list = []

    def visit(v, stack):
        state[v] = 1
        stack.append(v)
        for w in out.get(v, ()):
            if state.get(w, 0) == 1:
                cycle.extend(stack[stack.index(w):] + [w])
                return True
            if state.get(w, 0) == 0 and visit(w, stack):
                return True
        stack.pop()
        state[v] = 2
        return False

    acyclic = True
    for fam in ps.families:
        if state.get(fam.fid, 0) == 0 and visit(fam.fid, []):
            acyclic = False
            break

    return {
        "kind": ps.kind,
        "nodes": [ps.fid_str(f.fid) for f in ps.families],
        "edges": sorted((ps.fid_str(a), ps.fid_str(b)) for a, b in edges),
        "acyclic": acyclic,
        "cycle": [ps.fid_str(v) for v in cycle],
    }
