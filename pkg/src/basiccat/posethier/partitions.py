"""Partition poset with residue families and both splitting conventions.

Elements are partitions of size at most max_size under dominance (equal
sizes only).  Families are fibers of the stripping map that removes all
removable boxes of content congruent to r mod N at once; the slots of a
family are the addable r-boxes of the stripped base, read by decreasing
content, with '-' marking a present slot box.  The primal splitting
chooses the slot of minimal content (topmost letter reads last), the dual
one the slot of maximal content.
"""

from __future__ import annotations

from typing import Optional

from .. import young
from ..signword import MINUS, PLUS
from .model import DUAL, GT, LT, MID_MINUS, MID_PLUS, PRIMAL, FamilyData, PosetStructure, SplittingData

INF = 10 ** 9


class PartitionPoset(PosetStructure):
    kind = "partitions"
    sides = (PRIMAL, DUAL)

    def __init__(self, N: int, r: int, max_size: int):
        if N == 1:
            raise ValueError("modulus 1 collapses all contents; families need N != 1")
        if N < 0:
            raise ValueError(f"modulus must be >= 0, got {N}")
        if max_size < 0:
            raise ValueError("max_size must be >= 0")
        self.N, self.r, self.max_size = N, r, max_size

        elements = tuple(young.partitions_up_to(max_size))
        fibers: dict[young.Partition, list[young.Partition]] = {}
        for lam in elements:
            nu, removed = young.strip_r_boxes(lam, N, r)
            fibers.setdefault(nu, []).append(lam)

        families = []
        for nu, members in fibers.items():
            slots = tuple(sorted(young.r_addable(nu, N, r), key=young.content, reverse=True))
            slot_set = set(slots)
            words = {}
            for lam in members:
                present = set(young.r_removable(lam, N, r))
                assert present <= slot_set, (lam, nu)
                absent = set(young.r_addable(lam, N, r))
                assert absent == slot_set - present, (lam, nu)
                words[lam] = "".join(MINUS if s in present else PLUS for s in slots)
            complete = young.p_size(nu) + len(slots) <= max_size
            if complete:
                assert len(members) == 2 ** len(slots), (nu, len(members))
            families.append(
                FamilyData(fid=nu, base=nu, slots=slots,
                           members=tuple(sorted(members)), words=words, complete=complete)
            )
        families.sort(key=lambda f: (young.p_size(f.base), f.base))
        super().__init__(elements, families, {"N": N, "r": r, "max_size": max_size})
        self._profiles: dict = {}

    # ---- order ---------------------------------------------------------

    def _leq_raw(self, x, y) -> bool:
        return young.dominance_leq(x, y)

    def group_key(self, el):
        return young.p_size(el)

    def _dom_matrix(self, group):
        # prefix row sums, padded with the shared total
        width = max(len(lam) for lam in group)
        rows = []
        for lam in group:
            acc, row = 0, []
            for i in range(width):
                acc += lam[i] if i < len(lam) else 0
                row.append(acc)
            rows.append(row)
        return rows

    def diag_prec(self, x, y) -> bool:
        """Strict diagonal-count order: x has more boxes on the first
        differing diagonal, scanning contents upward.  Refines dominance."""
        if x == y:
            return False
        dx, dy = self._diag(x), self._diag(y)
        for k in sorted(set(dx) | set(dy)):
            cx, cy = dx.get(k, 0), dy.get(k, 0)
            if cx != cy:
                return cx > cy
        return False

    # ---- splitting -----------------------------------------------------

    def _diag(self, lam) -> dict[int, int]:
        out = self._profiles.get(lam)
        if out is None:
            out = young.diag_supports(lam)
            self._profiles[lam] = out
        return out

    def _split(self, fam, unfrozen, ref, scope, side) -> SplittingData:
        chosen = unfrozen[-1] if side == PRIMAL else unfrozen[0]
        x, y = chosen
        m = y - x
        s = y - 1
        ref_diag = self._diag(ref)

        parts: dict[str, list] = {LT: [], MID_MINUS: [], MID_PLUS: [], GT: []}
        for mu in scope:
            parts[self._classify(mu, ref_diag, x, s, m, side)].append(mu)
        return SplittingData(
            fid=fam.fid, side=side, chosen=chosen,
            lt=frozenset(parts[LT]), minus=frozenset(parts[MID_MINUS]),
            plus=frozenset(parts[MID_PLUS]), gt=frozenset(parts[GT]),
        )

    def _classify(self, mu, ref_diag, x: int, s: int, m: int, side: str) -> str:
        mu_diag = self._diag(mu)
        if side == PRIMAL:
            ks = [k for k in set(ref_diag) | set(mu_diag) if k < m]
            ks.sort()
        else:
            ks = [k for k in set(ref_diag) | set(mu_diag) if k > m]
            ks.sort(reverse=True)
        for k in ks:
            a, b = ref_diag.get(k, 0), mu_diag.get(k, 0)
            if a == b:
                continue
            if side == PRIMAL:
                return GT if b < a else LT
            return GT if b > a else LT

        mu_x = young.row(mu, x)
        mu_up = young.row(mu, x - 1) if x > 1 else INF
        mu_dn = young.row(mu, x + 1)
        if side == PRIMAL:
            if mu_x < s:
                return GT
            if mu_x == s and mu_up == s:
                return GT
            if mu_x == s and mu_up > s:
                return MID_PLUS
            if mu_x == s + 1 and mu_dn <= s:
                return MID_MINUS
            return LT
        if mu_x > s + 1:
            return GT
        if mu_x == s + 1 and mu_dn == s + 1:
            return GT
        if mu_x == s + 1 and mu_dn <= s:
            return MID_MINUS
        if mu_x == s and mu_up > s:
            return MID_PLUS
        return LT

    # ---- rendering -----------------------------------------------------

    def el_str(self, el) -> str:
        return "(" + ",".join(map(str, el)) + ")" if el else "()"

    def fid_str(self, fid) -> str:
        return self.el_str(fid)


def partition_poset(N: int, r: int, max_size: int) -> PartitionPoset:
    return PartitionPoset(N, r, max_size)
