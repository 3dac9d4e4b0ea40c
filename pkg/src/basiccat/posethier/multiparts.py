"""Multipartition poset for a non-integral rational parameter and charges.

Boxes carry the shifted content y - x + s_i; two boxes are linked when
their contents agree modulo the denominator q, and the ordering invariant
d(box) = kappa * ell * content - component refines each class into
diagonals.  lam <= mu requires equal size, equal class counts, and the
descending d-lists of lam to dominate mu's pointwise (the matching
criterion for the box order).

Families fix a residue class z: strip all removable z-boxes at once; the
slots are the addable z-boxes of the base read by increasing d, with '-'
marking a present slot.  The splitting scans the non-z classes in
ascending residue order (diagonals from the top) and then the z-diagonals
above the chosen slot; the first count difference decides above/below,
full equality lands in the middles by the status of the chosen box.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .. import young
from ..signword import MINUS, PLUS
from .model import GT, LT, MID_MINUS, MID_PLUS, PRIMAL, FamilyData, PosetStructure, SplittingData


class MultipartitionPoset(PosetStructure):
    kind = "multipartitions"
    sides = (PRIMAL,)

    def __init__(self, kappa: Fraction, charges: Sequence[int], max_size: int, z: int = 0):
        self.cp = young.ChargedParams(kappa, charges)
        if max_size < 0:
            raise ValueError("max_size must be >= 0")
        self.z = z % self.cp.q
        self.max_size = max_size

        elements = tuple(young.multipartitions_up_to(max_size, self.cp.ell))
        fibers: dict[young.MultiPartition, list[young.MultiPartition]] = {}
        for lam in elements:
            nu, removed = self.cp.strip_z_boxes(lam, self.z)
            fibers.setdefault(nu, []).append(lam)

        families = []
        for nu, members in fibers.items():
            slots = tuple(sorted(self.cp.z_addable(nu, self.z), key=self.cp.dp))
            assert len({self.cp.dp(b) for b in slots}) == len(slots), nu
            slot_set = set(slots)
            words = {}
            for lam in members:
                present = set(self.cp.z_removable(lam, self.z))
                assert present <= slot_set, (lam, nu)
                absent = set(self.cp.z_addable(lam, self.z))
                assert absent == slot_set - present, (lam, nu)
                words[lam] = "".join(MINUS if s in present else PLUS for s in slots)
            complete = young.mp_size(nu) + len(slots) <= max_size
            if complete:
                assert len(members) == 2 ** len(slots), (nu, len(members))
            families.append(
                FamilyData(fid=nu, base=nu, slots=slots,
                           members=tuple(sorted(members)), words=words, complete=complete)
            )
        families.sort(key=lambda f: (young.mp_size(f.base), f.base))
        super().__init__(
            elements, families,
            {"kappa": kappa, "charges": tuple(charges), "max_size": max_size, "z": self.z},
        )
        self._profiles: dict = {}
        self._leq_profiles: dict = {}

    # ---- order ---------------------------------------------------------

    def _diag_profile(self, lam) -> dict[int, dict[Fraction, int]]:
        """Per residue class, box counts keyed by the d-invariant."""
        out = self._profiles.get(lam)
        if out is None:
            out = {}
            for box in young.mp_boxes(lam):
                c = self.cp.residue(box)
                d = self.cp.dp(box)
                cls = out.setdefault(c, {})
                cls[d] = cls.get(d, 0) + 1
            self._profiles[lam] = out
        return out

    def _leq_profile(self, lam) -> dict[int, tuple]:
        """Per class, the descending multiset of d-values, expanded."""
        out = self._leq_profiles.get(lam)
        if out is None:
            out = {}
            for c, diag in self._diag_profile(lam).items():
                expanded: list[Fraction] = []
                for d in sorted(diag, reverse=True):
                    expanded.extend([d] * diag[d])
                out[c] = tuple(expanded)
            self._leq_profiles[lam] = out
        return out

    def _leq_raw(self, x, y) -> bool:
        px, py = self._leq_profile(x), self._leq_profile(y)
        if set(px) != set(py):
            return False
        for c, dx in px.items():
            dy = py[c]
            if len(dx) != len(dy):
                return False
            if any(a < b for a, b in zip(dx, dy)):
                return False
        return True

    def group_key(self, el):
        prof = self._leq_profile(el)
        return (young.mp_size(el), tuple(sorted((c, len(d)) for c, d in prof.items())))

    def _dom_matrix(self, group):
        # negated d-values, scaled integral, classes in fixed order
        q = self.cp.q
        rows = []
        for el in group:
            prof = self._leq_profile(el)
            row: list[int] = []
            for c in sorted(prof):
                row.extend(-int(d * q) for d in prof[c])
            rows.append(row)
        return rows

    # ---- splitting -----------------------------------------------------

    def _split(self, fam, unfrozen, ref, scope, side) -> SplittingData:
        chosen = unfrozen[-1]
        m_dp = self.cp.dp(chosen)
        ref_prof = self._diag_profile(ref)
        scan_classes = [c for c in range(self.cp.q) if c != self.z]

        parts: dict[str, list] = {LT: [], MID_MINUS: [], MID_PLUS: [], GT: []}
        anomalies: list[dict] = []
        for mu in scope:
            parts[self._classify(mu, ref_prof, scan_classes, m_dp, chosen, anomalies)].append(mu)
        return SplittingData(
            fid=fam.fid, side=side, chosen=chosen,
            lt=frozenset(parts[LT]), minus=frozenset(parts[MID_MINUS]),
            plus=frozenset(parts[MID_PLUS]), gt=frozenset(parts[GT]),
            anomalies=anomalies,
        )

    def _classify(self, mu, ref_prof, scan_classes, m_dp, chosen, anomalies) -> str:
        mu_prof = self._diag_profile(mu)
        for c in scan_classes:
            dref = ref_prof.get(c, {})
            dmu = mu_prof.get(c, {})
            for d in sorted(set(dref) | set(dmu), reverse=True):
                a, b = dref.get(d, 0), dmu.get(d, 0)
                if a != b:
                    return GT if b < a else LT
        dref = ref_prof.get(self.z, {})
        dmu = mu_prof.get(self.z, {})
        for d in sorted((k for k in set(dref) | set(dmu) if k > m_dp), reverse=True):
            a, b = dref.get(d, 0), dmu.get(d, 0)
            if a != b:
                return GT if b < a else LT

        x, y, i = chosen
        comp = mu[i] if i < len(mu) else ()
        if (x, y) in young.addable_boxes(comp):
            return MID_PLUS
        if (x, y) in young.removable_boxes(comp):
            return MID_MINUS
        anomalies.append({"note": "chosen slot neither addable nor removable",
                          "element": self.el_str(mu)})
        return LT

    # ---- rendering -----------------------------------------------------

    def el_str(self, el) -> str:
        return "|".join("(" + ",".join(map(str, c)) + ")" for c in el)

    def el_json(self, el):
        return [list(c) for c in el]

    def fid_str(self, fid) -> str:
        return self.el_str(fid)


def multipartition_poset(
    kappa: Fraction | int | str,
    charges: Sequence[int],
    max_size: int,
    z: int = 0,
) -> MultipartitionPoset:
    return MultipartitionPoset(Fraction(kappa), charges, max_size, z=z)
