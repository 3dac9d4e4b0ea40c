"""Integral sl2 action on the Grothendieck group of sign-word blocks.

Basis vectors v_t are indexed by words; e flips one '+' to '-', f one
'-' to '+', both summed over all positions, so [e,f] acts on the weight-w
space as multiplication by w.  Divided powers act by subset sums with all
coefficients 1.  Classes of standard, projective, simple and tilting
objects are exact integer vectors through the decomposition tables, and
images under the action decompose exactly by peeling along unitriangular
leading terms.  The reflection theta is the alternating sum of divided
power products; per weight block it is an integer matrix, unimodular and
equal to the unipotent Weyl triple up to one global sign per block.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from basiccat.division import decomp_tables, weight_blocks
from basiccat.signword import (
    MINUS,
    PLUS,
    flip_at,
    h_prefix,
    h_suffix,
    parse_word,
    vee,
    weight,
)

KVector = dict[str, int]


class DecompositionError(ValueError):
    """Raised when an image fails to decompose with the required positivity."""


def _clean(v: KVector) -> KVector:
    return {t: c for t, c in v.items() if c}


def _flip_subset(t: str, subset: tuple[int, ...]) -> str:
    out = list(t)
    for i in subset:
        out[i - 1] = MINUS if out[i - 1] == PLUS else PLUS
    return "".join(out)


def apply_e(v: KVector, k: int = 1) -> KVector:
    """e^{(k)} by the subset formula: all k-subsets of plus positions."""
    if k < 0:
        raise ValueError("divided power index must be >= 0")
    out: KVector = {}
    for t, c in v.items():
        plus = [i for i, ch in enumerate(t, 1) if ch == PLUS]
        for sub in itertools.combinations(plus, k):
            u = _flip_subset(t, sub)
            out[u] = out.get(u, 0) + c
    return _clean(out)


def apply_f(v: KVector, k: int = 1) -> KVector:
    """f^{(k)} by the subset formula: all k-subsets of minus positions."""
    if k < 0:
        raise ValueError("divided power index must be >= 0")
    out: KVector = {}
    for t, c in v.items():
        minus = [i for i, ch in enumerate(t, 1) if ch == MINUS]
        for sub in itertools.combinations(minus, k):
            u = _flip_subset(t, sub)
            out[u] = out.get(u, 0) + c
    return _clean(out)


def divided_power_apply(op: str, k: int, v: KVector) -> KVector:
    """Independent route: iterate the operator k times and divide by k!.

    Divisibility is checked coefficient by coefficient; the subset-sum
    route above must agree, which the tests assert.
    """
    if op not in ("e", "f"):
        raise ValueError("operator must be 'e' or 'f'")
    step = apply_e if op == "e" else apply_f
    acc = dict(v)
    fact = 1
    for j in range(1, k + 1):
        acc = step(acc)
        fact *= j
    out = {}
    for t, c in acc.items():
        if c % fact:
            raise ArithmeticError(f"coefficient {c} of {t} not divisible by {fact}")
        out[t] = c // fact
    return _clean(out)


@lru_cache(maxsize=None)
def _simple_class_rows(n: int) -> dict[str, KVector]:
    """[L(t)] in the v basis: inverse transpose of the Minv blocks."""
    tables = decomp_tables(n)
    rows: dict[str, KVector] = {}
    for blk in tables.blocks.values():
        order = blk.order
        k = len(order)
        # Minv^T is lower unitriangular; invert from the top
        g: list[dict[int, int]] = [dict() for _ in range(k)]
        for i in range(k):
            row = {i: 1}
            for j in range(i):
                c = blk.Minv[j][i]
                if c:
                    for l, x in g[j].items():
                        row[l] = row.get(l, 0) - c * x
            g[i] = {l: x for l, x in row.items() if x}
        for i, t in enumerate(order):
            rows[t] = {order[l]: x for l, x in g[i].items()}
    return rows


def class_of(kind: str, t: str) -> KVector:
    """K-class of the standard / projective / simple / tilting object of t."""
    t = parse_word(t)
    n = len(t)
    if kind == "Delta":
        return {t: 1}
    tables = decomp_tables(n)
    if kind == "P":
        blk = tables.blocks[weight(t)]
        i = blk.index(t)
        return _clean({u: blk.Minv[i][j] for j, u in enumerate(blk.order)})
    if kind == "L":
        return dict(_simple_class_rows(n)[t])
    if kind == "T":
        blk = tables.blocks[weight(t)]
        i = blk.index(t)
        return _clean({u: blk.B[i][j] for j, u in enumerate(blk.order)})
    raise ValueError(f"unknown class kind {kind!r}")


def decompose(kind: str, v: KVector, allow_negative: bool = False) -> dict[str, int]:
    """Coordinates of v in the classes of the given kind.

    Projective classes lead at the lex-minimal support word, simple and
    tilting classes at the lex-maximal one, so peeling the extreme label
    is exact.  Raises DecompositionError when a coefficient is negative
    unless allow_negative is set.
    """
    v = _clean(dict(v))
    out: dict[str, int] = {}
    if kind == "Delta":
        out = dict(v)
    else:
        lead_min = kind == "P"
        while v:
            t = min(v) if lead_min else max(v)
            c = v[t]
            out[t] = c
            cls = class_of(kind, t)
            for u, x in cls.items():
                r = v.get(u, 0) - c * x
                if r:
                    v[u] = r
                else:
                    v.pop(u, None)
    if not allow_negative and any(c < 0 for c in out.values()):
        raise DecompositionError(f"negative multiplicity in {kind} decomposition: {out}")
    return out


def decompose_image(op: str, kind: str, t: str, k: int = 1) -> dict[str, int]:
    """Multiplicities in the image of the kind-object of t under e or f.

    The image of a projective is projective, of a tilting tilting, of a
    standard standard-filtered; for simples the result lists composition
    multiplicities.
    """
    if op not in ("e", "f"):
        raise ValueError("operator must be 'e' or 'f'")
    step = apply_e if op == "e" else apply_f
    img = step(class_of(kind, t), k)
    return decompose(kind, img)


def decompose_simple_image(op: str, t: str, k: int = 1) -> dict[str, int]:
    """Composition multiplicities of the image of a simple object."""
    return decompose_image(op, "L", t, k)


def head_e_delta(t: str) -> dict[str, int]:
    """Head of the image of the standard of t under e.

    One simple L(t with position i flipped) for each '+' whose strict
    suffix has no surviving '+'.
    """
    t = parse_word(t)
    out: dict[str, int] = {}
    for i, ch in enumerate(t, 1):
        if ch == PLUS and h_suffix(t, i + 1)[0] == 0:
            out[flip_at(t, i)] = 1
    return out


# closed forms for the four image decompositions, cross-checked against
# the peeling route on the full grid by the tests

def ep_closed_form(t: str) -> dict[str, int]:
    """e on the projective of t: P(flip i) with multiplicity h_-(suffix)+1
    over pluses whose strict suffix has no surviving '+'."""
    t = parse_word(t)
    out: dict[str, int] = {}
    for i, ch in enumerate(t, 1):
        if ch == PLUS and h_suffix(t, i + 1)[0] == 0:
            out[flip_at(t, i)] = h_suffix(t, i + 1)[1] + 1
    return out


def fp_closed_form(t: str) -> dict[str, int]:
    """f on the projective of t: P(flip i) with multiplicity h_+(prefix
    through i)+1 over minuses whose strict prefix has no surviving '-'."""
    t = parse_word(t)
    out: dict[str, int] = {}
    for i, ch in enumerate(t, 1):
        if ch == MINUS and h_prefix(t, i - 1)[1] == 0:
            out[flip_at(t, i)] = h_prefix(t, i)[0] + 1
    return out


def el_closed_form(t: str) -> dict[str, int]:
    """e on the simple of t: L(flip i) with multiplicity h_+(prefix)+1
    over pluses whose strict prefix has no surviving '-'."""
    t = parse_word(t)
    out: dict[str, int] = {}
    for i, ch in enumerate(t, 1):
        if ch == PLUS and h_prefix(t, i - 1)[1] == 0:
            out[flip_at(t, i)] = h_prefix(t, i - 1)[0] + 1
    return out


def fl_closed_form(t: str) -> dict[str, int]:
    """f on the simple of t: L(flip i) with multiplicity h_-(suffix)+1
    over minuses whose strict suffix has no surviving '+'."""
    t = parse_word(t)
    out: dict[str, int] = {}
    for i, ch in enumerate(t, 1):
        if ch == MINUS and h_suffix(t, i + 1)[0] == 0:
            out[flip_at(t, i)] = h_suffix(t, i + 1)[1] + 1
    return out


def et_closed_form(t: str) -> dict[str, int]:
    """e on the tilting of t, by sign-flip transport of the f-projective form."""
    return {vee(u): m for u, m in fp_closed_form(vee(t)).items()}


def ft_closed_form(t: str) -> dict[str, int]:
    """f on the tilting of t, by sign-flip transport of the e-projective form."""
    return {vee(u): m for u, m in ep_closed_form(vee(t)).items()}


def theta_apply(v: KVector) -> KVector:
    """Reflection on a weight-homogeneous vector.

    On the weight-w block of length-n words

        theta = sum_{d=0}^{(n-|w|)/2} (-1)^d e^{((n-w)/2-d)} f^{((n+w)/2-d)}

    which lands in weight -w and squares to a sign on each block.
    """
    v = _clean(dict(v))
    if not v:
        return {}
    wts = {weight(t) for t in v}
    lens = {len(t) for t in v}
    if len(wts) != 1 or len(lens) != 1:
        raise ValueError("reflection needs a weight-homogeneous input")
    (w,), (n,) = wts, lens
    out: KVector = {}
    for d in range((n - abs(w)) // 2 + 1):
        term = apply_e(apply_f(v, (n + w) // 2 - d), (n - w) // 2 - d)
        sign = -1 if d % 2 else 1
        for t, c in term.items():
            out[t] = out.get(t, 0) + sign * c
    return _clean(out)


def _block_matrix(images: dict[str, KVector], src: tuple[str, ...],
                  dst: tuple[str, ...]) -> list[list[int]]:
    di = {t: i for i, t in enumerate(dst)}
    mat = [[0] * len(src) for _ in dst]
    for j, t in enumerate(src):
        for u, c in images[t].items():
            mat[di[u]][j] = c
    return mat


def theta_block(n: int, w: int) -> dict:
    """Matrix of the reflection from weight w to weight -w.

    Columns follow the lex order of the source block, rows the lex order
    of the target block.
    """
    blocks = weight_blocks(n)
    if w not in blocks:
        raise ValueError(f"no weight {w} block at length {n}")
    src, dst = blocks[w], blocks[-w]
    images = {t: theta_apply({t: 1}) for t in src}
    return {
        "n": n,
        "w": w,
        "source_order": list(src),
        "target_order": list(dst),
        "matrix": _block_matrix(images, src, dst),
    }


def weyl_block(n: int, w: int) -> list[list[int]]:
    """Unipotent Weyl triple exp(-e) exp(f) exp(-e) from weight w to -w."""
    blocks = weight_blocks(n)
    src, dst = blocks[w], blocks[-w]

    def exp_minus_e(v: KVector) -> KVector:
        out: KVector = {}
        for t, c in v.items():
            plus = [i for i, ch in enumerate(t, 1) if ch == PLUS]
            for r in range(len(plus) + 1):
                sgn = -1 if r % 2 else 1
                for sub in itertools.combinations(plus, r):
                    u = _flip_subset(t, sub)
                    out[u] = out.get(u, 0) + sgn * c
        return _clean(out)

    def exp_f(v: KVector) -> KVector:
        out: KVector = {}
        for t, c in v.items():
            minus = [i for i, ch in enumerate(t, 1) if ch == MINUS]
            for r in range(len(minus) + 1):
                for sub in itertools.combinations(minus, r):
                    u = _flip_subset(t, sub)
                    out[u] = out.get(u, 0) + c
        return _clean(out)

    images = {}
    for t in src:
        img = exp_minus_e(exp_f(exp_minus_e({t: 1})))
        images[t] = {u: c for u, c in img.items() if weight(u) == -w}
        assert images[t] == img, "Weyl triple left the target weight space"
    return _block_matrix(images, src, dst)


def integer_det(mat: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [row[:] for row in mat]
    k = len(a)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for r in range(i + 1, k):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[-1][-1]


def reflection_signs(n: int) -> dict[int, int]:
    """Per-block sign relating the reflection to the Weyl triple.

    Raises AssertionError if some block is not an exact global multiple
    of the Weyl matrix by +1 or -1.
    """
    signs: dict[int, int] = {}
    for w in weight_blocks(n):
        th = theta_block(n, w)["matrix"]
        wy = weyl_block(n, w)
        eps = None
        for rt, rw in zip(th, wy):
            for ct, cw in zip(rt, rw):
                if ct == cw == 0:
                    continue
                assert cw != 0 and ct != 0, f"support mismatch at n={n}, w={w}"
                q, r = divmod(ct, cw)
                assert r == 0 and q in (1, -1), f"not a sign multiple at n={n}, w={w}"
                if eps is None:
                    eps = q
                else:
                    assert eps == q, f"inconsistent sign at n={n}, w={w}"
        signs[w] = 1 if eps is None else eps
    return signs
