"""The integral sl2 action, image decompositions and the reflection."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from basiccat.kaction import (
    DecompositionError,
    apply_e,
    apply_f,
    class_of,
    decompose,
    decompose_image,
    decompose_simple_image,
    divided_power_apply,
    el_closed_form,
    ep_closed_form,
    et_closed_form,
    fl_closed_form,
    fp_closed_form,
    ft_closed_form,
    head_e_delta,
    integer_det,
    reflection_signs,
    theta_apply,
    theta_block,
    weyl_block,
)
from basiccat.signword import MINUS, PLUS, flip_at, h_prefix, h_suffix, weight, words


def _add(v, w, c=1):
    out = dict(v)
    for t, x in w.items():
        out[t] = out.get(t, 0) + c * x
    return {t: x for t, x in out.items() if x}


# ------------------------------------------------------------ basic action

def test_apply_frozen():
    assert apply_e({"++": 1}) == {"-+": 1, "+-": 1}
    assert apply_f({"+-": 1}) == {"++": 1}
    assert apply_e({"++": 1}, 2) == {"--": 1}
    assert apply_e({"--": 1}) == {}
    with pytest.raises(ValueError):
        apply_e({"+": 1}, -1)


@pytest.mark.parametrize("n", range(6))
def test_commutator_is_weight(n):
    for t in words(n):
        v = {t: 1}
        lhs = _add(apply_e(apply_f(v)), apply_f(apply_e(v)), -1)
        assert lhs == ({t: weight(t)} if weight(t) else {})


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_divided_powers_two_routes(k):
    for n in range(5):
        for t in words(n):
            v = {t: 1}
            assert divided_power_apply("e", k, v) == apply_e(v, k)
            assert divided_power_apply("f", k, v) == apply_f(v, k)


# ------------------------------------------------------------------ classes

def test_class_of_frozen():
    assert class_of("Delta", "+-") == {"+-": 1}
    assert class_of("P", "+-") == {"+-": 1, "-+": 1}
    assert class_of("L", "-+") == {"-+": 1, "+-": -1}
    assert class_of("T", "-+") == {"-+": 1, "+-": 1}
    assert class_of("T", "+-") == {"+-": 1}
    assert class_of("P", "+-+") == {"+-+": 1, "-++": 1}
    assert class_of("L", "-++") == {"-++": 1, "+-+": -1}
    assert class_of("T", "-+-") == {"+--": 1, "-+-": 1}
    with pytest.raises(ValueError):
        class_of("X", "+-")


@pytest.mark.parametrize("n", range(1, 6))
def test_projective_composition_series_is_gram(n):
    """[P(t) : L(s)] equals the inner product of the Minv rows of t and s."""
    from basiccat.division import decomp_tables

    tab = decomp_tables(n)
    for t in words(n):
        comp = decompose("L", class_of("P", t))
        blk = tab.blocks[weight(t)]
        for s in blk.order:
            want = sum(
                tab.minv_entry(t, u) * tab.minv_entry(s, u) for u in blk.order
            )
            assert comp.get(s, 0) == want, (t, s)
        assert comp[t] >= 1


def test_decompose_roundtrip_frozen():
    v = _add(class_of("P", "+-"), class_of("P", "-+"), 2)
    assert decompose("P", v) == {"+-": 1, "-+": 2}
    v = _add(class_of("T", "--+"), class_of("T", "-+-"))
    assert decompose("T", v) == {"--+": 1, "-+-": 1}
    with pytest.raises(DecompositionError):
        decompose("P", class_of("L", "-+"))
    # [L(-+)] = 2[P(-+)] - [P(+-)]
    assert decompose("P", class_of("L", "-+"), allow_negative=True) == {
        "+-": -1,
        "-+": 2,
    }


@settings(max_examples=50)
@given(
    st.dictionaries(
        st.sampled_from([t for t in words(4) if weight(t) == 0]),
        st.integers(min_value=0, max_value=4),
        max_size=4,
    ),
    st.sampled_from(["P", "L", "T", "Delta"]),
)
def test_decompose_inverts_assembly(mults, kind):
    v = {}
    for t, c in mults.items():
        v = _add(v, class_of(kind, t), c)
    got = decompose(kind, v, allow_negative=True)
    assert got == {t: c for t, c in mults.items() if c}


# ----------------------------------------------------- image decompositions

def test_image_decomposition_frozen():
    assert decompose_image("e", "P", "+-") == {"--": 2}
    assert head_e_delta("++") == {"+-": 1}
    assert decompose_simple_image("f", "-+") == {}
    assert decompose_image("e", "T", "-+") == {"--": 2}
    assert decompose_image("f", "T", "-+") == {"++": 2}
    with pytest.raises(ValueError):
        decompose_image("g", "P", "+-")


@pytest.mark.parametrize("n", range(1, 8))
def test_closed_forms_match_peeling(n):
    forms = {
        ("e", "P"): ep_closed_form,
        ("f", "P"): fp_closed_form,
        ("e", "L"): el_closed_form,
        ("f", "L"): fl_closed_form,
        ("e", "T"): et_closed_form,
        ("f", "T"): ft_closed_form,
    }
    for t in words(n):
        for (op, kind), form in forms.items():
            assert form(t) == decompose_image(op, kind, t), (op, kind, t)


def test_head_of_e_delta_is_closed_form_support():
    for n in range(1, 7):
        for t in words(n):
            assert set(head_e_delta(t)) == set(ep_closed_form(t))
            assert all(m == 1 for m in head_e_delta(t).values())


# ------------------------------------------------- known printed divergences

def _printed_fl(t: str) -> dict:
    """Suffix clause read with the suffix starting at i itself."""
    out = {}
    for i, ch in enumerate(t, 1):
        if ch == MINUS and h_suffix(t, i)[0] == 0:
            out[flip_at(t, i)] = h_suffix(t, i)[1] + 1
    return out


def _printed_et(t: str) -> dict:
    """Prefix clause for e on tiltings, as stated."""
    out = {}
    for i, ch in enumerate(t, 1):
        if ch == PLUS and h_prefix(t, i - 1)[0] == 0:
            out[flip_at(t, i)] = h_prefix(t, i)[1] + 1
    return out


def test_printed_fl_clause_fails_at_minus_plus():
    """The as-stated suffix clause predicts a simple that f kills."""
    t = "-+"
    assert _printed_fl(t) == {"++": 1}
    assert decompose_simple_image("f", t) == {}
    assert fl_closed_form(t) == {}


def test_printed_et_clause_fails_at_minus_plus():
    """The as-stated prefix clause gives multiplicity 1; transport gives 2."""
    t = "-+"
    assert _printed_et(t) == {"--": 1}
    assert decompose_image("e", "T", t) == {"--": 2}
    assert et_closed_form(t) == {"--": 2}


# ------------------------------------------------------------- the reflection

def test_theta_frozen_small():
    assert theta_apply({"+": 1}) == {"-": 1}
    assert theta_apply({"-": 1}) == {"+": 1}
    assert theta_block(2, 0)["matrix"] == [[0, 1], [1, 0]]
    assert theta_block(2, -2)["matrix"] == [[1]]
    with pytest.raises(ValueError):
        theta_block(2, 1)
    with pytest.raises(ValueError):
        theta_apply({"+-": 1, "++": 1})


@pytest.mark.parametrize("n", range(1, 5))
def test_theta_lands_in_opposite_weight(n):
    for t in words(n):
        img = theta_apply({t: 1})
        assert all(weight(u) == -weight(t) for u in img)


@pytest.mark.parametrize("n", range(1, 5))
def test_theta_unimodular_and_squares_to_sign(n):
    from basiccat.division import weight_blocks

    blocks = weight_blocks(n)
    for w, order in blocks.items():
        mat = theta_block(n, w)["matrix"]
        assert integer_det(mat) in (1, -1)
        # theta twice is a single sign on the whole block
        sq_sign = None
        for t in order:
            img = theta_apply(theta_apply({t: 1}))
            assert set(img) == {t}
            if sq_sign is None:
                sq_sign = img[t]
            assert img[t] == sq_sign and sq_sign in (1, -1)


def test_reflection_signs_frozen():
    assert reflection_signs(1) == {-1: -1, 1: 1}
    assert reflection_signs(2) == {-2: 1, 0: -1, 2: 1}
    assert reflection_signs(3) == {-3: -1, -1: 1, 1: -1, 3: 1}


@pytest.mark.parametrize("n", range(1, 5))
def test_theta_matches_weyl_up_to_sign(n):
    from basiccat.division import weight_blocks

    signs = reflection_signs(n)
    for w in weight_blocks(n):
        th = theta_block(n, w)["matrix"]
        wy = weyl_block(n, w)
        eps = signs[w]
        assert th == [[eps * c for c in row] for row in wy]


# ------------------------------------------------------------ integer dets

def test_integer_det_frozen():
    assert integer_det([]) == 1
    assert integer_det([[7]]) == 7
    assert integer_det([[2, 1], [1, 1]]) == 1
    assert integer_det([[1, 2], [3, 4]]) == -2
    assert integer_det([[1, 2], [2, 4]]) == 0


@settings(max_examples=60)
@given(
    st.lists(
        st.lists(st.integers(min_value=-4, max_value=4), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    )
)
def test_integer_det_against_leibniz(rows):
    k = len(rows)
    acc = 0
    for perm in itertools.permutations(range(k)):
        inv = sum(
            1
            for i in range(k)
            for j in range(i + 1, k)
            if perm[i] > perm[j]
        )
        term = 1
        for i in range(k):
            term *= rows[i][perm[i]]
        acc += (-1) ** inv * term
    assert integer_det(rows) == acc
