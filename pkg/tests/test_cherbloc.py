"""Residues, weights, blocks, family moves and the reflection criterion."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from basiccat.cherbloc import (
    blocks,
    c_from_charges,
    charges_from_c,
    crystal_string_lengths,
    equal_parameter_test,
    hom_refl_triv,
    mp_crystal,
    refl_criterion_value,
    residue_fibers,
    residue_multiset,
    simf_closure,
    weight_collection,
    z_slot_word,
)
from basiccat.young import ChargedParams, mp_size, multipartitions_of

HALF = ChargedParams(Fraction(-1, 2), (0,))
THIRD = ChargedParams(Fraction(-1, 3), (0,))
L2 = ChargedParams(Fraction(-1, 3), (1, 0))

GRID = [
    HALF,
    THIRD,
    L2,
    ChargedParams(Fraction(-2, 5), (0,)),
    ChargedParams(Fraction(1, 2), (0, 1)),
    ChargedParams(Fraction(2, 3), (1, 0)),
    ChargedParams(Fraction(-1, 4), (2, 0)),
    ChargedParams(Fraction(1, 5), (0, 3)),
]


# ------------------------------------------------------------ residues

def test_residue_multiset_frozen():
    assert residue_multiset(((),), HALF) == {}
    assert residue_multiset(((2,),), HALF) == {0: 1, 1: 1}
    assert residue_multiset(((1, 1),), HALF) == {0: 1, 1: 1}
    assert residue_multiset(((2,),), THIRD) == {0: 1, 1: 1}
    assert residue_multiset(((1, 1),), THIRD) == {0: 1, 2: 1}


def test_residue_total_is_size():
    for cp in (HALF, L2):
        for n in range(6):
            for lam in multipartitions_of(n, cp.ell):
                assert sum(residue_multiset(lam, cp).values()) == n


def test_weight_collection_frozen():
    assert weight_collection(((),), HALF) == {0: -1}
    assert weight_collection(((1,),), HALF) == {0: 1, 1: -2}
    # level 2 empty: one addable box per component
    assert weight_collection(((), ()), L2) == {0: -1, 1: -1}


# ------------------------------------------------------------ blocks

def test_blocks_frozen():
    assert blocks(2, HALF) == [[((1, 1),), ((2,),)]]
    assert blocks(2, THIRD) == [[((1, 1),)], [((2,),)]]
    assert blocks(0, HALF) == [[((),)]]
    with pytest.raises(ValueError):
        blocks(-1, HALF)


def test_blocks_equal_residue_fibers():
    """The two independent block descriptions give the same partition."""
    for cp in GRID:
        for n in range(6):
            assert blocks(n, cp) == residue_fibers(n, cp), (cp.kappa, cp.charges, n)


def test_blocks_are_partition_of_all():
    for n in range(5):
        flat = [lam for cls in blocks(n, L2) for lam in cls]
        assert sorted(flat) == sorted(multipartitions_of(n, 2))


def test_blocks_charge_shift_invariant():
    """Shifting every charge by the same integer permutes residues but
    keeps the block partition itself."""
    for k in (1, -3):
        shifted = ChargedParams(L2.kappa, tuple(s + k for s in L2.charges))
        for n in range(5):
            assert blocks(n, L2) == blocks(n, shifted)


# ------------------------------------------------------------ family moves

def test_simf_refines_blocks():
    for cp in GRID:
        for n in range(6):
            by_block = {}
            for i, cls in enumerate(blocks(n, cp)):
                for lam in cls:
                    by_block[lam] = i
            for cls in simf_closure(n, cp):
                assert len({by_block[lam] for lam in cls}) == 1


def test_simf_merges_the_rank_two_block():
    assert simf_closure(2, HALF) == [[((1, 1),), ((2,),)]]


def test_simf_equals_blocks_large_denominator():
    cp = ChargedParams(Fraction(-2, 5), (0,))
    for n in range(6):
        assert simf_closure(n, cp) == blocks(n, cp)


def test_simf_strictly_finer_at_half():
    # (3) and (1,1,1) share the residue multiset mod 2 but each is
    # isolated under fixed-size family moves: the unique removable box
    # has no same-residue addable partner anywhere
    b, f = blocks(3, HALF), simf_closure(3, HALF)
    assert len(b) == 2
    assert len(f) == 3
    assert [((1, 1, 1),)] in f and [((3,),)] in f


def test_simf_strictly_finer_level_two():
    # the closure refuses eight-element blocks at n=4
    assert len(blocks(4, L2)) == 4
    assert len(simf_closure(4, L2)) == 12


# ------------------------------------------------------------ crystals

def test_crystal_e_on_empty():
    # e at the class of content s_0 adds the component-0 box
    empty = ((), ())
    z0 = L2.charges[0] % L2.q
    assert mp_crystal("e", z0, empty, L2) == (((1,), ()))
    assert mp_crystal("f", z0, empty, L2) is None
    # equal charges: both first boxes share the class; d^p breaks the tie
    eq = ChargedParams(Fraction(-1, 2), (0, 0))
    assert mp_crystal("e", 0, ((), ()), eq) == ((1,), ())


def test_crystal_partial_inverse():
    for cp in (HALF, L2):
        for n in range(5):
            for lam in multipartitions_of(n, cp.ell):
                for z in range(cp.q):
                    up = mp_crystal("e", z, lam, cp)
                    if up is not None:
                        assert mp_crystal("f", z, up, cp) == lam
                    down = mp_crystal("f", z, lam, cp)
                    if down is not None:
                        assert mp_crystal("e", z, down, cp) == lam


def test_crystal_weight_shift():
    """e at z raises wt_z by 2 and lowers the two neighbour classes by
    one each (combined when q = 2); all other classes are untouched."""
    for cp in (THIRD, L2, ChargedParams(Fraction(-1, 4), (0,))):
        for n in range(5):
            for lam in multipartitions_of(n, cp.ell):
                for z in range(cp.q):
                    up = mp_crystal("e", z, lam, cp)
                    if up is None:
                        continue
                    old = weight_collection(lam, cp)
                    new = weight_collection(up, cp)
                    delta = {
                        c: new.get(c, 0) - old.get(c, 0)
                        for c in range(cp.q)
                        if new.get(c, 0) != old.get(c, 0)
                    }
                    lo, hi = (z - 1) % cp.q, (z + 1) % cp.q
                    want = {z: 2}
                    if lo == hi:
                        want[lo] = -2
                    else:
                        want[lo] = want[hi] = -1
                    assert delta == want, (lam, z, delta)


def test_crystal_string_exhaustion():
    for cp in (HALF, L2):
        for n in range(5):
            for lam in multipartitions_of(n, cp.ell):
                for z in range(cp.q):
                    a, b = crystal_string_lengths(lam, cp, z)
                    cur, steps = lam, 0
                    while (nxt := mp_crystal("e", z, cur, cp)) is not None:
                        cur, steps = nxt, steps + 1
                    assert steps == a
                    cur, steps = lam, 0
                    while (nxt := mp_crystal("f", z, cur, cp)) is not None:
                        cur, steps = nxt, steps + 1
                    assert steps == b


def test_crystal_rejects_bad_operator():
    with pytest.raises(ValueError):
        mp_crystal("x", 0, ((),), HALF)


def test_z_slot_word_orders_by_dp():
    word, boxes = z_slot_word(((2, 1), (1,)), L2, 1)
    dps = [L2.dp(b) for b in boxes]
    assert dps == sorted(dps)
    assert len(word) == len(boxes)


# ------------------------------------------------------------ reflection Hom

def test_hom_refl_triv_frozen():
    assert hom_refl_triv(3, L2) == 1  # (-1/3) * 3 = -1
    assert hom_refl_triv(3, ChargedParams(Fraction(1, 3), (1, 0))) == 0
    assert hom_refl_triv(2, ChargedParams(Fraction(-1, 2), (0, 0))) == 0
    with pytest.raises(ValueError):
        hom_refl_triv(1, L2)
    with pytest.raises(ValueError):
        hom_refl_triv(3, HALF)


def test_hom_charge_shift_invariance():
    for k in range(-4, 5):
        cp = ChargedParams(Fraction(-1, 3), (1 + k, 0 + k))
        assert hom_refl_triv(3, cp) == 1
        assert hom_refl_triv(4, cp) == hom_refl_triv(
            4, ChargedParams(Fraction(-1, 3), (1, 0)))


# ------------------------------------------------------------ c dictionary

def test_c_dictionary_frozen():
    c1, c2 = c_from_charges(Fraction(-1, 6), 4, 0)
    assert (c1, c2) == (Fraction(1, 6), Fraction(1, 6))
    kappa, s0, s1 = charges_from_c(Fraction(1, 6), Fraction(1, 6))
    assert (kappa, s0, s1) == (Fraction(-1, 6), 4, 0)
    with pytest.raises(ValueError):
        charges_from_c(0, Fraction(1, 2))


def test_c_dictionary_roundtrip():
    for kappa in (Fraction(-1, 6), Fraction(2, 5), Fraction(-3, 4)):
        for s0 in range(-3, 4):
            c1, c2 = c_from_charges(kappa, s0, 0)
            back = charges_from_c(c1, c2)
            assert back == (kappa, s0, 0)


def test_equal_parameter_sweep():
    """c_1 = c_2 = m/(2n): Hom nonzero exactly for positive odd m."""
    for n in range(2, 7):
        for m in range(-9, 10):
            if m == 0:
                continue
            assert equal_parameter_test(m, n) == (m > 0 and m % 2 == 1), (m, n)
    with pytest.raises(ValueError):
        equal_parameter_test(3, 1)


def test_refl_value_matches_fs_form():
    # kappa=-1/6, s=(4,0), n=3: value -1, Hom = 1, and c_1 = 1/(2*3)
    assert refl_criterion_value(Fraction(-1, 6), 4, 0, 3) == -1
    assert hom_refl_triv(3, ChargedParams(Fraction(-1, 6), (4, 0))) == 1
    assert c_from_charges(Fraction(-1, 6), 4, 0)[0] == Fraction(1, 2 * 3)


# ------------------------------------------------------------ properties

@given(st.integers(-6, 6), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_weight_sums_to_shifted_size(shift, n):
    """Sum of wt_z over all z equals #removable - #addable boxes."""
    cp = ChargedParams(Fraction(-1, 3), (shift, 1 - shift))
    for lam in multipartitions_of(n, 2):
        total = sum(weight_collection(lam, cp).values())
        from basiccat.young import mp_addable, mp_removable
        assert total == len(mp_removable(lam)) - len(mp_addable(lam))


@given(st.integers(2, 5), st.integers(1, 4), st.integers(-3, 3))
@settings(max_examples=30, deadline=None)
def test_blocks_well_defined(q, p, s0):
    if p % q == 0 or Fraction(p, q).denominator == 1:
        return
    cp = ChargedParams(Fraction(p, q), (s0,))
    for n in range(4):
        cls = blocks(n, cp)
        assert sorted(lam for c in cls for lam in c) == sorted(
            multipartitions_of(n, 1))
        assert cls == residue_fibers(n, cp)
