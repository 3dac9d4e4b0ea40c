"""Bar involution, Laurent arithmetic and the canonical basis."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from basiccat.division import decomp_tables, recover_division
from basiccat.qcanon import (
    ONE,
    Q_MINUS_QINV,
    ZERO,
    LaurentPoly,
    apply_bar,
    bar_images,
    canonical_basis,
    compare_with_divisions,
    quantum_e,
)
from basiccat.signword import weight, words

poly_st = st.dictionaries(
    st.integers(min_value=-5, max_value=5), st.integers(min_value=-9, max_value=9),
    max_size=5,
).map(LaurentPoly)


# ---------------------------------------------------------------- arithmetic

def test_laurent_basics():
    p = LaurentPoly({1: 1, -1: -1})
    assert p == Q_MINUS_QINV
    assert str(p) == "-q^-1 + q"
    assert str(ZERO) == "0" and str(ONE) == "1"
    assert str(LaurentPoly({2: -3, 0: 1})) == "1 - 3*q^2"
    assert p * p == LaurentPoly({2: 1, 0: -2, -2: 1})
    assert (p - p) == ZERO and not (p - p)
    assert -p == LaurentPoly({1: -1, -1: 1})
    assert 2 * ONE == LaurentPoly(2)
    assert LaurentPoly(0) == 0 and ONE == 1


def test_laurent_parts():
    p = LaurentPoly({3: 2, 0: 5, -2: 7})
    assert p.bar() == LaurentPoly({-3: 2, 0: 5, 2: 7})
    assert p.at_one() == 14
    assert p.positive_part() == LaurentPoly({3: 2})


@given(poly_st, poly_st)
def test_laurent_ring_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b).bar() == a.bar() + b.bar()
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).at_one() == a.at_one() + b.at_one()
    assert (a * b).at_one() == a.at_one() * b.at_one()
    assert a.bar().bar() == a


@given(poly_st)
def test_laurent_hash_consistency(a):
    assert hash(a) == hash(LaurentPoly(dict(a.c)))


# ------------------------------------------------------------- the involution

def test_quantum_e_frozen():
    assert quantum_e({"++": ONE}) == {
        "-+": LaurentPoly.q_power(1),
        "+-": ONE,
    }
    assert quantum_e({"--": ONE}) == {}


def test_bar_pinned_rank_two():
    imgs = bar_images(2)
    assert imgs["+-"] == {"+-": ONE, "-+": Q_MINUS_QINV}
    assert imgs["-+"] == {"-+": ONE}
    assert imgs["++"] == {"++": ONE}
    assert imgs["--"] == {"--": ONE}


@pytest.mark.parametrize("n", range(6))
def test_bar_is_an_involution(n):
    for t in words(n):
        assert apply_bar(apply_bar({t: ONE})) == {t: ONE}


@pytest.mark.parametrize("n", range(5))
def test_bar_is_unitriangular_for_dominance(n):
    from basiccat.signword import dom_leq

    for t in words(n):
        img = bar_images(n)[t]
        assert img.get(t) == ONE
        for u in img:
            assert weight(u) == weight(t)
            assert dom_leq(t, u)


def test_bar_antilinearity():
    c = LaurentPoly({2: 3, -1: 1})
    v = {"+-": c}
    got = apply_bar(v)
    want = {u: c.bar() * x for u, x in bar_images(2)["+-"].items()}
    assert got == {u: x for u, x in want.items() if x}
    with pytest.raises(ValueError):
        apply_bar({"+": ONE, "+-": ONE})


# ------------------------------------------------------------ canonical basis

def test_canonical_rank_two_frozen():
    cb = canonical_basis(2)
    assert cb["+-"] == {"+-": ONE, "-+": LaurentPoly.q_power(1)}
    assert cb["-+"] == {"-+": ONE}
    assert cb["++"] == {"++": ONE}


def test_canonical_coefficients_shape():
    for n in range(6):
        cb = canonical_basis(n)
        for t, vec in cb.items():
            assert vec[t] == ONE
            for u, p in vec.items():
                if u == t:
                    continue
                assert u > t  # lex, hence dominance-higher
                assert all(k >= 1 for k in p.c), (t, u, str(p))
            assert apply_bar(vec) == vec


def test_canonical_nonmonomial_frozen():
    """The first coefficient with two terms, against a degree-1 division."""
    cb = canonical_basis(4)
    assert cb["+-+-"]["--++"] == LaurentPoly({1: 1, 3: 1})
    assert recover_division("+-+-", "--++") is not None
    # and the first escape of the exponent from the division degree
    assert cb["++--"]["--++"] == LaurentPoly.q_power(4)


@pytest.mark.parametrize("n", range(6))
def test_canonical_evaluates_to_decomposition_rows(n):
    tab = decomp_tables(n)
    cb = canonical_basis(n)
    for blk in tab.blocks.values():
        for t in blk.order:
            for u in blk.order:
                assert cb[t].get(u, ZERO).at_one() == tab.minv_entry(t, u)


def test_compare_report_small_n():
    for n in range(4):
        rep = compare_with_divisions(n)
        assert rep["evaluation_matches"]
        assert rep["monomial_matches"]
    rep = compare_with_divisions(3)
    assert rep["nondivision_support"] == [
        {"t": "++-", "u": "-++", "poly": "q^2"},
        {"t": "+--", "u": "--+", "poly": "q^2"},
    ]


def test_compare_report_n4_divergence():
    """Evaluation holds; the monomial refinement genuinely fails here."""
    rep = compare_with_divisions(4)
    assert rep["evaluation_matches"]
    assert not rep["monomial_matches"]
    assert rep["monomial_mismatches"] == [
        {"t": "++--", "u": "--++", "poly": "q^4", "expected": "q^2"},
        {"t": "+-+-", "u": "--++", "poly": "q + q^3", "expected": "q"},
    ]
