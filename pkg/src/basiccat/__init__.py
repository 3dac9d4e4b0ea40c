"""Exact combinatorics of minimal categorical sl2 actions.

The package works over words in {+,-}^n (simple labels of a block of
highest-weight modules), their cup-diagram divisions, the induced
projective resolutions and decomposition tables, the integral sl2 action
on complexified Grothendieck groups together with the reflection
equivalence, a q-deformation carrying the canonical basis, abstract
splitting/hierarchy axioms on three concrete box posets, and the block
combinatorics of cyclotomic rational Cherednik categories O.

All arithmetic is exact (int / Fraction / integer Laurent polynomials).
"""

from basiccat.signword import (
    ReducedForm,
    WordStats,
    bar,
    crystal_e,
    crystal_f,
    dom_leq,
    flip_at,
    h_prefix,
    h_suffix,
    parse_word,
    reduced_form,
    vee,
    weight,
    word_stats,
    words,
)

ENGINE_VERSION = "0.1.0"

__all__ = [
    "ENGINE_VERSION",
    "ReducedForm",
    "WordStats",
    "bar",
    "crystal_e",
    "crystal_f",
    "dom_leq",
    "flip_at",
    "h_prefix",
    "h_suffix",
    "parse_word",
    "reduced_form",
    "vee",
    "weight",
    "word_stats",
    "words",
]
