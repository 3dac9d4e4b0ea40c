"""Labelling posets with families, splittings and hierarchy checkers."""

from .model import (
    DUAL,
    PRIMAL,
    FamilyData,
    HierNode,
    PosetStructure,
    SplittingData,
    chain_order,
    check_family_axioms,
    check_hierarchy,
    check_splitting_axioms,
    family_dag,
    flip_keyed,
    keyed_letter,
)
from .multiparts import MultipartitionPoset, multipartition_poset
from .parabolic import ParabolicPoset, parabolic_poset
from .partitions import PartitionPoset, partition_poset

__all__ = [
    "DUAL",
    "PRIMAL",
    "FamilyData",
    "HierNode",
    "PosetStructure",
    "SplittingData",
    "chain_order",
    "check_family_axioms",
    "check_hierarchy",
    "check_splitting_axioms",
    "family_dag",
    "flip_keyed",
    "keyed_letter",
    "MultipartitionPoset",
    "multipartition_poset",
    "ParabolicPoset",
    "parabolic_poset",
    "PartitionPoset",
    "partition_poset",
]
