"""Flat virtual links as Gauss codes: invariants, filamentations, moves.

A flat virtual link is stored as a tuple of named cyclic codewords in
which every crossing identifier appears exactly twice with opposite
signs.  On top of that representation the package computes the
polynomial link invariant (per-component polynomials, flat linking
differences, and pair coefficients), constructs and verifies
filamentations, rewrites codes with the flat Reidemeister moves, and
enumerates or searches small codes for separating examples.
"""

from .gausscode import (
    MINUS,
    PLUS,
    Codeword,
    CrossingAppearsOnce,
    CrossingAppearsThrice,
    CrossingCatalog,
    DuplicateComponentName,
    FlatLinkCode,
    FlatLinkError,
    Letter,
    MalformedToken,
    PairCrossing,
    PositionOutOfRange,
    SamePosition,
    SameSignTwice,
    SelfCrossing,
    codes_equivalent_syntactically,
    default_component_name,
    intersection_number,
    parse_flat_link,
    relabeled,
    render_flat_link,
    total_sign,
    validate,
)
from .invariant import (
    InvalidPartition,
    LinkInvariant,
    NonzeroFlatLinking,
    PairPartition,
    SameComponent,
    SparsePoly,
    choose_pair_partition,
    flat_linking_diff,
    invariants_equal,
    link_polynomial,
    pair_coefficient,
    self_polynomial,
)
from .filament import (
    ORACLE_CAP,
    Filamentation,
    FilamentViolation,
    InstanceTooLarge,
    PairNotInPartition,
    PartitionNotCovering,
    PartsOverlap,
    ZeroSumPartition,
    brute_force_filamentation,
    component_filamentation,
    elementary_switch,
    greedy_zero_sum_partition,
    link_filamentation,
    verify_filamentation,
)
from .moves import (
    KINDS,
    MalformedMoveLine,
    MoveSite,
    StaleSite,
    apply_move,
    find_move_sites,
    random_walk,
)
from .generate import (
    ENUMERATION_CAP,
    GenSpec,
    InfeasibleSpec,
    SearchGoal,
    SearchLimits,
    enumerate_small_codes,
    random_flat_link,
    search_examples,
)

__version__ = "0.1.0"

__all__ = [
    "PLUS",
    "MINUS",
    "Letter",
    "Codeword",
    "FlatLinkCode",
    "SelfCrossing",
    "PairCrossing",
    "CrossingCatalog",
    "FlatLinkError",
    "MalformedToken",
    "DuplicateComponentName",
    "CrossingAppearsOnce",
    "CrossingAppearsThrice",
    "SameSignTwice",
    "SamePosition",
    "PositionOutOfRange",
    "parse_flat_link",
    "render_flat_link",
    "validate",
    "total_sign",
    "intersection_number",
    "codes_equivalent_syntactically",
    "relabeled",
    "default_component_name",
    "SparsePoly",
    "PairPartition",
    "LinkInvariant",
    "SameComponent",
    "NonzeroFlatLinking",
    "InvalidPartition",
    "flat_linking_diff",
    "self_polynomial",
    "choose_pair_partition",
    "pair_coefficient",
    "link_polynomial",
    "invariants_equal",
    "ORACLE_CAP",
    "Filamentation",
    "FilamentViolation",
    "ZeroSumPartition",
    "PartitionNotCovering",
    "PartsOverlap",
    "PairNotInPartition",
    "InstanceTooLarge",
    "verify_filamentation",
    "component_filamentation",
    "greedy_zero_sum_partition",
    "link_filamentation",
    "brute_force_filamentation",
    "elementary_switch",
    "KINDS",
    "MoveSite",
    "StaleSite",
    "MalformedMoveLine",
    "find_move_sites",
    "apply_move",
    "random_walk",
    "ENUMERATION_CAP",
    "GenSpec",
    "InfeasibleSpec",
    "random_flat_link",
    "enumerate_small_codes",
    "SearchGoal",
    "SearchLimits",
    "search_examples",
]
