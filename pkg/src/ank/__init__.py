"""
ank: iterated operators on fixed-width digit strings.

Kaprekar's routine and its relatives (permutation differences, reverse
differences, group swap-add, digit shifts, modular functions and random
operators) as pure functions on width-k digit strings, a single-seed
iterator that measures tail and cycle exactly, and an exhaustive atlas of
the functional graph over all 10**k states.
"""

__version__ = "0.1.0"
__author__ = "Bhasha Open"

from .digitspace import (
    DigitString,
    Permutation,
    from_integer,
    to_integer,
    sort_descending,
    sort_ascending,
    reverse,
    apply_permutation,
    is_repdigit,
)
from .operators import (
    OperatorKind,
    OperatorSpec,
    Grouping,
    ZeroPolicy,
    kaprekar_step,
    perm_diff_step,
    self_perm_diff_step,
    reverse_diff_step,
    sf_swap_add_step,
    digit_shift_sub_step,
    affine_mod_step,
    digit_power_sum_step,
    apply,
    parse_operator_spec,
    serialize_operator_spec,
    preset,
)
from .dynamics import Outcome, Trajectory, iterate, classify
from .atlas import (
    SuccessorTable,
    AtlasReport,
    build_successors,
    analyze,
    build_atlas,
    verify_against_trajectories,
    survey,
)
from .randomops import (
    WalkReport,
    mix64,
    fixed_random_step,
    fresh_random_walk,
    fixed_random_walk,
)

__all__ = [
    # digit strings
    "DigitString",
    "Permutation",
    "from_integer",
    "to_integer",
    "sort_descending",
    "sort_ascending",
    "reverse",
    "apply_permutation",
    "is_repdigit",

    # operators
    "OperatorKind",
    "OperatorSpec",
    "Grouping",
    "ZeroPolicy",
    "kaprekar_step",
    "perm_diff_step",
    "self_perm_diff_step",
    "reverse_diff_step",
    "sf_swap_add_step",
    "digit_shift_sub_step",
    "affine_mod_step",
    "digit_power_sum_step",
    "apply",
    "parse_operator_spec",
    "serialize_operator_spec",
    "preset",

    # dynamics
    "Outcome",
    "Trajectory",
    "iterate",
    "classify",

    # atlas
    "SuccessorTable",
    "AtlasReport",
    "build_successors",
    "analyze",
    "build_atlas",
    "verify_against_trajectories",
    "survey",

    # random operators
    "WalkReport",
    "mix64",
    "fixed_random_step",
    "fresh_random_walk",
    "fixed_random_walk",
]
