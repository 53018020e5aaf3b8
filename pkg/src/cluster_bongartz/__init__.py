"""Cluster seeds with principal coefficients, Bongartz completion and exchange quivers."""

from __future__ import annotations

from .bongartz import (
    CompletionResult,
    CompletionSearch,
    VariableSet,
    cocomplete_search,
    commutativity_check,
    complete,
    complete_bfs,
    complete_greedy,
    g_pair_alt_check,
    is_cocompletion,
    is_completion,
    is_g_pair,
)
from .errors import ClusterError, InputError, InvariantViolation, LaurentDivisionError, NotSkewSymmetrizableError
from .laurent import LaurentPoly, SymbolicSeed, TropMonomial, symbolic_replay, symbolic_root
from .matrix_core import ExchangeMatrix, mutate_matrix
from .poisson import Sign, classify, reconstruct_from_negative, reconstruct_from_positive
from .quiver import ExchangeQuiver, build_quiver, check_reduction_iso, green_to_red_search, restrict_to_U
from .search import Caps, Frame, Status
from .seeds import Seed, canonical_key, new_root, replay, seeds_equivalent

__all__ = [
    "Caps",
    "ClusterError",
    "CompletionResult",
    "CompletionSearch",
    "ExchangeMatrix",
    "ExchangeQuiver",
    "Frame",
    "InputError",
    "InvariantViolation",
    "LaurentDivisionError",
    "LaurentPoly",
    "NotSkewSymmetrizableError",
    "Seed",
    "Sign",
    "Status",
    "SymbolicSeed",
    "TropMonomial",
    "VariableSet",
    "build_quiver",
    "canonical_key",
    "check_reduction_iso",
    "classify",
    "cocomplete_search",
    "commutativity_check",
    "complete",
    "complete_bfs",
    "complete_greedy",
    "g_pair_alt_check",
    "green_to_red_search",
    "is_cocompletion",
    "is_completion",
    "is_g_pair",
    "mutate_matrix",
    "new_root",
    "reconstruct_from_negative",
    "reconstruct_from_positive",
    "replay",
    "restrict_to_U",
    "seeds_equivalent",
    "symbolic_replay",
    "symbolic_root",
]
