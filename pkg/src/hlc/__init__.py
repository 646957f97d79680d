"""Locally repairable codes with hierarchical locality over finite fields."""

from __future__ import annotations

from .analysis import distance_bound, locality_audit, min_distance_oracle, optimality_check, support_accumulation_audit
from .coset_tree import HierarchyProfile, build_coset_tree, relevant_subtree
from .errors import (CapExceededError, ConstructionError, FieldError, HLCError, ProfileError,
                     UnrecoverableError)
from .gf import Field, FieldElement, find_field, make_field
from .lrc import HierarchicalCode, build_code, encode_constructive, encode_monomial
from .pyramid import PyramidCode, PyramidSpec, build_pyramid
from .repair import decode_message, repair_all, repair_at_level, repair_symbol
from .shards import ShardSet

__version__ = "0.1.0"

__all__ = [
    "CapExceededError", "ConstructionError", "Field", "FieldElement", "FieldError", "HLCError",
    "HierarchicalCode", "HierarchyProfile", "ProfileError", "PyramidCode", "PyramidSpec", "ShardSet",
    "UnrecoverableError", "build_code", "build_coset_tree", "build_pyramid", "decode_message",
    "distance_bound", "encode_constructive", "encode_monomial", "find_field", "locality_audit",
    "make_field", "min_distance_oracle", "optimality_check", "relevant_subtree", "repair_all", "repair_at_level",
    "repair_symbol", "support_accumulation_audit",
]
