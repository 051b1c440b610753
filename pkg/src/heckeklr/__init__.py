"""Exact computations with blocks of cyclotomic Hecke algebras and their KLR generators."""

from .blockspectral import Block, block_decomposition, character, weight_idempotents
from .exactfield import make_field, parse_field_spec, quantum_characteristic
from .heckecore import build_hecke, normal_form, regular_matrices
from .klriso import (
    check_grading,
    check_nilpotency_conjecture,
    compare_blocks,
    hecke_from_klr,
    intertwiners,
    klr_generators,
    poincare_polynomial,
    verify_intertwiner_identities,
    verify_klr_relations,
)
from .rootdata import DominantWeight, PositiveRoot
from .seminormal import classical_oracle, seminormal_action, specht_module, verify_specht

__version__ = "0.1.0"

__all__ = [
    "Block",
    "DominantWeight",
    "PositiveRoot",
    "block_decomposition",
    "build_hecke",
    "character",
    "check_grading",
    "check_nilpotency_conjecture",
    "classical_oracle",
    "compare_blocks",
    "hecke_from_klr",
    "intertwiners",
    "klr_generators",
    "make_field",
    "normal_form",
    "parse_field_spec",
    "poincare_polynomial",
    "quantum_characteristic",
    "regular_matrices",
    "seminormal_action",
    "specht_module",
    "verify_intertwiner_identities",
    "verify_klr_relations",
    "verify_specht",
    "weight_idempotents",
]
