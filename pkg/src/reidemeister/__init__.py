"""Twisted conjugacy classes, Reidemeister numbers and twisted Burnside counts."""

from __future__ import annotations

from .abelian import (
    INFINITE,
    AbelianEndo,
    FgAbelian,
    abelian_endo,
    endo_to_map,
    fixed_count_abelian,
    reidemeister_abelian,
    to_group_table,
)
from .characters import CharacterTable, character_table, conjugacy_classes, fixed_irreducibles
from .extensions import extension_analysis, prepare_extension
from .groups import (
    EndoMap,
    GroupTable,
    automorphisms,
    endo_from_images,
    group_from_cayley,
    group_from_permutations,
    reidemeister_number,
    twisted_classes,
)
from .intmatrix import IntMatrix, smith_normal_form
from .iterates import congruence_check, endo_power, moebius, reidemeister_sequence

__all__ = [
    "INFINITE",
    "AbelianEndo",
    "CharacterTable",
    "EndoMap",
    "FgAbelian",
    "GroupTable",
    "IntMatrix",
    "abelian_endo",
    "automorphisms",
    "character_table",
    "congruence_check",
    "conjugacy_classes",
    "endo_from_images",
    "endo_power",
    "endo_to_map",
    "extension_analysis",
    "fixed_count_abelian",
    "fixed_irreducibles",
    "group_from_cayley",
    "group_from_permutations",
    "moebius",
    "prepare_extension",
    "reidemeister_abelian",
    "reidemeister_number",
    "reidemeister_sequence",
    "smith_normal_form",
    "to_group_table",
    "twisted_classes",
]
