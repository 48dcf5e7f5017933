"""Subgroup-aware evaluation toolkit for Japanese past-tense inflection."""

__version__ = "0.1.0"

from .conjugator import VerbType, conjugate_past, over_regularized_form
from .classifier import infer_type
from .kana import KanaWord, Mora, diff, segment_moras

__all__ = [
    "VerbType",
    "conjugate_past",
    "over_regularized_form",
    "infer_type",
    "KanaWord",
    "Mora",
    "diff",
    "segment_moras",
]
