"""Rule-based past-tense formation for hiragana verb lemmas.

This is the gold-form oracle: deterministic, total over legal inputs, and the
reference against which every generated or classified pair is checked.
"""

from __future__ import annotations

from enum import Enum

from .errors import RejectedInput, RuleDomainError
from .kana import KanaWord, segment_moras


class VerbType(Enum):
    T1_Godan = "1"
    T2_Ichidan = "2"
    T3_CanonicalIrregular = "3"
    T4_1_IGemination = "4-1"
    T4_2_EGemination = "4-2"
    T4_3_Localized = "4-3"

    @property
    def label(self) -> str:
        return self.value


# Standard Godan past-tense endings, keyed by the lemma's final mora.
GODAN_PAST_ENDINGS = {
    "く": "いた",
    "ぐ": "いだ",
    "す": "した",
    "う": "った",
    "つ": "った",
    "る": "った",
    "ぬ": "んだ",
    "ぶ": "んだ",
    "む": "んだ",
}

# Pre-る vowel required for the geminating subtypes.
_T4_PRE_RU_VOWEL = {
    VerbType.T4_1_IGemination: "i",
    VerbType.T4_2_EGemination: "e",
}


def _stem(lemma: KanaWord, n_final: int = 1) -> KanaWord:
    if len(lemma) <= n_final:
        raise RejectedInput(
            f"lemma {lemma.surface!r} has no stem after removing its ending"
        )
    return KanaWord(lemma.moras[:-n_final])


def is_canonical_irregular(lemma: KanaWord) -> bool:
    """する/くる or a compound ending in them."""
    s = lemma.surface
    return s.endswith("する") or s.endswith("くる")


def conjugate_past(lemma: KanaWord, vtype: VerbType) -> KanaWord:
    """Return the unique past-tense form of lemma under vtype's rule."""
    final = lemma.moras[-1].surface

    if vtype is VerbType.T1_Godan:
        ending = GODAN_PAST_ENDINGS.get(final)
        if ending is None:
            raise RuleDomainError(
                f"{lemma.surface!r}: final mora {final!r} is not a Godan ending"
            )
        return segment_moras(_stem(lemma).surface + ending)

    if vtype is VerbType.T2_Ichidan:
        if final != "る":
            raise RuleDomainError(
                f"{lemma.surface!r}: Ichidan lemma must end in る, got {final!r}"
            )
        return segment_moras(_stem(lemma).surface + "た")

    if vtype is VerbType.T3_CanonicalIrregular:
        s = lemma.surface
        if s.endswith("する"):
            return segment_moras(s[:-2] + "した")
        if s.endswith("くる"):
            return segment_moras(s[:-2] + "きた")
        raise RuleDomainError(
            f"{lemma.surface!r} is not する/くる or a compound thereof"
        )

    if vtype in _T4_PRE_RU_VOWEL:
        if final != "る":
            raise RuleDomainError(
                f"{lemma.surface!r}: type {vtype.label} lemma must end in る"
            )
        stem = _stem(lemma)
        if stem.moras[-1].vowel != _T4_PRE_RU_VOWEL[vtype]:
            raise RuleDomainError(
                f"{lemma.surface!r}: pre-る vowel {stem.moras[-1].vowel!r} does not "
                f"match type {vtype.label}"
            )
        return segment_moras(stem.surface + "った")

    if vtype is VerbType.T4_3_Localized:
        if not lemma.surface.endswith("いく"):
            raise RuleDomainError(
                f"{lemma.surface!r}: type 4-3 lemma must be いく or a compound in いく"
            )
        return segment_moras(lemma.surface[:-1] + "った")

    raise RuleDomainError(f"unknown verb type {vtype!r}")


def over_regularized_form(lemma: KanaWord, true_type: VerbType) -> KanaWord | None:
    """The form a majority-pattern learner would emit for an irregular lemma.

    Type 4-1/4-2 lemmas look like Ichidan verbs (る→た); 4-3 looks like a
    regular Godan く verb (く→いた). Regular types have no over-regularization.
    """
    if true_type in _T4_PRE_RU_VOWEL:
        return segment_moras(_stem(lemma).surface + "た")
    if true_type is VerbType.T4_3_Localized:
        return segment_moras(_stem(lemma).surface + "いた")
    return None
