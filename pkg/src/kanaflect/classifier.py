"""Orthographic verb-type classification from (lemma, past form) pairs.

The inverse of the conjugator: the type is read off the observed alternation,
so any る-verb that geminates with a pre-る /i/ or /e/ vowel is 4-1/4-2
regardless of its traditional class assignment.
"""

from __future__ import annotations

from .conjugator import (
    GODAN_PAST_ENDINGS,
    VerbType,
    conjugate_past,
    is_canonical_irregular,
)
from .errors import UnclassifiableError
from .kana import KanaWord


def infer_type(lemma: KanaWord, past: KanaWord) -> VerbType:
    """Assign a VerbType to a lemma/past pair.

    Ordered decision procedure; each pair receives exactly one type:
      1. する/くる (incl. compounds) whose past matches the irregular rule -> T3
      2. ...く lemma with geminated past (く -> った) -> T4-3
      3. ...る lemma with plain suffixation (る -> た) -> T2
      4. ...る lemma with gemination (る -> った): pre-る vowel /i/ -> T4-1,
         /e/ -> T4-2, otherwise -> T1
      5. past matches the Godan ending table -> T1
      6. no rule matches -> UnclassifiableError
    """
    ls, ps = lemma.surface, past.surface
    final = lemma.moras[-1].surface

    if is_canonical_irregular(lemma):
        if ps == conjugate_past(lemma, VerbType.T3_CanonicalIrregular).surface:
            return VerbType.T3_CanonicalIrregular
        raise UnclassifiableError(
            f"({ls}, {ps}): lemma is canonical-irregular but past does not match "
            f"the する/くる rule (expected "
            f"{conjugate_past(lemma, VerbType.T3_CanonicalIrregular).surface})",
            lemma,
            past,
        )

    if final == "く" and len(lemma) > 1 and ps == ls[:-1] + "った":
        return VerbType.T4_3_Localized

    if final == "る" and len(lemma) > 1:
        if ps == ls[:-1] + "た":
            return VerbType.T2_Ichidan
        if ps == ls[:-1] + "った":
            vowel = lemma.moras[-2].vowel
            if vowel == "i":
                return VerbType.T4_1_IGemination
            if vowel == "e":
                return VerbType.T4_2_EGemination
            return VerbType.T1_Godan

    ending = GODAN_PAST_ENDINGS.get(final)
    if ending is not None and len(lemma) > 1 and ps == ls[:-1] + ending:
        return VerbType.T1_Godan

    nearest = (
        f"Godan rule would give {ls[:-1] + ending}" if ending and len(lemma) > 1
        else f"final mora {final!r} is not a legal verb ending"
    )
    raise UnclassifiableError(
        f"({ls}, {ps}): no conjugation rule matches; {nearest}", lemma, past
    )


def classify_dataset(pairs):
    """Label a sequence of (lemma, past) KanaWord pairs.

    Returns (labeled, failures): labeled is a list of (lemma, past, VerbType),
    failures a list of (row index, UnclassifiableError). Nothing is dropped
    silently.
    """
    labeled = []
    failures = []
    for i, (lemma, past) in enumerate(pairs):
        try:
            labeled.append((lemma, past, infer_type(lemma, past)))
        except UnclassifiableError as e:
            failures.append((i, e))
    return labeled, failures
