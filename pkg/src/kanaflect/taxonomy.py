"""Error taxonomy: mora-level diagnosis of wrong predictions.

Categories: gemination omission/insertion (rolled up as "gemination" in
reports), stem alternation, morpheme boundary, over-regularization, vowel
length, and unknown. For type 4-1/4-2 items a missing っ is simultaneously an
over-regularization and a gemination omission; the tie-break is type-driven
(4-2 reports gemination, 4-1 and 4-3 report over-regularization) so report
rollups land on the structurally dominant category per subtype.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .classifier import infer_type
from .conjugator import VerbType, over_regularized_form
from .errors import ContractViolation
from .kana import DELETE, INSERT, KanaWord, is_hiragana, segment_moras

DEFAULT_UNK_SENTINEL = "⟨unk⟩"

_PAST_SUFFIX_FINALS = ("た", "だ")


class ErrorCategory(Enum):
    GeminationOmission = "gemination_omission"
    GeminationInsertion = "gemination_insertion"
    StemAlternation = "stem_alternation"
    MorphemeBoundary = "morpheme_boundary"
    OverRegularization = "over_regularization"
    VowelLength = "vowel_length"
    Unknown = "unknown"


GEMINATION_ROLLUP = (
    ErrorCategory.GeminationOmission,
    ErrorCategory.GeminationInsertion,
)


def _stem_length(lemma: KanaWord, vtype: VerbType) -> int:
    # Stem = lemma minus its final mora; minus two for 4-3's いく compounds.
    if vtype is VerbType.T4_3_Localized:
        return max(len(lemma) - 2, 0)
    return max(len(lemma) - 1, 0)


def _common_prefix_len(a: KanaWord, b: KanaWord) -> int:
    n = 0
    for ma, mb in zip(a.moras, b.moras):
        if ma.surface != mb.surface:
            break
        n += 1
    return n


def _single_gemination_edit(gold: KanaWord, predicted: KanaWord):
    from .kana import diff

    edits = diff(gold, predicted).edits
    if len(edits) != 1:
        return None, edits
    op = edits[0]
    if op.kind == DELETE and op.source.is_sokuon:
        return ErrorCategory.GeminationOmission, edits
    if op.kind == INSERT and op.target.is_sokuon:
        return ErrorCategory.GeminationInsertion, edits
    return None, edits


def _is_vowel_length_edit(op, gold: KanaWord, predicted: KanaWord) -> bool:
    # Spurious insertion or deletion of a bare vowel mora echoing the vowel
    # of the mora before it.
    if op.kind == DELETE:
        m, context, pos = op.source, gold, op.position
    elif op.kind == INSERT:
        m, context, pos = op.target, predicted, None
        # locate the inserted mora's position in the predicted word
        pos = _common_prefix_len(gold, predicted)
    else:
        return False
    if m.onset != "zero" or pos == 0:
        return False
    prev = context.moras[pos - 1]
    return prev.vowel == m.vowel


def classify_error(
    lemma: KanaWord,
    gold: KanaWord,
    predicted: str,
    vtype: VerbType | None = None,
    unk_sentinel: str = DEFAULT_UNK_SENTINEL,
) -> ErrorCategory:
    """Assign exactly one category to a wrong prediction.

    Decision order: UNK/non-hiragana output; over-regularization vs single
    っ edit (order depends on verb type, see module docstring); vowel-length
    echo; then stem-vs-suffix localization of the divergence.
    """
    if predicted == gold.surface:
        raise ContractViolation("classify_error called on a correct prediction")
    if vtype is None:
        vtype = infer_type(lemma, gold)

    if unk_sentinel in predicted or not is_hiragana(predicted) or not predicted:
        return ErrorCategory.Unknown

    pred_word = segment_moras(predicted)

    over_reg = over_regularized_form(lemma, vtype)
    is_over_reg = over_reg is not None and predicted == over_reg.surface
    gem_cat, edits = _single_gemination_edit(gold, pred_word)

    # 4-2 failures are dominantly gemination; 4-1/4-3 dominantly
    # over-regularization. Check order follows the dominant attribution.
    if vtype is VerbType.T4_2_EGemination:
        if gem_cat is not None:
            return gem_cat
        if is_over_reg:
            return ErrorCategory.OverRegularization
    else:
        if is_over_reg:
            return ErrorCategory.OverRegularization
        if gem_cat is not None:
            return gem_cat

    if len(edits) == 1 and _is_vowel_length_edit(edits[0], gold, pred_word):
        return ErrorCategory.VowelLength

    stem_len = _stem_length(lemma, vtype)
    prefix = _common_prefix_len(gold, pred_word)
    if prefix >= stem_len:
        # Stem survived. A prediction that still ends in a past suffix
        # misplaced its morpheme boundary; one that lost the suffix entirely
        # failed the stem alternation itself.
        if pred_word.moras[-1].surface in _PAST_SUFFIX_FINALS:
            return ErrorCategory.MorphemeBoundary
        return ErrorCategory.StemAlternation
    if prefix < stem_len:
        return ErrorCategory.StemAlternation
    return ErrorCategory.Unknown


@dataclass(frozen=True)
class ClassifiedError:
    lemma: KanaWord
    gold: KanaWord
    predicted: str
    vtype: VerbType
    category: ErrorCategory


def classify_errors(records, unk_sentinel: str = DEFAULT_UNK_SENTINEL):
    """Classify every wrong PredictionRecord; correct ones are skipped."""
    out = []
    for r in records:
        if r.correct:
            continue
        cat = classify_error(
            r.lemma, r.gold, r.predicted, r.vtype, unk_sentinel=unk_sentinel
        )
        out.append(ClassifiedError(r.lemma, r.gold, r.predicted, r.vtype, cat))
    return out


@dataclass(frozen=True)
class TaxonomyReport:
    counts: dict[tuple[ErrorCategory, VerbType], int]

    def by_category(self, rollup_gemination: bool = True) -> dict[str, int]:
        agg: Counter = Counter()
        for (cat, _), n in self.counts.items():
            key = (
                "gemination"
                if rollup_gemination and cat in GEMINATION_ROLLUP
                else cat.value
            )
            agg[key] += n
        return dict(agg)

    def dominant_sources(self, rollup_gemination: bool = True):
        """Per category, the verb type(s) with the most errors (ties listed)."""
        per_cat: dict[str, Counter] = {}
        for (cat, vt), n in self.counts.items():
            key = (
                "gemination"
                if rollup_gemination and cat in GEMINATION_ROLLUP
                else cat.value
            )
            per_cat.setdefault(key, Counter())[vt] += n
        out = {}
        for key, c in per_cat.items():
            if not c:
                continue
            top = max(c.values())
            out[key] = sorted(
                (vt.label for vt, n in c.items() if n == top)
            )
        return out


def taxonomy_report(errors) -> TaxonomyReport:
    counts: Counter = Counter()
    for e in errors:
        counts[(e.category, e.vtype)] += 1
    return TaxonomyReport(dict(counts))


def report_to_markdown(r: TaxonomyReport) -> str:
    by_cat = r.by_category()
    dominant = r.dominant_sources()
    lines = [
        "| Error Type | Count | Dominant Source |",
        "|---|---|---|",
    ]
    order = [
        "gemination",
        ErrorCategory.StemAlternation.value,
        ErrorCategory.MorphemeBoundary.value,
        ErrorCategory.OverRegularization.value,
        ErrorCategory.VowelLength.value,
        ErrorCategory.Unknown.value,
    ]
    for key in order:
        n = by_cat.get(key, 0)
        src = ", ".join(dominant.get(key, [])) if n else "—"
        lines.append(f"| {key} | {n} | {src} |")
    return "\n".join(lines) + "\n"


def report_to_dict(r: TaxonomyReport) -> dict:
    return {
        "cells": [
            {"category": cat.value, "verb_type": vt.label, "count": n}
            for (cat, vt), n in sorted(
                r.counts.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)
            )
        ],
        "by_category": r.by_category(),
        "dominant_sources": r.dominant_sources(),
    }
