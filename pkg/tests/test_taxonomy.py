import random

import pytest

from kanaflect.conjugator import VerbType
from kanaflect.errors import ContractViolation
from kanaflect.kana import segment_moras as w
from kanaflect.metrics import PredictionRecord
from kanaflect.taxonomy import (
    ClassifiedError,
    ErrorCategory,
    classify_error,
    classify_errors,
    report_to_markdown,
    taxonomy_report,
)

PAPER_EXAMPLES = [
    ("あまがける", "あまがけった", "あまがけた", ErrorCategory.GeminationOmission),
    ("できる", "できた", "できった", ErrorCategory.GeminationInsertion),
    ("ねがえる", "ねがえった", "ねがえた", ErrorCategory.GeminationOmission),
    ("あきれかえる", "あきれかえった", "あきれかえう", ErrorCategory.StemAlternation),
    ("まじる", "まじった", "まじた", ErrorCategory.OverRegularization),
]


@pytest.mark.parametrize("lemma,gold,pred,expected", PAPER_EXAMPLES)
def test_paper_error_examples(lemma, gold, pred, expected):
    assert classify_error(w(lemma), w(gold), pred) is expected


def test_correct_prediction_is_contract_violation():
    with pytest.raises(ContractViolation):
        classify_error(w("かく"), w("かいた"), "かいた")


def test_unk_sentinel_is_unknown():
    assert (
        classify_error(w("かく"), w("かいた"), "か⟨unk⟩た")
        is ErrorCategory.Unknown
    )


def test_non_hiragana_output_is_unknown():
    assert classify_error(w("かく"), w("かいた"), "kaita") is ErrorCategory.Unknown
    assert classify_error(w("かく"), w("かいた"), "") is ErrorCategory.Unknown


def test_tiebreak_4_2_prefers_gemination():
    # For 4-2 the over-regularized form equals gold minus っ; the dominant
    # attribution for 4-2 is gemination, so that rule wins.
    assert (
        classify_error(w("ねがえる"), w("ねがえった"), "ねがえた")
        is ErrorCategory.GeminationOmission
    )


def test_tiebreak_4_1_prefers_over_regularization():
    assert (
        classify_error(w("まじる"), w("まじった"), "まじた")
        is ErrorCategory.OverRegularization
    )


def test_tiebreak_4_3_prefers_over_regularization():
    assert (
        classify_error(w("いく"), w("いった"), "いいた")
        is ErrorCategory.OverRegularization
    )


def test_vowel_length_insertion():
    # spurious echo vowel after か (vowel /a/)
    assert (
        classify_error(w("かつ"), w("かった"), "かあった")
        is ErrorCategory.VowelLength
    )


def test_vowel_length_deletion():
    assert (
        classify_error(w("とおる"), w("とおった"), "とった")
        is ErrorCategory.VowelLength
    )


def test_morpheme_boundary():
    # stem survives and the output still carries a past suffix, but the
    # boundary material is wrong
    assert (
        classify_error(w("かく"), w("かいた"), "かきた")
        is ErrorCategory.MorphemeBoundary
    )


def test_stem_alternation_inside_stem():
    assert (
        classify_error(w("あきれかえる"), w("あきれかえった"), "あきれまえった")
        is ErrorCategory.StemAlternation
    )


def test_totality_on_random_pairs():
    rng = random.Random(0)
    kana = "あいうえおかきくけこさしすせそたちつてとっん"
    for _ in range(300):
        gold = "".join(rng.choice(kana) for _ in range(rng.randint(1, 5))) + "た"
        pred = "".join(rng.choice(kana) for _ in range(rng.randint(1, 6)))
        if pred == gold:
            continue
        cat = classify_error(w("かく"), w(gold), pred, vtype=VerbType.T1_Godan)
        assert isinstance(cat, ErrorCategory)


# --- report ------------------------------------------------------------------

def _classified_paper_examples():
    errors = []
    for lemma, gold, pred, _ in PAPER_EXAMPLES:
        lemma_w, gold_w = w(lemma), w(gold)
        from kanaflect.classifier import infer_type

        vtype = infer_type(lemma_w, gold_w)
        cat = classify_error(lemma_w, gold_w, pred, vtype)
        errors.append(ClassifiedError(lemma_w, gold_w, pred, vtype, cat))
    return errors


def test_report_counts_for_paper_examples():
    report = taxonomy_report(_classified_paper_examples())
    by_cat = report.by_category()
    assert by_cat["gemination"] == 3
    assert by_cat[ErrorCategory.StemAlternation.value] == 1
    assert by_cat[ErrorCategory.OverRegularization.value] == 1


def test_dominant_source_for_gemination():
    report = taxonomy_report(_classified_paper_examples())
    # あまがける and ねがえる are 4-2; できる is 2 -> 4-2 dominates gemination
    assert report.dominant_sources()["gemination"] == ["4-2"]


def test_report_order_stability():
    errors = _classified_paper_examples()
    shuffled = list(errors)
    random.Random(7).shuffle(shuffled)
    assert taxonomy_report(errors).counts == taxonomy_report(shuffled).counts


def test_empty_report():
    report = taxonomy_report([])
    assert report.by_category() == {}
    md = report_to_markdown(report)
    assert "| gemination | 0 |" in md


def test_classify_errors_skips_correct():
    recs = [
        PredictionRecord(w("かく"), w("かいた"), "かいた", VerbType.T1_Godan),
        PredictionRecord(w("まじる"), w("まじった"), "まじた",
                         VerbType.T4_1_IGemination),
    ]
    errs = classify_errors(recs)
    assert len(errs) == 1
    assert errs[0].category is ErrorCategory.OverRegularization
