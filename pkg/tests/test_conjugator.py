import pytest

from kanaflect.conjugator import (
    GODAN_PAST_ENDINGS,
    VerbType,
    conjugate_past,
    over_regularized_form,
)
from kanaflect.errors import RejectedInput, RuleDomainError
from kanaflect.kana import segment_moras as w


@pytest.mark.parametrize(
    "lemma,vtype,past",
    [
        ("かく", VerbType.T1_Godan, "かいた"),
        ("たべる", VerbType.T2_Ichidan, "たべた"),
        ("まじる", VerbType.T4_1_IGemination, "まじった"),
        ("あきれかえる", VerbType.T4_2_EGemination, "あきれかえった"),
        ("いく", VerbType.T4_3_Localized, "いった"),
        ("ねがえる", VerbType.T4_2_EGemination, "ねがえった"),
        ("する", VerbType.T3_CanonicalIrregular, "した"),
        ("くる", VerbType.T3_CanonicalIrregular, "きた"),
    ],
)
def test_golden_forms(lemma, vtype, past):
    assert conjugate_past(w(lemma), vtype).surface == past


@pytest.mark.parametrize(
    "lemma,past",
    [("およぐ", "およいだ"), ("はなす", "はなした"), ("かう", "かった"),
     ("まつ", "まった"), ("とる", "とった"), ("しぬ", "しんだ"),
     ("あそぶ", "あそんだ"), ("よむ", "よんだ")],
)
def test_godan_ending_table(lemma, past):
    assert conjugate_past(w(lemma), VerbType.T1_Godan).surface == past


def test_t3_compound():
    assert conjugate_past(
        w("べんきょうする"), VerbType.T3_CanonicalIrregular
    ).surface == "べんきょうした"
    assert conjugate_past(
        w("もってくる"), VerbType.T3_CanonicalIrregular
    ).surface == "もってきた"


def test_t4_3_compound():
    assert conjugate_past(
        w("でていく"), VerbType.T4_3_Localized
    ).surface == "でていった"


def test_illegal_final_mora():
    with pytest.raises(RuleDomainError):
        conjugate_past(w("かき"), VerbType.T1_Godan)
    with pytest.raises(RuleDomainError):
        conjugate_past(w("かく"), VerbType.T2_Ichidan)
    with pytest.raises(RuleDomainError):
        conjugate_past(w("とる"), VerbType.T4_1_IGemination)  # pre-る vowel /o/


def test_empty_stem_rejected():
    with pytest.raises(RejectedInput):
        conjugate_past(w("る"), VerbType.T2_Ichidan)


def test_every_past_ends_in_ta_or_da():
    cases = [
        ("かく", VerbType.T1_Godan), ("およぐ", VerbType.T1_Godan),
        ("よむ", VerbType.T1_Godan), ("たべる", VerbType.T2_Ichidan),
        ("まじる", VerbType.T4_1_IGemination),
        ("ねがえる", VerbType.T4_2_EGemination),
        ("いく", VerbType.T4_3_Localized),
    ]
    for lemma, vtype in cases:
        assert conjugate_past(w(lemma), vtype).surface[-1] in "ただ"


def test_stem_preservation_ichidan():
    lemma = "しらべる"
    past = conjugate_past(w(lemma), VerbType.T2_Ichidan).surface
    assert past == lemma[:-1] + "た"


@pytest.mark.parametrize(
    "lemma,vtype,expected",
    [
        ("まじる", VerbType.T4_1_IGemination, "まじた"),
        ("いく", VerbType.T4_3_Localized, "いいた"),
        ("ねがえる", VerbType.T4_2_EGemination, "ねがえた"),
    ],
)
def test_over_regularized_form(lemma, vtype, expected):
    assert over_regularized_form(w(lemma), vtype).surface == expected


def test_over_regularized_none_for_regular():
    assert over_regularized_form(w("かく"), VerbType.T1_Godan) is None
    assert over_regularized_form(w("たべる"), VerbType.T2_Ichidan) is None


def test_over_regularization_is_single_sokuon_deletion():
    # For 4-1/4-2 the over-regularized form is the gold form minus its っ.
    from kanaflect.kana import diff

    for lemma, vtype in [
        ("まじる", VerbType.T4_1_IGemination),
        ("ねがえる", VerbType.T4_2_EGemination),
    ]:
        gold = conjugate_past(w(lemma), vtype)
        overreg = over_regularized_form(w(lemma), vtype)
        edits = diff(gold, overreg).edits
        assert len(edits) == 1
        assert edits[0].kind == "delete" and edits[0].source.is_sokuon


def test_determinism():
    for _ in range(3):
        assert conjugate_past(w("およぐ"), VerbType.T1_Godan).surface == "およいだ"


def test_godan_table_is_total():
    for final in GODAN_PAST_ENDINGS:
        lemma = "か" + final
        past = conjugate_past(w(lemma), VerbType.T1_Godan).surface
        assert past.startswith("か") and past[-1] in "ただ"
