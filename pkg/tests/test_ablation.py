import pytest
from hypothesis import given, settings, strategies as st

from kanaflect import ablation
from kanaflect.conjugator import VerbType
from kanaflect.dataset import (
    SplitSpec,
    TABLE1_COUNTS,
    emit_tsv,
    generate_synthetic,
    split,
    stats,
)
from kanaflect.errors import ConfigError

SMALL_COUNTS = {
    VerbType.T1_Godan: 30,
    VerbType.T2_Ichidan: 20,
    VerbType.T4_1_IGemination: 8,
    VerbType.T4_2_EGemination: 6,
    VerbType.T4_3_Localized: 1,
}


@pytest.fixture(scope="module")
def splits():
    d = generate_synthetic(SMALL_COUNTS, seed=31)
    return split(d, SplitSpec("lemma_split", 0.25, seed=31))


def test_eight_presets_in_order():
    conds = ablation.enumerate_conditions()
    assert len(conds) == 8
    assert conds[0].name == "full"
    names = [c.name for c in conds]
    assert names == [
        "full", "regular_only", "regular+4_1", "regular+4_2", "regular+4_3",
        "regular+4_1+4_2", "regular+4_1+4_3", "regular+4_2+4_3",
    ]


def test_every_condition_keeps_regulars():
    for c in ablation.enumerate_conditions():
        assert VerbType.T1_Godan in c.included_types
        assert VerbType.T2_Ichidan in c.included_types


def test_full_is_identity(splits):
    train, test = splits
    train_f, test_f = ablation.apply(ablation.condition("full"), train, test)
    assert emit_tsv(train_f) == emit_tsv(train)
    assert emit_tsv(test_f) == emit_tsv(test)


def test_regular_only_drops_all_type4():
    d = generate_synthetic(dict(TABLE1_COUNTS), seed=31)
    train, test = split(d, SplitSpec("lemma_split", 0.1, seed=31))
    train_f, test_f = ablation.apply(
        ablation.condition("regular_only"), train, test
    )
    assert stats(train_f).type4_count == 0
    assert stats(test_f).type4_count == 0
    assert len(train) + len(test) - len(train_f) - len(test_f) == 157


def test_single_subtype_retention(splits):
    train, test = splits
    train_f, test_f = ablation.apply(
        ablation.condition("regular+4_2"), train, test
    )
    for d in (train_f, test_f):
        present = {p.vtype for p in d.pairs}
        assert VerbType.T4_1_IGemination not in present
        assert VerbType.T4_3_Localized not in present
    assert any(
        p.vtype is VerbType.T4_2_EGemination
        for p in train_f.pairs + test_f.pairs
    )


def test_alignment_invariant(splits):
    train, test = splits
    for cond in ablation.enumerate_conditions():
        train_f, test_f = ablation.apply(cond, train, test)
        assert {p.vtype for p in train_f.pairs} <= cond.included_types
        assert {p.vtype for p in test_f.pairs} <= cond.included_types


def test_order_preserved(splits):
    train, test = splits
    cond = ablation.condition("regular_only")
    train_f, _ = ablation.apply(cond, train, test)
    kept = [p for p in train.pairs if p.vtype in cond.included_types]
    assert list(train_f.pairs) == kept


def test_monotone_sizes(splits):
    train, test = splits
    for cond in ablation.enumerate_conditions():
        train_f, _ = ablation.apply(cond, train, test)
        assert len(train_f) <= len(train)
        excluded_present = any(
            p.vtype not in cond.included_types for p in train.pairs
        )
        if cond.name == "full":
            assert len(train_f) == len(train)
        elif excluded_present:
            assert len(train_f) < len(train)


def test_empty_test_rejected(splits):
    train, test = splits
    from kanaflect.dataset import Dataset

    type4_only_test = Dataset(
        tuple(
            p for p in test.pairs
            if p.vtype not in (VerbType.T1_Godan, VerbType.T2_Ichidan)
        )
    )
    with pytest.raises(ConfigError):
        ablation.apply(ablation.condition("regular_only"), train, type4_only_test)


def test_unknown_condition_name():
    with pytest.raises(ConfigError):
        ablation.condition("regular+4_9")


@settings(deadline=None, max_examples=100)
@given(st.integers(min_value=0, max_value=2**31))
def test_alignment_over_seeds(seed):
    d = generate_synthetic(SMALL_COUNTS, seed=seed)
    train, test = split(d, SplitSpec("lemma_split", 0.25, seed=seed))
    for cond in ablation.enumerate_conditions():
        train_f, test_f = ablation.apply(cond, train, test)
        assert {p.vtype for p in train_f.pairs} <= cond.included_types
        assert {p.vtype for p in test_f.pairs} <= cond.included_types
