"""Controlled dataset conditions: verb types removed identically from train
and test so accuracy differences reflect structure, not volume."""

from __future__ import annotations

from dataclasses import dataclass

from .conjugator import VerbType
from .dataset import Dataset
from .errors import ConfigError

_REGULAR = frozenset({VerbType.T1_Godan, VerbType.T2_Ichidan})
_T41 = VerbType.T4_1_IGemination
_T42 = VerbType.T4_2_EGemination
_T43 = VerbType.T4_3_Localized


@dataclass(frozen=True)
class AblationCondition:
    name: str
    included_types: frozenset[VerbType]

    def __post_init__(self):
        if not _REGULAR <= self.included_types:
            raise ConfigError(
                f"condition {self.name!r} must retain the regular types"
            )


def _cond(name: str, *extra: VerbType) -> AblationCondition:
    return AblationCondition(name, _REGULAR | frozenset(extra))


# Fixed, documented order: full set first, then increasing irregular coverage.
PRESETS = (
    _cond("full", _T41, _T42, _T43),
    _cond("regular_only"),
    _cond("regular+4_1", _T41),
    _cond("regular+4_2", _T42),
    _cond("regular+4_3", _T43),
    _cond("regular+4_1+4_2", _T41, _T42),
    _cond("regular+4_1+4_3", _T41, _T43),
    _cond("regular+4_2+4_3", _T42, _T43),
)

_BY_NAME = {c.name: c for c in PRESETS}


def enumerate_conditions() -> tuple[AblationCondition, ...]:
    return PRESETS


def condition(name: str) -> AblationCondition:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ConfigError(
            f"unknown ablation condition {name!r}; "
            f"known: {', '.join(_BY_NAME)}"
        ) from None


def apply(
    cond: AblationCondition, train: Dataset, test: Dataset
) -> tuple[Dataset, Dataset]:
    """Filter both splits to the condition's included types, order preserved."""
    def _filter(d: Dataset, tag: str) -> Dataset:
        return Dataset(
            tuple(p for p in d.pairs if p.vtype in cond.included_types),
            f"{d.provenance}/{cond.name}" if d.provenance else cond.name,
        )

    train_f = _filter(train, "train")
    test_f = _filter(test, "test")
    if len(test_f) == 0:
        raise ConfigError(
            f"condition {cond.name!r} leaves an empty test set"
        )
    return train_f, test_f
