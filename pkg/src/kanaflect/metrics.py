"""Exact-match accuracy, subgroup accuracy, error/data shares, disparity
ratios, and relative error reduction.

All ratios are computed in exact rational arithmetic and only rendered to
fixed decimals at the report boundary, so golden values cannot drift across
platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .conjugator import VerbType
from .dataset import Dataset, TYPE4_SUBTYPES, format_percent
from .errors import ConfigError, JoinError
from .kana import KanaWord

SUBTYPE_ORDER = (
    VerbType.T1_Godan,
    VerbType.T2_Ichidan,
    VerbType.T4_1_IGemination,
    VerbType.T4_2_EGemination,
    VerbType.T4_3_Localized,
)

TYPE4_ROLLUP_LABEL = "4"

UNDEFINED = "—"


@dataclass(frozen=True)
class PredictionRecord:
    lemma: KanaWord
    gold: KanaWord
    predicted: str
    vtype: VerbType

    @property
    def correct(self) -> bool:
        return self.predicted == self.gold.surface


@dataclass(frozen=True)
class SubgroupRow:
    label: str
    n: int
    data_share: Fraction
    errors: int
    error_share: Fraction
    accuracy: Fraction | None
    disparity_ratio: Fraction | None


@dataclass(frozen=True)
class SubgroupReport:
    total: int
    total_errors: int
    aggregate_accuracy: Fraction
    rows: tuple[SubgroupRow, ...]

    def row(self, label: str) -> SubgroupRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)


def exact_match_accuracy(preds) -> Fraction:
    preds = list(preds)
    if not preds:
        raise ConfigError("cannot score an empty prediction set")
    return Fraction(sum(1 for p in preds if p.correct), len(preds))


def disparity_ratio(error_share, data_share) -> Fraction:
    """Error Share over Data Share for one subgroup."""
    ds = Fraction(data_share)
    if ds <= 0:
        raise ConfigError("disparity ratio requires a positive data share")
    return Fraction(error_share) / ds


def subgroup_report(preds) -> SubgroupReport:
    """Per-verb-type breakdown at subtype granularity plus a Type 4 rollup."""
    preds = list(preds)
    if not preds:
        raise ConfigError("cannot score an empty prediction set")
    total = len(preds)
    total_errors = sum(1 for p in preds if not p.correct)

    def _row(label, members) -> SubgroupRow:
        n = len(members)
        errors = sum(1 for p in members if not p.correct)
        data_share = Fraction(n, total)
        error_share = (
            Fraction(errors, total_errors) if total_errors > 0 else Fraction(0)
        )
        accuracy = Fraction(n - errors, n) if n > 0 else None
        disparity = (
            error_share / data_share if total_errors > 0 and n > 0 else None
        )
        return SubgroupRow(
            label, n, data_share, errors, error_share, accuracy, disparity
        )

    rows = [
        _row(t.label, [p for p in preds if p.vtype is t]) for t in SUBTYPE_ORDER
    ]
    rows.append(
        _row(
            TYPE4_ROLLUP_LABEL,
            [p for p in preds if p.vtype in TYPE4_SUBTYPES],
        )
    )
    aggregate = Fraction(total - total_errors, total)
    return SubgroupReport(total, total_errors, aggregate, tuple(rows))


def error_reduction(baseline_acc, ablated_acc) -> Fraction | None:
    """Relative reduction of error mass: (ablated - baseline) / (1 - baseline).

    Undefined (None) when the baseline is already perfect.
    """
    b = Fraction(baseline_acc)
    a = Fraction(ablated_acc)
    if b == 1:
        return None
    return (a - b) / (1 - b)


def parse_predictions(lines, gold: Dataset) -> list[PredictionRecord]:
    """Join a lemma<TAB>predicted stream against a gold dataset.

    Order-independent; every gold lemma must be matched exactly once.
    """
    by_lemma: dict[str, str] = {}
    duplicates: list[str] = []
    extra: list[str] = []
    gold_lemmas = gold.lemmas()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise JoinError(
                f"prediction line {lineno}: expected 2 TAB-separated fields, "
                f"got {len(fields)}"
            )
        lemma_s, predicted = fields
        if lemma_s in by_lemma:
            duplicates.append(lemma_s)
            continue
        if lemma_s not in gold_lemmas:
            extra.append(lemma_s)
            continue
        by_lemma[lemma_s] = predicted
    missing = [
        p.lemma.surface for p in gold.pairs if p.lemma.surface not in by_lemma
    ]
    if missing or extra or duplicates:
        parts = []
        if missing:
            parts.append(f"missing: {', '.join(missing[:5])}")
        if extra:
            parts.append(f"extra: {', '.join(extra[:5])}")
        if duplicates:
            parts.append(f"duplicate: {', '.join(duplicates[:5])}")
        raise JoinError(
            "prediction file does not join 1:1 against gold ("
            + "; ".join(parts)
            + ")",
            missing=missing,
            extra=extra,
            duplicates=duplicates,
        )
    return [
        PredictionRecord(p.lemma, p.past, by_lemma[p.lemma.surface], p.vtype)
        for p in gold.pairs
    ]


# --- rendering ---------------------------------------------------------------

def format_ratio(x: Fraction | None) -> str:
    """Two-decimal rendering; undefined values render as an em dash."""
    if x is None:
        return UNDEFINED
    return f"{float(x):.2f}"


def report_to_dict(r: SubgroupReport) -> dict:
    return {
        "total": r.total,
        "total_errors": r.total_errors,
        "aggregate_accuracy": float(r.aggregate_accuracy),
        "aggregate_accuracy_percent": format_percent(r.aggregate_accuracy),
        "subgroups": [
            {
                "verb_type": row.label,
                "n": row.n,
                "data_share": float(row.data_share),
                "data_share_percent": format_percent(row.data_share),
                "errors": row.errors,
                "error_share": float(row.error_share),
                "error_share_percent": format_percent(row.error_share),
                "accuracy": None if row.accuracy is None else float(row.accuracy),
                "accuracy_percent": (
                    UNDEFINED if row.accuracy is None
                    else format_percent(row.accuracy)
                ),
                "disparity_ratio": (
                    None if row.disparity_ratio is None
                    else float(row.disparity_ratio)
                ),
                "disparity_ratio_rendered": format_ratio(row.disparity_ratio),
            }
            for row in r.rows
        ],
    }


def report_to_markdown(r: SubgroupReport) -> str:
    lines = [
        f"Aggregate accuracy: {format_percent(r.aggregate_accuracy)}% "
        f"({r.total - r.total_errors}/{r.total})",
        "",
        "| Verb Type | n | Data Share | Errors | Error Share | Accuracy | Disparity Ratio |",
        "|---|---|---|---|---|---|---|",
    ]
    for row in r.rows:
        acc = UNDEFINED if row.accuracy is None else format_percent(row.accuracy) + "%"
        lines.append(
            f"| {row.label} | {row.n} | {format_percent(row.data_share)}% "
            f"| {row.errors} | {format_percent(row.error_share)}% "
            f"| {acc} | {format_ratio(row.disparity_ratio)} |"
        )
    return "\n".join(lines) + "\n"
