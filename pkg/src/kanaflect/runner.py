"""Experiment orchestration: dataset -> split -> ablation -> evaluation ->
reports, with a reproducibility manifest tying everything to seeds and
content hashes."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from . import ablation, metrics, plots, taxonomy
from .conjugator import VerbType, over_regularized_form
from .dataset import (
    Dataset,
    SplitSpec,
    TABLE1_COUNTS,
    emit_tsv,
    generate_synthetic,
    parse_tsv,
    split,
)
from .errors import ConfigError
from .metrics import parse_predictions, report_to_dict, report_to_markdown

logger = logging.getLogger(__name__)

_TYPE4 = (
    VerbType.T4_1_IGemination,
    VerbType.T4_2_EGemination,
    VerbType.T4_3_Localized,
)


@dataclass
class ExperimentConfig:
    seed: int
    out_dir: Path
    dataset_file: Path | None = None
    synthetic_counts: dict[VerbType, int] | None = None
    split_kind: str = "lemma_split"
    test_fraction: float = 0.1
    conditions: list[str] = field(default_factory=lambda: ["full"])
    # condition name -> model tag -> prediction file path
    predictions: dict[str, dict[str, Path]] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, cfg: dict, base_dir: Path = Path(".")) -> "ExperimentConfig":
        base_dir = Path(base_dir)
        ds = cfg.get("dataset", {})
        dataset_file = None
        synthetic_counts = None
        if "file" in ds:
            dataset_file = base_dir / ds["file"]
        elif "synthetic" in ds:
            counts_cfg = ds["synthetic"].get("counts", "table1")
            if counts_cfg == "table1":
                synthetic_counts = dict(TABLE1_COUNTS)
            else:
                synthetic_counts = {
                    VerbType(k): int(v) for k, v in counts_cfg.items()
                }
        else:
            raise ConfigError("config needs dataset.file or dataset.synthetic")
        split_cfg = cfg.get("split", {})
        conditions = cfg.get("conditions", ["full"])
        for name in conditions:
            ablation.condition(name)  # fail fast on unknown names
        predictions = {
            cond: {tag: base_dir / p for tag, p in tags.items()}
            for cond, tags in cfg.get("predictions", {}).items()
        }
        return cls(
            seed=int(cfg.get("seed", 0)),
            out_dir=base_dir / cfg["out_dir"],
            dataset_file=dataset_file,
            synthetic_counts=synthetic_counts,
            split_kind=split_cfg.get("kind", "lemma_split"),
            test_fraction=float(split_cfg.get("test_fraction", 0.1)),
            conditions=list(conditions),
            predictions=predictions,
        )


def _sha256(data: str) -> str:
    return hashlib.sha256(data.encode("utf-8")).hexdigest()


def oracle_predict(test: Dataset, mode: str) -> str:
    """Built-in baselines, in the trainer's wire format.

    perfect: emit gold forms. over_regularize: emit the majority-pattern form
    for Type 4 items and gold otherwise, reproducing the concentrated-error
    profile deterministically with no ML in the loop.
    """
    if mode not in ("perfect", "over_regularize"):
        raise ConfigError(f"unknown oracle mode {mode!r}")
    lines = []
    for p in test.pairs:
        if mode == "over_regularize" and p.vtype in _TYPE4:
            form = over_regularized_form(p.lemma, p.vtype).surface
        else:
            form = p.past.surface
        lines.append(f"{p.lemma.surface}\t{form}\n")
    return "".join(lines)


def _load_dataset(config: ExperimentConfig) -> Dataset:
    if config.dataset_file is not None:
        with open(config.dataset_file, encoding="utf-8") as f:
            return parse_tsv(f, provenance=str(config.dataset_file))
    return generate_synthetic(config.synthetic_counts, seed=config.seed)


def run(config: ExperimentConfig) -> dict:
    """Execute the experiment; returns the manifest (also written to disk).

    Partial runs are allowed: conditions with missing prediction files are
    still materialized as TSVs and reported as unevaluated.
    """
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    data = _load_dataset(config)
    full_tsv = emit_tsv(data)
    spec = SplitSpec(config.split_kind, config.test_fraction, config.seed)
    train, test = split(data, spec)

    manifest: dict = {
        "seed": config.seed,
        "split": {"kind": spec.kind, "test_fraction": spec.test_fraction},
        "dataset": {"size": len(data), "sha256": _sha256(full_tsv)},
        "conditions": {},
        "missing_predictions": [],
    }

    # First pass: materialize all conditions and evaluate what we can.
    accuracies: dict[str, dict[str, float]] = {}
    for name in config.conditions:
        cond = ablation.condition(name)
        train_c, test_c = ablation.apply(cond, train, test)
        cond_dir = out_dir / name
        cond_dir.mkdir(parents=True, exist_ok=True)
        train_tsv = emit_tsv(train_c)
        test_tsv = emit_tsv(test_c)
        (cond_dir / "train.tsv").write_text(train_tsv, encoding="utf-8")
        (cond_dir / "test.tsv").write_text(test_tsv, encoding="utf-8")
        entry = {
            "included_types": sorted(t.label for t in cond.included_types),
            "train_size": len(train_c),
            "test_size": len(test_c),
            "train_sha256": _sha256(train_tsv),
            "test_sha256": _sha256(test_tsv),
            "evaluations": {},
        }
        for tag, pred_path in config.predictions.get(name, {}).items():
            if not Path(pred_path).exists():
                manifest["missing_predictions"].append(
                    {"condition": name, "model": tag, "path": str(pred_path)}
                )
                continue
            with open(pred_path, encoding="utf-8") as f:
                records = parse_predictions(f, test_c)
            report = metrics.subgroup_report(records)
            eval_dir = cond_dir / tag
            eval_dir.mkdir(parents=True, exist_ok=True)
            (eval_dir / "subgroup_report.json").write_text(
                json.dumps(report_to_dict(report), ensure_ascii=False, indent=2)
                + "\n",
                encoding="utf-8",
            )
            (eval_dir / "subgroup_report.md").write_text(
                report_to_markdown(report), encoding="utf-8"
            )
            plots.render_report_figures(report, eval_dir)
            errors = taxonomy.classify_errors(records)
            tax = taxonomy.taxonomy_report(errors)
            (eval_dir / "taxonomy.json").write_text(
                json.dumps(
                    taxonomy.report_to_dict(tax), ensure_ascii=False, indent=2
                )
                + "\n",
                encoding="utf-8",
            )
            (eval_dir / "taxonomy.md").write_text(
                taxonomy.report_to_markdown(tax), encoding="utf-8"
            )
            acc = float(report.aggregate_accuracy)
            accuracies.setdefault(tag, {})[name] = acc
            entry["evaluations"][tag] = {
                "accuracy": acc,
                "errors": report.total_errors,
            }
        manifest["conditions"][name] = entry

    # Second pass: deltas versus the full condition, per model tag.
    for name, entry in manifest["conditions"].items():
        for tag, ev in entry["evaluations"].items():
            full_acc = accuracies.get(tag, {}).get("full")
            ev["delta_vs_full"] = (
                None if full_acc is None else round(ev["accuracy"] - full_acc, 6)
            )

    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    if manifest["missing_predictions"]:
        logger.warning(
            "missing prediction files for %d evaluation(s)",
            len(manifest["missing_predictions"]),
        )
    return manifest
