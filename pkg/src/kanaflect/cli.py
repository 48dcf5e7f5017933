"""Command-line interface for the inflection evaluation toolkit."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import ablation as ablation_mod
from . import metrics as metrics_mod
from . import plots as plots_mod
from . import runner as runner_mod
from . import taxonomy as taxonomy_mod
from .classifier import infer_type
from .conjugator import VerbType, conjugate_past
from .dataset import (
    SplitSpec,
    TABLE1_COUNTS,
    TYPE4_SUBTYPES,
    emit_tsv,
    format_percent,
    generate_synthetic,
    parse_tsv,
    split as split_dataset,
    stats as dataset_stats,
)
from .errors import KanaflectError
from .kana import segment_moras

logger = logging.getLogger(__name__)

_TYPE_CHOICES = {t.label: t for t in VerbType}


def _fail(e: Exception) -> None:
    click.echo(f"error: {e}", err=True)
    sys.exit(1)


def _read_dataset(path: str):
    with open(path, encoding="utf-8") as f:
        return parse_tsv(f, provenance=path)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool) -> None:
    """Subgroup-aware evaluation toolkit for Japanese past-tense inflection."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.argument("lemma")
@click.option(
    "--type", "vtype", required=True,
    type=click.Choice(sorted(_TYPE_CHOICES)), help="Verb type label."
)
def conjugate(lemma: str, vtype: str) -> None:
    """Print the past-tense form of LEMMA under the given verb type."""
    try:
        word = segment_moras(lemma)
        click.echo(conjugate_past(word, _TYPE_CHOICES[vtype]).surface)
    except KanaflectError as e:
        _fail(e)


@main.command()
@click.argument("infile", type=click.Path(exists=True))
@click.option("--out", "outfile", type=click.Path(), default="-",
              help="Output TSV (default stdout).")
def classify(infile: str, outfile: str) -> None:
    """Append a verb-type column to a lemma/past/placeholder TSV."""
    try:
        data = _read_dataset(infile)
    except KanaflectError as e:
        _fail(e)
    lines = "".join(
        f"{p.lemma.surface}\t{p.past.surface}\t_\t{p.vtype.label}\n"
        for p in data.pairs
    )
    if outfile == "-":
        click.echo(lines, nl=False)
    else:
        Path(outfile).write_text(lines, encoding="utf-8")


@main.command()
@click.option("--counts", default="table1",
              help='"table1" or a JSON object of per-type counts.')
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "outfile", type=click.Path(), required=True)
def gen(counts: str, seed: int, outfile: str) -> None:
    """Generate a synthetic lexicon and write it as TSV."""
    try:
        if counts == "table1":
            count_map = dict(TABLE1_COUNTS)
        else:
            count_map = {VerbType(k): int(v) for k, v in json.loads(counts).items()}
        data = generate_synthetic(count_map, seed=seed)
    except KanaflectError as e:
        _fail(e)
    Path(outfile).write_text(emit_tsv(data), encoding="utf-8")
    click.echo(f"wrote {len(data)} pairs to {outfile}")


@main.command("split")
@click.argument("infile", type=click.Path(exists=True))
@click.option("--kind", type=click.Choice(["lemma", "form"]), default="lemma",
              show_default=True)
@click.option("--fraction", type=float, default=0.1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--train-out", type=click.Path(), required=True)
@click.option("--test-out", type=click.Path(), required=True)
def split_cmd(infile, kind, fraction, seed, train_out, test_out) -> None:
    """Deterministic train/test split of a TSV dataset."""
    try:
        data = _read_dataset(infile)
        spec = SplitSpec(f"{kind}_split", fraction, seed)
        train, test = split_dataset(data, spec)
    except KanaflectError as e:
        _fail(e)
    Path(train_out).write_text(emit_tsv(train), encoding="utf-8")
    Path(test_out).write_text(emit_tsv(test), encoding="utf-8")
    click.echo(f"train: {len(train)} pairs, test: {len(test)} pairs")


@main.command("stats")
@click.argument("infile", type=click.Path(exists=True))
def stats_cmd(infile: str) -> None:
    """Per-type counts and proportions of a TSV dataset."""
    try:
        st = dataset_stats(_read_dataset(infile))
    except KanaflectError as e:
        _fail(e)
    click.echo(f"total\t{st.total}\t100")
    for t in (VerbType.T1_Godan, VerbType.T2_Ichidan):
        click.echo(
            f"{t.label}\t{st.counts.get(t, 0)}\t{format_percent(st.proportion(t))}"
        )
    click.echo(f"4\t{st.type4_count}\t{format_percent(st.type4_proportion)}")
    for t in TYPE4_SUBTYPES:
        click.echo(
            f"{t.label}\t{st.counts.get(t, 0)}\t{format_percent(st.proportion(t))}"
        )


@main.command()
@click.option("--condition", "cond_name", required=True,
              type=click.Choice([c.name for c in ablation_mod.PRESETS]))
@click.option("--train", "train_file", type=click.Path(exists=True), required=True)
@click.option("--test", "test_file", type=click.Path(exists=True), required=True)
@click.option("--out-dir", type=click.Path(), required=True)
def ablate(cond_name, train_file, test_file, out_dir) -> None:
    """Filter train and test TSVs to one ablation condition."""
    try:
        cond = ablation_mod.condition(cond_name)
        train_f, test_f = ablation_mod.apply(
            cond, _read_dataset(train_file), _read_dataset(test_file)
        )
    except KanaflectError as e:
        _fail(e)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "train.tsv").write_text(emit_tsv(train_f), encoding="utf-8")
    (out / "test.tsv").write_text(emit_tsv(test_f), encoding="utf-8")
    click.echo(
        f"{cond.name}: train {len(train_f)} pairs, test {len(test_f)} pairs"
    )


@main.command()
@click.option("--gold", "gold_file", type=click.Path(exists=True), required=True)
@click.option("--pred", "pred_file", type=click.Path(exists=True), required=True)
@click.option("--report", "report_file", type=click.Path(), required=True,
              help="Report path; .json or .md decides the format.")
@click.option("--figures/--no-figures", default=True, show_default=True,
              help="Render accuracy/disparity charts next to the report.")
def evaluate(gold_file, pred_file, report_file, figures) -> None:
    """Subgroup accuracy and disparity report for a prediction file."""
    try:
        gold = _read_dataset(gold_file)
        with open(pred_file, encoding="utf-8") as f:
            records = metrics_mod.parse_predictions(f, gold)
        report = metrics_mod.subgroup_report(records)
    except KanaflectError as e:
        _fail(e)
    report_path = Path(report_file)
    if report_path.suffix == ".json":
        report_path.write_text(
            json.dumps(
                metrics_mod.report_to_dict(report), ensure_ascii=False, indent=2
            )
            + "\n",
            encoding="utf-8",
        )
    else:
        report_path.write_text(
            metrics_mod.report_to_markdown(report), encoding="utf-8"
        )
    if figures:
        paths = plots_mod.render_report_figures(report, report_path.parent)
        for p in paths:
            logger.info("wrote figure %s", p)
    click.echo(
        f"accuracy {format_percent(report.aggregate_accuracy)}% "
        f"({report.total - report.total_errors}/{report.total})"
    )


@main.command()
@click.option("--gold", "gold_file", type=click.Path(exists=True), required=True)
@click.option("--pred", "pred_file", type=click.Path(exists=True), required=True)
@click.option("--out", "out_file", type=click.Path(), required=True,
              help="taxonomy.md or taxonomy.json")
@click.option("--unk-sentinel", default=taxonomy_mod.DEFAULT_UNK_SENTINEL,
              show_default=True)
def errors(gold_file, pred_file, out_file, unk_sentinel) -> None:
    """Classify prediction errors into the structural taxonomy."""
    try:
        gold = _read_dataset(gold_file)
        with open(pred_file, encoding="utf-8") as f:
            records = metrics_mod.parse_predictions(f, gold)
        errs = taxonomy_mod.classify_errors(records, unk_sentinel=unk_sentinel)
        report = taxonomy_mod.taxonomy_report(errs)
    except KanaflectError as e:
        _fail(e)
    out_path = Path(out_file)
    if out_path.suffix == ".json":
        out_path.write_text(
            json.dumps(
                taxonomy_mod.report_to_dict(report), ensure_ascii=False, indent=2
            )
            + "\n",
            encoding="utf-8",
        )
    else:
        out_path.write_text(
            taxonomy_mod.report_to_markdown(report), encoding="utf-8"
        )
    click.echo(f"classified {len(errs)} errors")


@main.command("oracle-predict")
@click.option("--test", "test_file", type=click.Path(exists=True), required=True)
@click.option("--mode", type=click.Choice(["perfect", "over_regularize"]),
              required=True)
@click.option("--out", "out_file", type=click.Path(), required=True)
def oracle_predict_cmd(test_file, mode, out_file) -> None:
    """Built-in deterministic baselines in the prediction wire format."""
    try:
        test = _read_dataset(test_file)
        payload = runner_mod.oracle_predict(test, mode)
    except KanaflectError as e:
        _fail(e)
    Path(out_file).write_text(payload, encoding="utf-8")
    click.echo(f"wrote {len(test)} predictions to {out_file}")


@main.command("run")
@click.option("--config", "config_file", type=click.Path(exists=True),
              required=True)
def run_cmd(config_file) -> None:
    """Run a full experiment from a JSON config."""
    try:
        with open(config_file, encoding="utf-8") as f:
            cfg = json.load(f)
        config = runner_mod.ExperimentConfig.from_dict(
            cfg, base_dir=Path(config_file).parent
        )
        manifest = runner_mod.run(config)
    except KanaflectError as e:
        _fail(e)
    click.echo(f"manifest: {Path(config.out_dir) / 'manifest.json'}")
    if manifest["missing_predictions"]:
        for miss in manifest["missing_predictions"]:
            click.echo(
                f"missing predictions: condition {miss['condition']}, "
                f"model {miss['model']}: {miss['path']}",
                err=True,
            )
        sys.exit(1)


if __name__ == "__main__":
    main()
