"""Command-line entry for the baseline trainer."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click

from .data import DataError
from .train import (
    MODEL_TAGS,
    TrainConfig,
    predict_file,
    save_checkpoint,
    train,
)

logger = logging.getLogger(__name__)


@click.group()
@click.option("-v", "--verbose", is_flag=True)
def main(verbose: bool) -> None:
    """Character-level transformer baselines for the kanaflect harness."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command("train")
@click.option("--train", "train_file", type=click.Path(exists=True), required=True)
@click.option("--dev", "dev_file", type=click.Path(exists=True), default=None,
              help="Optional dev TSV; default holds out 10% of train by lemma.")
@click.option("--model-tag", type=click.Choice(MODEL_TAGS), default="s2020",
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--epochs", type=int, default=None,
              help="Override the tag's default epoch budget.")
@click.option("--device", default="cpu", show_default=True)
@click.option("--out", "out_file", type=click.Path(), required=True,
              help="Checkpoint path.")
def train_cmd(train_file, dev_file, model_tag, seed, epochs, device, out_file):
    """Train a baseline on a harness-emitted TSV."""
    try:
        config = TrainConfig(
            train_file=Path(train_file),
            dev_file=None if dev_file is None else Path(dev_file),
            model_tag=model_tag,
            seed=seed,
            max_epochs=epochs,
            device=device,
        )
        ckpt = train(config)
    except (DataError, RuntimeError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    save_checkpoint(ckpt, out_file)
    click.echo(
        f"saved {model_tag} checkpoint to {out_file} "
        f"(dev accuracy {ckpt['dev_accuracy']:.4f})"
    )


@main.command("predict")
@click.option("--model", "model_file", type=click.Path(exists=True), required=True)
@click.option("--test", "test_file", type=click.Path(exists=True), required=True)
@click.option("--out", "out_file", type=click.Path(), required=True)
@click.option("--device", default="cpu", show_default=True)
def predict_cmd(model_file, test_file, out_file, device):
    """Write lemma<TAB>prediction lines for a test TSV."""
    try:
        n = predict_file(model_file, test_file, out_file, device)
    except (DataError, RuntimeError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    click.echo(f"wrote {n} predictions to {out_file}")


if __name__ == "__main__":
    main()
