import pytest
import torch

from kanaflect_trainer.data import Vocab, read_tsv
from kanaflect_trainer.model import Seq2SeqTransformer
from kanaflect_trainer.train import (
    MODEL_TAGS,
    TrainConfig,
    _lr,
    greedy_decode,
    load_checkpoint,
    load_default_hparams,
    predict_file,
    save_checkpoint,
    train,
)

TINY_HPARAMS = {
    "d_model": 32,
    "nhead": 2,
    "num_encoder_layers": 1,
    "num_decoder_layers": 1,
    "dim_feedforward": 64,
    "dropout": 0.0,
    "label_smoothing": 0.0,
    "batch_size": 16,
    "warmup_steps": 50,
    "patience": 50,
}

PAIRS = [
    ("たべる", "たべた"),
    ("みる", "みた"),
    ("かく", "かいた"),
    ("およぐ", "およいだ"),
    ("はなす", "はなした"),
    ("まつ", "まった"),
    ("よむ", "よんだ"),
    ("あそぶ", "あそんだ"),
    ("しぬ", "しんだ"),
    ("うたう", "うたった"),
    ("はしる", "はしった"),
    ("すべる", "すべった"),
    ("いく", "いった"),
    ("おきる", "おきた"),
    ("ねる", "ねた"),
    ("きく", "きいた"),
]


def write_tsv(path, rows):
    path.write_text(
        "".join(f"{l}\t{f}\t_\n" for l, f in rows), encoding="utf-8"
    )


def test_default_hparams_load_for_all_tags():
    for tag in MODEL_TAGS:
        hp = load_default_hparams(tag)
        for key in ("d_model", "nhead", "batch_size", "max_epochs"):
            assert key in hp, f"{tag} missing {key}"


def test_unknown_tag_rejected(tmp_path):
    with pytest.raises(ValueError):
        TrainConfig(train_file=tmp_path / "x.tsv", model_tag="s1999")


def test_lr_schedule_warms_up_then_decays():
    warm = [_lr(s, 64, 100) for s in range(1, 101)]
    assert warm == sorted(warm)
    assert _lr(400, 64, 100) < _lr(100, 64, 100)
    assert _lr(200, 64, 100, factor=2.0) == pytest.approx(
        2.0 * _lr(200, 64, 100)
    )


def test_overfit_tiny_dataset(tmp_path):
    """Training on a handful of pairs with dev=train must memorize them."""
    data = tmp_path / "tiny.tsv"
    write_tsv(data, PAIRS)
    cfg = TrainConfig(
        train_file=data,
        dev_file=data,
        model_tag="s2020",
        seed=0,
        max_epochs=300,
        hparams=dict(TINY_HPARAMS),
    )
    ckpt = train(cfg)
    assert ckpt["dev_accuracy"] >= 0.99


def test_checkpoint_round_trip_and_predict(tmp_path):
    data = tmp_path / "tiny.tsv"
    write_tsv(data, PAIRS)
    cfg = TrainConfig(
        train_file=data,
        dev_file=data,
        model_tag="s2023",
        seed=0,
        max_epochs=300,
        hparams=dict(TINY_HPARAMS),
    )
    ckpt = train(cfg)
    ckpt_path = tmp_path / "model.pt"
    save_checkpoint(ckpt, ckpt_path)

    model, vocab, hp = load_checkpoint(ckpt_path)
    preds = greedy_decode(
        model, vocab, [l for l, _ in PAIRS], hp["max_decode_len"]
    )
    golds = [f for _, f in PAIRS]
    agree = sum(1 for p, g in zip(preds, golds) if p == g)
    assert agree / len(PAIRS) >= 0.99

    out = tmp_path / "pred.tsv"
    n = predict_file(ckpt_path, data, out)
    assert n == len(PAIRS)
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(PAIRS)
    for (lemma, _), line in zip(PAIRS, lines):
        assert line.split("\t")[0] == lemma


def test_same_seed_same_predictions(tmp_path):
    data = tmp_path / "tiny.tsv"
    write_tsv(data, PAIRS)
    outputs = []
    for _ in range(2):
        cfg = TrainConfig(
            train_file=data,
            dev_file=data,
            model_tag="s2020",
            seed=7,
            max_epochs=5,
            hparams=dict(TINY_HPARAMS),
        )
        ckpt = train(cfg)
        model = Seq2SeqTransformer(
            vocab_size=len(ckpt["vocab"]),
            d_model=TINY_HPARAMS["d_model"],
            nhead=TINY_HPARAMS["nhead"],
            num_encoder_layers=TINY_HPARAMS["num_encoder_layers"],
            num_decoder_layers=TINY_HPARAMS["num_decoder_layers"],
            dim_feedforward=TINY_HPARAMS["dim_feedforward"],
            dropout=0.0,
        )
        model.load_state_dict(ckpt["model_state"])
        preds = greedy_decode(
            model, Vocab(ckpt["vocab"]), [l for l, _ in PAIRS], 40
        )
        outputs.append(preds)
    assert outputs[0] == outputs[1]


def test_snapshot_averaging_produces_usable_model(tmp_path):
    data = tmp_path / "tiny.tsv"
    write_tsv(data, PAIRS)
    hp = dict(TINY_HPARAMS)
    hp["average_top_k"] = 3
    cfg = TrainConfig(
        train_file=data,
        dev_file=data,
        model_tag="s2020",
        seed=0,
        max_epochs=40,
        hparams=hp,
    )
    ckpt = train(cfg)
    ckpt_path = tmp_path / "avg.pt"
    save_checkpoint(ckpt, ckpt_path)
    model, vocab, hp2 = load_checkpoint(ckpt_path)
    preds = greedy_decode(
        model, vocab, [l for l, _ in PAIRS], hp2["max_decode_len"]
    )
    assert len(preds) == len(PAIRS)
    assert all(isinstance(p, str) for p in preds)


def test_malformed_train_file_aborts_before_training(tmp_path):
    from kanaflect_trainer.data import DataError

    bad = tmp_path / "bad.tsv"
    bad.write_text("たべる,たべた,_\n", encoding="utf-8")
    cfg = TrainConfig(
        train_file=bad, model_tag="s2020", hparams=dict(TINY_HPARAMS)
    )
    with pytest.raises(DataError):
        train(cfg)
