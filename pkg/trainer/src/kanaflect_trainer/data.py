"""TSV reading, character vocabulary, and batching for the baselines.

The trainer speaks only the harness's wire formats: lemma<TAB>form<TAB>_ on
the way in, lemma<TAB>prediction on the way out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import torch

PAD, BOS, EOS, UNK = 0, 1, 2, 3
SPECIALS = ["<pad>", "<bos>", "<eos>", "<unk>"]

UNK_SENTINEL = "⟨unk⟩"


class DataError(ValueError):
    pass


def read_tsv(path) -> list[tuple[str, str]]:
    rows = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 3 or fields[2] != "_":
                raise DataError(
                    f"{path}:{lineno}: expected lemma<TAB>form<TAB>_"
                )
            rows.append((fields[0], fields[1]))
    if not rows:
        raise DataError(f"{path}: no training pairs")
    return rows


@dataclass
class Vocab:
    itos: list[str]

    @property
    def stoi(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.itos)}

    def __len__(self) -> int:
        return len(self.itos)

    @classmethod
    def build(cls, rows: list[tuple[str, str]]) -> "Vocab":
        chars = sorted({c for lemma, form in rows for c in lemma + form})
        return cls(SPECIALS + chars)

    def encode(self, text: str) -> list[int]:
        stoi = self.stoi
        return [stoi.get(c, UNK) for c in text]

    def decode(self, ids) -> str:
        out = []
        for i in ids:
            if i in (PAD, BOS):
                continue
            if i == EOS:
                break
            out.append(UNK_SENTINEL if i == UNK else self.itos[i])
        return "".join(out)


def lemma_dev_split(
    rows: list[tuple[str, str]], fraction: float = 0.1, seed: int = 0
) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """Hold out a dev set by lemma for early stopping."""
    rng = random.Random(seed)
    idx = list(range(len(rows)))
    rng.shuffle(idx)
    n_dev = max(1, int(len(rows) * fraction))
    if n_dev >= len(rows):
        raise DataError("dataset too small for a dev split")
    dev_idx = set(idx[:n_dev])
    train = [r for i, r in enumerate(rows) if i not in dev_idx]
    dev = [r for i, r in enumerate(rows) if i in dev_idx]
    return train, dev


def make_batches(rows, vocab: Vocab, batch_size: int, rng: random.Random):
    """Yield (src, src_mask, tgt_in, tgt_out) padded LongTensors."""
    order = list(range(len(rows)))
    rng.shuffle(order)
    for start in range(0, len(order), batch_size):
        chunk = [rows[i] for i in order[start : start + batch_size]]
        yield encode_batch(chunk, vocab)


def encode_batch(chunk, vocab: Vocab):
    srcs = [vocab.encode(lemma) for lemma, _ in chunk]
    tgts = [[BOS] + vocab.encode(form) + [EOS] for _, form in chunk]
    max_s = max(len(s) for s in srcs)
    max_t = max(len(t) for t in tgts)
    src = torch.full((len(chunk), max_s), PAD, dtype=torch.long)
    tgt = torch.full((len(chunk), max_t), PAD, dtype=torch.long)
    for i, (s, t) in enumerate(zip(srcs, tgts)):
        src[i, : len(s)] = torch.tensor(s)
        tgt[i, : len(t)] = torch.tensor(t)
    return src, tgt[:, :-1], tgt[:, 1:]
