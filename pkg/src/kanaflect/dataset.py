"""SIGMORPHON-style TSV I/O, validation, statistics, splitting, and the
synthetic lexicon generator.

Wire format: one pair per line, ``lemma<TAB>past<TAB>_`` with a trailing
newline, UTF-8, LF line endings, no BOM. The third field is always the
literal placeholder ``_``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .classifier import infer_type
from .conjugator import GODAN_PAST_ENDINGS, VerbType, conjugate_past
from .errors import (
    ConfigError,
    GenerationError,
    ParseError,
    UnclassifiableError,
    ValidationError,
)
from .kana import KanaWord, Mora, segment_moras

PLACEHOLDER = "_"

# Emitted datasets never contain canonical irregulars.
EMITTABLE_TYPES = (
    VerbType.T1_Godan,
    VerbType.T2_Ichidan,
    VerbType.T4_1_IGemination,
    VerbType.T4_2_EGemination,
    VerbType.T4_3_Localized,
)

# Per-type counts from the reference distribution (3,958 verbs total).
TABLE1_COUNTS = {
    VerbType.T1_Godan: 2503,
    VerbType.T2_Ichidan: 1298,
    VerbType.T4_1_IGemination: 119,
    VerbType.T4_2_EGemination: 37,
    VerbType.T4_3_Localized: 1,
}


@dataclass(frozen=True)
class InflectionPair:
    lemma: KanaWord
    past: KanaWord
    vtype: VerbType


@dataclass(frozen=True)
class Dataset:
    pairs: tuple[InflectionPair, ...]
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def lemmas(self) -> set[str]:
        return {p.lemma.surface for p in self.pairs}


@dataclass(frozen=True)
class SplitSpec:
    kind: str  # "form_split" | "lemma_split"
    test_fraction: float
    seed: int

    def __post_init__(self):
        if self.kind not in ("form_split", "lemma_split"):
            raise ConfigError(f"unknown split kind {self.kind!r}")
        if not 0 < self.test_fraction < 1:
            raise ConfigError(
                f"test_fraction must be in (0,1), got {self.test_fraction}"
            )


def parse_tsv(lines, provenance: str = "") -> Dataset:
    """Parse a TSV stream into a validated, type-labeled Dataset.

    Rejects malformed lines, non-"_" feature fields, duplicate lemmas
    (polysemy exclusion), canonical irregulars, and unclassifiable pairs,
    always naming the offending line number.
    """
    pairs: list[InflectionPair] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(
                f"line {lineno}: expected 3 TAB-separated fields, got {len(fields)}",
                lineno,
            )
        lemma_s, past_s, feat = fields
        if feat != PLACEHOLDER:
            raise ParseError(
                f"line {lineno}: feature field must be {PLACEHOLDER!r}, got {feat!r}",
                lineno,
            )
        try:
            lemma = segment_moras(lemma_s)
            past = segment_moras(past_s)
            vtype = infer_type(lemma, past)
        except UnclassifiableError as e:
            raise ParseError(f"line {lineno}: {e}", lineno) from e
        except Exception as e:
            raise ParseError(f"line {lineno}: {e}", lineno) from e
        if vtype is VerbType.T3_CanonicalIrregular:
            raise ValidationError(
                f"line {lineno}: canonical irregular {lemma_s!r} is excluded "
                f"from datasets",
                lineno,
            )
        if lemma_s in seen:
            raise ValidationError(
                f"line {lineno}: duplicate lemma {lemma_s!r} "
                f"(polysemous lemmas are excluded)",
                lineno,
            )
        seen.add(lemma_s)
        pairs.append(InflectionPair(lemma, past, vtype))
    return Dataset(tuple(pairs), provenance)


def emit_tsv(d: Dataset) -> str:
    return "".join(
        f"{p.lemma.surface}\t{p.past.surface}\t{PLACEHOLDER}\n" for p in d.pairs
    )


# --- statistics --------------------------------------------------------------

TYPE4_SUBTYPES = (
    VerbType.T4_1_IGemination,
    VerbType.T4_2_EGemination,
    VerbType.T4_3_Localized,
)


@dataclass(frozen=True)
class DatasetStats:
    total: int
    counts: dict[VerbType, int]

    @property
    def type4_count(self) -> int:
        return sum(self.counts.get(t, 0) for t in TYPE4_SUBTYPES)

    def proportion(self, vtype: VerbType) -> Fraction:
        if self.total == 0:
            return Fraction(0)
        return Fraction(self.counts.get(vtype, 0), self.total)

    @property
    def type4_proportion(self) -> Fraction:
        if self.total == 0:
            return Fraction(0)
        return Fraction(self.type4_count, self.total)


def format_percent(p: Fraction | float) -> str:
    """Render a proportion as a percentage string.

    One decimal place normally; proportions that would round to 0.0 but are
    nonzero are shown truncated to two decimals, matching the reference
    table's presentation of its rarest class.
    """
    pct = float(p) * 100.0
    if pct == 0:
        return "0.0"
    one_dp = round(pct, 1)
    if one_dp >= 0.1:
        return f"{one_dp:.1f}"
    truncated = int(pct * 100) / 100
    return f"{truncated:.2f}"


def stats(d: Dataset) -> DatasetStats:
    counts = {t: 0 for t in EMITTABLE_TYPES}
    for p in d.pairs:
        counts[p.vtype] = counts.get(p.vtype, 0) + 1
    return DatasetStats(len(d.pairs), counts)


# --- splitting ---------------------------------------------------------------

def split(d: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Deterministic train/test partition.

    Test size is floor(total * fraction), minimum 1. Because lemmas are
    unique, form and lemma splits coincide, but the lemma-disjointness
    guarantee is asserted independently for lemma_split.
    """
    n = len(d.pairs)
    n_test = max(1, int(n * spec.test_fraction))
    if n_test >= n:
        raise ConfigError(
            f"test_fraction {spec.test_fraction} leaves no training data "
            f"for a dataset of {n} pairs"
        )
    rng = random.Random(spec.seed)
    idx = list(range(n))
    rng.shuffle(idx)
    test_idx = set(idx[:n_test])
    train = Dataset(
        tuple(p for i, p in enumerate(d.pairs) if i not in test_idx),
        f"{d.provenance}/train",
    )
    test = Dataset(
        tuple(p for i, p in enumerate(d.pairs) if i in test_idx),
        f"{d.provenance}/test",
    )
    if spec.kind == "lemma_split":
        overlap = train.lemmas() & test.lemmas()
        assert not overlap, f"lemma split produced overlapping lemmas: {overlap}"
    return train, test


# --- synthetic generation ----------------------------------------------------

# Stem inventory: plain CV kana only. No small kana, no っ/ん as stem-final,
# no leading っ/ん (enforced at assembly).
_STEM_KANA = [
    c
    for row in ("あいうえお", "かきくけこ", "がぎぐげご", "さしすせそ", "ざじずぜぞ",
                "たちつてと", "だでど", "なにぬねの", "はひふへほ", "ばびぶべぼ",
                "ぱぴぷぺぽ", "まみむめも", "やゆよ", "らりるれろ", "わ")
    for c in row
]
_DIGRAPH_BASES = [c for c in "きぎしじちにひびぴみり"]
_GLIDES = "ゃゅょ"

_GODAN_FINALS = list(GODAN_PAST_ENDINGS)

_MAX_ATTEMPTS_PER_ITEM = 1000


def _random_stem_mora(rng: random.Random) -> str:
    # Digraphs appear occasionally; keeps lemmas mostly plain CV.
    if rng.random() < 0.06:
        return rng.choice(_DIGRAPH_BASES) + rng.choice(_GLIDES)
    return rng.choice(_STEM_KANA)


def _vowel_of(kana_mora: str) -> str:
    return segment_moras(kana_mora).moras[0].vowel


def _random_lemma(rng: random.Random, vtype: VerbType) -> str:
    if vtype is VerbType.T4_3_Localized:
        return "いく"
    # 2-6 moras total including the final ending mora.
    n_stem = rng.randint(1, 5)
    while True:
        stem = [_random_stem_mora(rng) for _ in range(n_stem)]
        last_vowel = _vowel_of(stem[-1])
        if vtype is VerbType.T1_Godan:
            final = rng.choice(_GODAN_FINALS)
            if final == "る" and last_vowel in ("i", "e"):
                continue  # would be orthographically 4-1/4-2
        elif vtype is VerbType.T2_Ichidan:
            if last_vowel not in ("i", "e"):
                continue
            final = "る"
        elif vtype is VerbType.T4_1_IGemination:
            if last_vowel != "i":
                continue
            final = "る"
        elif vtype is VerbType.T4_2_EGemination:
            if last_vowel != "e":
                continue
            final = "る"
        else:
            raise GenerationError(f"cannot generate lemmas for type {vtype}")
        lemma = "".join(stem) + final
        # Surfaces owned by other rules: canonical irregulars are excluded
        # outright, and いく is reserved for type 4-3.
        if lemma.endswith(("する", "くる")) or lemma == "いく":
            continue
        return lemma


def generate_synthetic(
    counts: dict[VerbType, int] | None = None,
    seed: int = 0,
    provenance: str = "synthetic",
) -> Dataset:
    """Generate a synthetic lexicon with exact per-type counts.

    Past forms come from the conjugation oracle; lemma uniqueness is enforced
    by rejection sampling. Type 4-3 is pinned to its single attested lemma.
    Deterministic for a fixed seed.
    """
    if counts is None:
        counts = dict(TABLE1_COUNTS)
    if counts.get(VerbType.T3_CanonicalIrregular, 0) != 0:
        raise ConfigError("canonical irregulars cannot appear in generated data")
    if counts.get(VerbType.T4_3_Localized, 0) > 1:
        raise GenerationError(
            "type 4-3 has a single attested lemma; cannot generate more than 1"
        )
    if any(c < 0 for c in counts.values()):
        raise ConfigError("per-type counts must be non-negative")

    rng = random.Random(seed)
    pairs: list[InflectionPair] = []
    seen: set[str] = set()
    for vtype in EMITTABLE_TYPES:
        want = counts.get(vtype, 0)
        made = 0
        attempts = 0
        budget = _MAX_ATTEMPTS_PER_ITEM * max(want, 1)
        while made < want:
            attempts += 1
            if attempts > budget:
                raise GenerationError(
                    f"could not generate {want} unique lemmas for type "
                    f"{vtype.label} within the retry budget"
                )
            lemma_s = _random_lemma(rng, vtype)
            if lemma_s in seen:
                continue
            lemma = segment_moras(lemma_s)
            past = conjugate_past(lemma, vtype)
            seen.add(lemma_s)
            pairs.append(InflectionPair(lemma, past, vtype))
            made += 1
    rng.shuffle(pairs)
    return Dataset(tuple(pairs), provenance)
