"""Hiragana text model: mora segmentation, gojūon feature lookup, mora-level diffs.

Every other module treats the mora (base kana, optionally carrying a small
glide, or a standalone っ/ん) as its atomic unit, because the phenomena of
interest -- gemination, vowel length, stem alternation -- are mora phenomena.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RejectedInput

HIRAGANA_LO = 0x3041
HIRAGANA_HI = 0x3096

SOKUON = "っ"
MORAIC_NASAL = "ん"
SMALL_GLIDES = "ゃゅょ"

# Gojūon grid: codepoint -> (onset row, vowel column).
# Small vowel kana carry the features of their full-size counterparts.
_GRID_ROWS = {
    "zero": "あいうえお",
    "k": "かきくけこ",
    "g": "がぎぐげご",
    "s": "さしすせそ",
    "z": "ざじずぜぞ",
    "t": "たちつてと",
    "d": "だぢづでど",
    "n": "なにぬねの",
    "h": "はひふへほ",
    "b": "ばびぶべぼ",
    "p": "ぱぴぷぺぽ",
    "m": "まみむめも",
    "y": "やゆよ",
    "r": "らりるれろ",
    "w": "わゐゑを",
}
_VOWELS = "aiueo"

_FEATURES: dict[str, tuple[str, str]] = {}
for _row, _kana in _GRID_ROWS.items():
    if _row == "y":
        for _c, _v in zip(_kana, "auo"):
            _FEATURES[_c] = ("y", _v)
    elif _row == "w":
        for _c, _v in zip(_kana, "aieo"):
            _FEATURES[_c] = ("w", _v)
    else:
        for _c, _v in zip(_kana, _VOWELS):
            _FEATURES[_c] = (_row, _v)
# Small variants map onto their full-size features.
for _small, _big in zip("ぁぃぅぇぉゃゅょゎゕゖ", "あいうえおやゆよわかけ"):
    _FEATURES[_small] = _FEATURES[_big]
_FEATURES["ゔ"] = ("v", "u")
_FEATURES[SOKUON] = ("special", "none")
_FEATURES[MORAIC_NASAL] = ("special", "none")

_GLIDE_VOWEL = {"ゃ": "a", "ゅ": "u", "ょ": "o"}


def is_hiragana(text: str) -> bool:
    return all(HIRAGANA_LO <= ord(c) <= HIRAGANA_HI for c in text)


@dataclass(frozen=True)
class Mora:
    surface: str
    onset: str
    vowel: str
    is_sokuon: bool = False
    is_moraic_nasal: bool = False

    def __str__(self) -> str:
        return self.surface


@dataclass(frozen=True)
class KanaWord:
    moras: tuple[Mora, ...]

    @property
    def surface(self) -> str:
        return "".join(m.surface for m in self.moras)

    def __str__(self) -> str:
        return self.surface

    def __len__(self) -> int:
        return len(self.moras)

    def __getitem__(self, i):
        return self.moras[i]


def mora_features(m: Mora) -> tuple[str, str]:
    """Return the gojūon (onset row, vowel column) of a mora."""
    return m.onset, m.vowel


def _make_mora(surface: str) -> Mora:
    if len(surface) == 2:
        base, glide = surface
        onset, _ = _FEATURES[base]
        return Mora(surface, onset, _GLIDE_VOWEL[glide])
    onset, vowel = _FEATURES[surface]
    return Mora(
        surface,
        onset,
        vowel,
        is_sokuon=surface == SOKUON,
        is_moraic_nasal=surface == MORAIC_NASAL,
    )


def segment_moras(text: str) -> KanaWord:
    """Split a hiragana string into moras.

    Small glides (ゃゅょ) attach to the preceding base kana; っ and ん are
    standalone moras. Rejects anything outside the hiragana block, including
    the long-vowel mark ー, katakana, and kanji.
    """
    if not text:
        raise RejectedInput("empty string cannot be segmented")
    for i, c in enumerate(text):
        if not (HIRAGANA_LO <= ord(c) <= HIRAGANA_HI):
            raise RejectedInput(
                f"non-hiragana codepoint {c!r} (U+{ord(c):04X}) at index {i}"
            )
    moras: list[Mora] = []
    for c in text:
        if (
            c in SMALL_GLIDES
            and moras
            and len(moras[-1].surface) == 1
            and not moras[-1].is_sokuon
            and not moras[-1].is_moraic_nasal
        ):
            moras[-1] = _make_mora(moras[-1].surface + c)
        else:
            moras.append(_make_mora(c))
    return KanaWord(tuple(moras))


def word(text: str) -> KanaWord:
    """Shorthand for segment_moras."""
    return segment_moras(text)


# --- mora-level edit scripts -------------------------------------------------

KEEP = "keep"
DELETE = "delete"
INSERT = "insert"
SUBSTITUTE = "substitute"


@dataclass(frozen=True)
class EditOp:
    kind: str
    position: int  # source mora index (for insert: index the mora is inserted before)
    source: Mora | None = None
    target: Mora | None = None


@dataclass(frozen=True)
class EditScript:
    ops: tuple[EditOp, ...]

    @property
    def edits(self) -> tuple[EditOp, ...]:
        """Ops excluding keeps."""
        return tuple(op for op in self.ops if op.kind != KEEP)

    def apply(self, a: KanaWord) -> KanaWord:
        out: list[Mora] = []
        i = 0
        for op in self.ops:
            if op.kind == KEEP:
                out.append(a.moras[i])
                i += 1
            elif op.kind == DELETE:
                i += 1
            elif op.kind == INSERT:
                out.append(op.target)
            else:
                out.append(op.target)
                i += 1
        assert i == len(a.moras), "edit script does not cover the source word"
        return KanaWord(tuple(out))


def diff(a: KanaWord, b: KanaWord) -> EditScript:
    """Minimal mora-level edit script turning a into b.

    Unit costs. Ties are broken deterministically: delete, then insert, then
    substitute, resolved leftmost-first by a forward greedy walk over the
    Levenshtein cost table.
    """
    n, m = len(a.moras), len(b.moras)
    # cost[i][j] = edit distance between a[i:] and b[j:]
    cost = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        cost[i][m] = n - i
    for j in range(m + 1):
        cost[n][j] = m - j
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if a.moras[i].surface == b.moras[j].surface:
                cost[i][j] = cost[i + 1][j + 1]
            else:
                cost[i][j] = 1 + min(
                    cost[i + 1][j], cost[i][j + 1], cost[i + 1][j + 1]
                )
    ops: list[EditOp] = []
    i = j = 0
    while i < n or j < m:
        if (
            i < n
            and j < m
            and a.moras[i].surface == b.moras[j].surface
            and cost[i][j] == cost[i + 1][j + 1]
        ):
            ops.append(EditOp(KEEP, i, a.moras[i], b.moras[j]))
            i += 1
            j += 1
        elif i < n and cost[i][j] == 1 + cost[i + 1][j]:
            ops.append(EditOp(DELETE, i, source=a.moras[i]))
            i += 1
        elif j < m and cost[i][j] == 1 + cost[i][j + 1]:
            ops.append(EditOp(INSERT, i, target=b.moras[j]))
            j += 1
        else:
            ops.append(EditOp(SUBSTITUTE, i, source=a.moras[i], target=b.moras[j]))
            i += 1
            j += 1
    return EditScript(tuple(ops))
