"""The fourteen readability indices, from their published formulas.

With W = words, S = sentences, C = characters in word tokens, Y = syllables,
P = words of three or more syllables, M = one-syllable words, G = words of
seven or more characters, D = words off the built-in easy-word list and
U = distinct such words:

    ARI            = 4.71*(C/W) + 0.5*(W/S) - 21.43
    ColemanLiau    = 0.0588*(100*C/W) - 0.296*(100*S/W) - 15.8
    DaleChall      = 0.1579*PDW + 0.0496*(W/S) + (3.6365 if PDW > 5 else 0)
                     with PDW = 100*D/W
    FKGradeLevel   = 0.39*(W/S) + 11.8*(Y/W) - 15.59
    FKReadingEase  = 206.835 - 1.015*(W/S) - 84.6*(Y/W)
    FryX           = 100*S/W      (sentences per hundred words)
    FryY           = 100*Y/W      (syllables per hundred words)
    Lix            = W/S + 100*G/W
    SMOG           = 1.043*sqrt(30*P/S) + 3.1291
    GunningFog     = 0.4*((W/S) + 100*P/W)
    DaleChallPSK   = 3.2672 + 0.0596*(W/S) + 0.1155*PDW
    FORCAST        = 20 - 15*M/W
    Rix            = G/S
    Spache         = 0.121*(W/S) + 0.082*(100*U/W) + 0.659

Characters are counted over word tokens as tokenized (apostrophes inside
contractions included). "Difficult" is plain membership: a word counts as
difficult when its lowercased form is absent from the easy-word list, with
no inflection stemming. Spache uses the revised 1974 constants and counts
each unfamiliar word once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

__all__ = [
    "READABILITY_FEATURES",
    "TextCounts",
    "counts_from_window",
    "readability_from_counts",
    "readability_features",
    "easy_words",
]

READABILITY_FEATURES = (
    "ARI",
    "ColemanLiau",
    "DaleChall",
    "FKGradeLevel",
    "FKReadingEase",
    "FryX",
    "FryY",
    "Lix",
    "SMOG",
    "GunningFog",
    "DaleChallPSK",
    "FORCAST",
    "Rix",
    "Spache",
)

LONG_WORD_CHARS = 7
POLYSYLLABLE_MIN = 3


@lru_cache(maxsize=1)
def easy_words() -> frozenset:
    text = resources.files("anxpipe.linguafeat").joinpath("data/easy_words.txt").read_text("utf-8")
    return frozenset(w for w in text.split() if not w.startswith("#"))


@dataclass(frozen=True)
class TextCounts:
    words: int
    sentences: int
    chars: int
    syllables: int
    polysyllables: int
    monosyllables: int
    long_words: int
    difficult_words: int
    unique_difficult_words: int


def counts_from_window(sentences) -> TextCounts:
    words = [t for s in sentences for t in s.tokens if t.is_word]
    easy = easy_words()
    difficult = [t.lower for t in words if t.lower not in easy]
    return TextCounts(
        words=len(words),
        sentences=len(sentences),
        chars=sum(t.char_len for t in words),
        syllables=sum(t.syllables for t in words),
        polysyllables=sum(1 for t in words if t.syllables >= POLYSYLLABLE_MIN),
        monosyllables=sum(1 for t in words if t.syllables == 1),
        long_words=sum(1 for t in words if t.char_len >= LONG_WORD_CHARS),
        difficult_words=len(difficult),
        unique_difficult_words=len(set(difficult)),
    )


def readability_from_counts(c: TextCounts) -> np.ndarray:
    if c.words < 1:
        raise ValueError("readability needs at least one word")
    if c.sentences < 1:
        raise ValueError("readability needs at least one sentence")
    w, s = float(c.words), float(c.sentences)
    cpw = c.chars / w
    wps = w / s
    ypw = c.syllables / w
    pdw = 100.0 * c.difficult_words / w
    values = (
        4.71 * cpw + 0.5 * wps - 21.43,
        0.0588 * (100.0 * cpw) - 0.296 * (100.0 * s / w) - 15.8,
        0.1579 * pdw + 0.0496 * wps + (3.6365 if pdw > 5.0 else 0.0),
        0.39 * wps + 11.8 * ypw - 15.59,
        206.835 - 1.015 * wps - 84.6 * ypw,
        100.0 * s / w,
        100.0 * ypw,
        wps + 100.0 * c.long_words / w,
        1.043 * math.sqrt(30.0 * c.polysyllables / s) + 3.1291,
        0.4 * (wps + 100.0 * c.polysyllables / w),
        3.2672 + 0.0596 * wps + 0.1155 * pdw,
        20.0 - 15.0 * c.monosyllables / w,
        c.long_words / s,
        0.121 * wps + 0.082 * (100.0 * c.unique_difficult_words / w) + 0.659,
    )
    return np.array(values, dtype=np.float64)


def readability_features(sentences) -> np.ndarray:
    """All fourteen indices for a window of sentences."""
    return readability_from_counts(counts_from_window(sentences))
