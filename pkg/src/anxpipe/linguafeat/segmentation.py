"""Rule-based sentence segmentation and tokenization.

Sentence boundaries sit at ``.``, ``!`` or ``?`` runs that are followed by
whitespace plus an uppercase letter or digit, or that end the text. A period
does not split when the word before it is a known abbreviation, a single
letter (an initial), or contains an internal dot ("e.g", "a.m", "u.s").

Word tokens are maximal runs of unicode letters/digits, with internal
apostrophes kept so contractions stay whole; every other non-space character
becomes a one-character token with ``is_word=False``.

Syllables are counted as maximal vowel groups (aeiouy) with a final-silent-e
rule: a trailing "e" drops one group unless it closes a consonant+"le"
ending. Minimum one syllable per word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

__all__ = ["Token", "Sentence", "SegmentationError", "segment_sentences", "tokenize", "count_syllables", "pos_class"]


class SegmentationError(ValueError):
    """Raised for text with no sentence content."""


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    char_len: int
    syllables: int
    pos_class: str  # noun | verb | adj | adv | function | other
    is_word: bool


@dataclass(frozen=True)
class Sentence:
    text: str
    tokens: tuple[Token, ...]

    def words(self) -> list[Token]:
        return [t for t in self.tokens if t.is_word]


ABBREVIATIONS = frozenset(
    """mr mrs ms dr prof sr jr st vs etc fig al approx dept inc ltd co""".split()
)

_WORD_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*", re.UNICODE)
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")
_TERMINALS = frozenset(".!?")


@lru_cache(maxsize=1)
def _pos_lexicon() -> dict[str, str]:
    table: dict[str, str] = {}
    text = resources.files("anxpipe.linguafeat").joinpath("data/pos_lexicon.txt").read_text("utf-8")
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        word, cls = line.split("\t")
        table[word] = cls
    return table


_SUFFIX_RULES = (
    ("ly", "adv"),
    ("tion", "noun"),
    ("sion", "noun"),
    ("ment", "noun"),
    ("ness", "noun"),
    ("ity", "noun"),
    ("ship", "noun"),
    ("hood", "noun"),
    ("ism", "noun"),
    ("ous", "adj"),
    ("ful", "adj"),
    ("ive", "adj"),
    ("ible", "adj"),
    ("able", "adj"),
    ("less", "adj"),
    ("ish", "adj"),
    ("ical", "adj"),
    ("ing", "verb"),
    ("ed", "verb"),
)


def pos_class(lower: str) -> str:
    """Look the word up in the built-in lexicon, then fall back to suffix rules."""
    cls = _pos_lexicon().get(lower)
    if cls is not None:
        return cls
    for suffix, suffix_cls in _SUFFIX_RULES:
        if len(lower) > len(suffix) + 1 and lower.endswith(suffix):
            return suffix_cls
    return "other"


def count_syllables(word: str) -> int:
    lower = word.lower()
    if not any(c.isalpha() for c in lower):
        return 1
    groups = len(_VOWEL_GROUP_RE.findall(lower))
    if lower.endswith("e") and groups > 1:
        # consonant + "le" endings ("castle") keep their final group
        if not (len(lower) >= 3 and lower.endswith("le") and lower[-3] not in "aeiouy"):
            groups -= 1
    return max(1, groups)


def _make_token(surface: str, is_word: bool) -> Token:
    lower = surface.lower()
    return Token(
        surface=surface,
        lower=lower,
        char_len=len(surface),
        syllables=count_syllables(surface) if is_word else 1,
        pos_class=pos_class(lower) if is_word else "other",
        is_word=is_word,
    )


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    for match in _WORD_RE.finditer(text):
        for ch in text[pos : match.start()]:
            if not ch.isspace():
                tokens.append(_make_token(ch, is_word=False))
        tokens.append(_make_token(match.group(0), is_word=True))
        pos = match.end()
    for ch in text[pos:]:
        if not ch.isspace():
            tokens.append(_make_token(ch, is_word=False))
    return tokens


def _word_before(text: str, index: int) -> str:
    """The letter/dot run immediately before position ``index``."""
    start = index
    while start > 0 and (text[start - 1].isalpha() or text[start - 1] == "."):
        start -= 1
    return text[start:index].lstrip(".")


def _suppressed_by_abbreviation(text: str, dot_index: int) -> bool:
    word = _word_before(text, dot_index)
    if not word:
        return False
    if "." in word:  # dotted abbreviation such as "e.g" or "a.m"
        return True
    lower = word.lower()
    return len(lower) == 1 or lower in ABBREVIATIONS


def _boundary_after(text: str, run_end: int) -> bool:
    """True if a terminal-punctuation run ending at ``run_end`` closes a sentence."""
    rest = text[run_end:]
    if rest.strip() == "":
        return True
    if rest[0].isspace():
        follower = rest.lstrip()
        return bool(follower) and (follower[0].isupper() or follower[0].isdigit())
    return False


def segment_sentences(text: str) -> list[Sentence]:
    if not text or not text.strip():
        raise SegmentationError("no sentences")

    boundaries: list[int] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i] in _TERMINALS:
            run_start = i
            while i < n and text[i] in _TERMINALS:
                i += 1
            if not _boundary_after(text, i):
                continue
            if text[run_start] == "." and run_start == i - 1 and _suppressed_by_abbreviation(text, run_start):
                continue
            boundaries.append(i)
        else:
            i += 1

    sentences: list[Sentence] = []
    start = 0
    for b in boundaries + [n]:
        chunk = text[start:b].strip()
        start = b
        if not chunk:
            continue
        tokens = tokenize(chunk)
        if not tokens:
            continue
        sentences.append(Sentence(text=chunk, tokens=tuple(tokens)))
    if not sentences:
        raise SegmentationError("no sentences")
    return sentences
