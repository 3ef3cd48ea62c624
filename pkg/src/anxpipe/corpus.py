"""Post ingestion, text cleaning, and deterministic dataset splits.

Cleaning applies, in order: HTML tag stripping, URL removal, emoji removal,
whitespace collapsing, and terminal-punctuation de-duplication. The pipeline
is re-applied until the text stops changing, so the operation is idempotent
by construction.

Tag scanner grammar: a tag is ``<`` followed by ``/``, ``!`` or an ASCII
letter, then any run of characters other than ``<`` and ``>``, closed by
``>``. Anything else containing ``<`` is kept verbatim. Tags are replaced
by a single space; inner text between tags is untouched.

URLs are ``scheme://`` tokens (scheme = letter followed by letters, digits,
``+``, ``-`` or ``.``) or ``www.`` tokens, each extending to the next
whitespace.

Emoji are defined by an explicit codepoint-range table (below) rather than
by unicodedata, to avoid Unicode-version drift.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "Post",
    "SplitSpec",
    "CorpusError",
    "load_posts",
    "save_posts",
    "clean_text",
    "clean_posts",
    "split_dataset",
]


class CorpusError(ValueError):
    """Malformed corpus file or invalid split request."""


@dataclass(frozen=True)
class Post:
    id: str
    raw_text: str
    clean_text: str = ""
    label: int | None = None


@dataclass(frozen=True)
class SplitSpec:
    train_frac: float
    val_frac: float
    test_frac: float
    seed: int = 42

    def validate(self) -> None:
        fracs = (self.train_frac, self.val_frac, self.test_frac)
        if any(f <= 0 for f in fracs):
            raise CorpusError("split fractions must be positive")
        if abs(sum(fracs) - 1.0) > 1e-9:
            raise CorpusError(f"split fractions must sum to 1.0, got {sum(fracs)!r}")


# Emoji codepoint ranges: Emoticons, Misc Symbols & Pictographs, Transport,
# Supplemental Symbols & Pictographs, variation selectors.
EMOJI_RANGES = (
    (0x1F600, 0x1F64F),
    (0x1F300, 0x1F5FF),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0xFE00, 0xFE0F),
)

_TAG_RE = re.compile(r"<[!/a-zA-Z][^<>]*>")
_URL_RE = re.compile(r"(?:[a-zA-Z][a-zA-Z0-9+.\-]*://\S+|\bwww\.\S+)")
_EMOJI_RE = re.compile(
    "[" + "".join(f"{chr(lo)}-{chr(hi)}" for lo, hi in EMOJI_RANGES) + "]"
)
_WS_RE = re.compile(r"\s+")
_REPEAT_PUNCT_RE = re.compile(r"([.!?])\1+")


def _clean_pass(text: str) -> str:
    text = _TAG_RE.sub(" ", text)
    text = _URL_RE.sub(" ", text)
    text = _EMOJI_RE.sub(" ", text)
    text = _REPEAT_PUNCT_RE.sub(r"\1", text)
    text = _WS_RE.sub(" ", text)
    return text.strip()


def clean_text(raw: str) -> str:
    """Apply the cleaning rules until a fixed point is reached."""
    current = raw
    while True:
        cleaned = _clean_pass(current)
        if cleaned == current:
            return cleaned
        current = cleaned


def clean_posts(posts: list[Post]) -> list[Post]:
    return [replace(p, clean_text=clean_text(p.raw_text)) for p in posts]


_TRUE_LABELS = {"1", "true"}
_FALSE_LABELS = {"0", "false"}


def _parse_label(value, where: str) -> int | None:
    if value is None:
        return None
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        if value in (0, 1):
            return value
        raise CorpusError(f"{where}: label must be 0 or 1, got {value!r}")
    if isinstance(value, str):
        stripped = value.strip().lower()
        if stripped == "":
            return None
        if stripped in _TRUE_LABELS:
            return 1
        if stripped in _FALSE_LABELS:
            return 0
    raise CorpusError(f"{where}: unrecognized label value {value!r}")


def _make_post(row: dict, line_no: int, seen: set[str]) -> Post:
    where = f"line {line_no}"
    if "id" not in row or row["id"] in (None, ""):
        raise CorpusError(f"{where}: missing required key 'id'")
    if "text" not in row or row["text"] is None:
        raise CorpusError(f"{where}: missing required key 'text'")
    post_id = str(row["id"])
    if post_id in seen:
        raise CorpusError(f"duplicate post id {post_id!r} at {where}")
    seen.add(post_id)
    label = _parse_label(row.get("label"), where)
    return Post(id=post_id, raw_text=str(row["text"]), label=label)


def load_posts(path, format: str | None = None) -> list[Post]:
    """Read posts from a JSONL or CSV file; format inferred from suffix if omitted."""
    path = str(path)
    if format is None:
        format = "csv" if path.endswith(".csv") else "jsonl"
    if format not in ("jsonl", "csv"):
        raise CorpusError(f"unknown corpus format {format!r}")

    posts: list[Post] = []
    seen: set[str] = set()
    if format == "jsonl":
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorpusError(f"line {line_no}: invalid JSON ({exc.msg})") from exc
                if not isinstance(row, dict):
                    raise CorpusError(f"line {line_no}: expected a JSON object")
                posts.append(_make_post(row, line_no, seen))
    else:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or "id" not in reader.fieldnames:
                raise CorpusError("line 1: CSV header must include 'id' and 'text'")
            for line_no, row in enumerate(reader, start=2):
                if row.get("text") is None:
                    raise CorpusError(f"line {line_no}: missing required key 'text'")
                posts.append(_make_post(row, line_no, seen))
    return posts


def save_posts(posts: list[Post], path, use_clean: bool = False) -> None:
    """Write posts as JSONL; with use_clean the cleaned text replaces the raw text."""
    with open(path, "w", encoding="utf-8") as fh:
        for p in posts:
            row = {"id": p.id, "text": p.clean_text if use_clean else p.raw_text}
            if p.label is not None:
                row["label"] = p.label
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def split_dataset(
    posts: list[Post], spec: SplitSpec
) -> tuple[list[Post], list[Post], list[Post]]:
    """Stratified, seed-deterministic train/val/test split.

    Split sizes are round(frac * n) for val and test with the remainder going
    to train. Positives are allocated to val/test by the same rounding rule,
    which keeps every split's positive rate within one post of the global rate.
    """
    spec.validate()
    for p in posts:
        if p.label is None:
            raise CorpusError(f"post {p.id!r} is unlabeled; splits need labels")

    n = len(posts)
    n_val = round(spec.val_frac * n)
    n_test = round(spec.test_frac * n)
    n_train = n - n_val - n_test
    if min(n_train, n_val, n_test) < 0:
        raise CorpusError("split fractions produce a negative split size")

    by_id = sorted(posts, key=lambda p: p.id)
    pos = [p for p in by_id if p.label == 1]
    neg = [p for p in by_id if p.label == 0]
    rng = np.random.default_rng(spec.seed)
    pos = [pos[i] for i in rng.permutation(len(pos))]
    neg = [neg[i] for i in rng.permutation(len(neg))]

    rate = len(pos) / n if n else 0.0
    pos_val = min(round(rate * n_val), len(pos), n_val)
    pos_test = min(round(rate * n_test), len(pos) - pos_val, n_test)

    val = pos[:pos_val] + neg[: n_val - pos_val]
    test = pos[pos_val : pos_val + pos_test] + neg[n_val - pos_val : n_val - pos_val + n_test - pos_test]
    taken_pos = pos_val + pos_test
    taken_neg = (n_val - pos_val) + (n_test - pos_test)
    train = pos[taken_pos:] + neg[taken_neg:]

    if len(val) != n_val or len(test) != n_test or len(train) != n_train:
        raise CorpusError("class counts cannot satisfy the requested split sizes")

    order = {p.id: i for i, p in enumerate(posts)}
    key = lambda p: order[p.id]
    return sorted(train, key=key), sorted(val, key=key), sorted(test, key=key)
