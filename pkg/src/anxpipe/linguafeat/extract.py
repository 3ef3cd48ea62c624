"""Window extraction, standardization, and the feature-matrix file format.

Windows are consecutive sentence spans: starts at 0, stride, 2*stride, ...
each covering ``window_len`` sentences, with trailing partial windows kept,
so a post with S sentences yields ceil(S / stride) rows. Windows without a
single word token get zeros for the word-statistics families (documented
degenerate-window rule); n-gram features fall back to the table floor and
the compression features still see the raw text.

Matrix file format (one post per file)::

    #CMFX v1 post_id=<id> n=<N> f=<F>
    ["feature_id", ...]                 # JSON array
    v v v ... (F reals)                 # N rows, repr() formatting

repr() keeps the shortest round-trip decimal, so files are byte-stable
across runs of the same build.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from ..corpus import Post
from .families import (
    lexical_richness_features,
    lexicon_features,
    morphosyntactic_features,
    ngram_register_features,
)
from .readability import readability_features
from .registry import FeatureRegistry
from .resources import ResourceBundle
from .segmentation import segment_sentences
from .syntax import annotate_syntax

__all__ = [
    "FeatureMatrix",
    "Standardizer",
    "extract_feature_matrix",
    "fit_standardizer",
    "apply_standardizer",
    "write_feature_matrix",
    "read_feature_matrix",
    "window_seed",
]

STD_FLOOR = 1e-12


@dataclass(frozen=True)
class FeatureMatrix:
    post_id: str
    rows: np.ndarray  # (N, F)
    feature_ids: tuple
    standardized: bool = False


def window_seed(seed: int, window_index: int) -> int:
    """Stable per-window child seed for the compression-distortion features."""
    state = np.random.SeedSequence([seed, window_index]).generate_state(1, np.uint64)
    return int(state[0])


def extract_feature_matrix(
    post: Post,
    registry: FeatureRegistry,
    bundle: ResourceBundle,
    window_len: int = 1,
    stride: int = 1,
    seed: int = 42,
) -> FeatureMatrix:
    if window_len < 1 or stride < 1:
        raise ValueError("window_len and stride must be >= 1")
    sentences = segment_sentences(post.clean_text)
    annotations = [annotate_syntax(s) for s in sentences]

    selected = registry.selection_mask
    rows = []
    for w_idx, start in enumerate(range(0, len(sentences), stride)):
        window = sentences[start : start + window_len]
        window_ann = annotations[start : start + window_len]
        has_words = any(t.is_word for s in window for t in s.tokens)

        morpho = morphosyntactic_features(window, window_ann, seed=window_seed(seed, w_idx))
        ngram = ngram_register_features(window, bundle)
        if has_words:
            lexical = lexical_richness_features(window, bundle)
            read = readability_features(window)
            lexicon = lexicon_features(window, bundle)
        else:
            lexical = np.zeros(_family_width(registry, "lexical"))
            read = np.zeros(_family_width(registry, "readability"))
            lexicon = np.zeros(_family_width(registry, "lexicon"))
        full = np.concatenate([morpho, lexical, ngram, read, lexicon])
        if full.shape[0] != len(registry.entries):
            raise ValueError(
                f"feature row width {full.shape[0]} != registry size {len(registry.entries)}"
            )
        rows.append(full[selected])

    return FeatureMatrix(
        post_id=post.id,
        rows=np.array(rows, dtype=np.float64),
        feature_ids=tuple(registry.selected_ids),
    )


def _family_width(registry: FeatureRegistry, family: str) -> int:
    return sum(1 for _, fam in registry.entries if fam == family)


@dataclass(frozen=True)
class Standardizer:
    feature_ids: tuple
    mean: np.ndarray
    std: np.ndarray  # population standard deviation

    def to_dict(self) -> dict:
        return {
            "feature_ids": list(self.feature_ids),
            "mean": self.mean.tolist(),
            "std": self.std.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Standardizer":
        return cls(
            feature_ids=tuple(data["feature_ids"]),
            mean=np.asarray(data["mean"], dtype=np.float64),
            std=np.asarray(data["std"], dtype=np.float64),
        )


def fit_standardizer(matrices: list) -> Standardizer:
    if not matrices:
        raise ValueError("cannot fit a standardizer on zero matrices")
    ids = matrices[0].feature_ids
    for m in matrices:
        if m.feature_ids != ids:
            raise ValueError(f"feature id mismatch between matrices ({m.post_id!r})")
    stacked = np.vstack([m.rows for m in matrices])
    return Standardizer(
        feature_ids=ids,
        mean=stacked.mean(axis=0),
        std=stacked.std(axis=0),
    )


def apply_standardizer(matrix: FeatureMatrix, st: Standardizer) -> FeatureMatrix:
    if matrix.feature_ids != st.feature_ids:
        raise ValueError("feature id mismatch between matrix and standardizer")
    safe = st.std >= STD_FLOOR
    rows = np.where(safe, (matrix.rows - st.mean) / np.where(safe, st.std, 1.0), 0.0)
    return replace(matrix, rows=rows, standardized=True)


def write_feature_matrix(matrix: FeatureMatrix, path) -> None:
    n, f = matrix.rows.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"#CMFX v1 post_id={matrix.post_id} n={n} f={f}\n")
        fh.write(json.dumps(list(matrix.feature_ids)) + "\n")
        for row in matrix.rows:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def read_feature_matrix(path, standardized: bool = False) -> FeatureMatrix:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        parts = header.split()
        if len(parts) != 5 or parts[0] != "#CMFX" or parts[1] != "v1":
            raise ValueError(f"bad feature-matrix header: {header!r}")
        fields = dict(p.split("=", 1) for p in parts[2:])
        post_id = fields["post_id"]
        n, f = int(fields["n"]), int(fields["f"])
        feature_ids = tuple(json.loads(fh.readline()))
        if len(feature_ids) != f:
            raise ValueError("feature id count does not match header")
        rows = np.empty((n, f))
        for i in range(n):
            values = fh.readline().split()
            if len(values) != f:
                raise ValueError(f"row {i} has {len(values)} values, expected {f}")
            rows[i] = [float(v) for v in values]
    return FeatureMatrix(
        post_id=post_id, rows=rows, feature_ids=feature_ids, standardized=standardized
    )
