"""Feature registry: the ordered feature universe plus a selection mask.

Entry order is fixed by family (morphosyntactic, lexical, ngram,
readability, lexicon) and, within the data-driven families, by the resource
bundle's deterministic ordering. With the shipped sample bundle the registry
holds 460 entries: 19 + 77 + 25 + 14 + 325.

The default mask selects the 168 features chosen by recursive feature
elimination on the shipped demo corpus (regenerate with ``anxpipe rfe``);
it applies whenever its feature ids are all present in the bundle-derived
registry, otherwise every entry is selected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources as importlib_resources

import numpy as np

from .families import (
    MORPHO_FEATURES,
    lexical_feature_names,
    lexicon_feature_names,
    ngram_feature_names,
)
from .readability import READABILITY_FEATURES
from .resources import ResourceBundle

__all__ = ["FeatureRegistry", "build_registry", "default_mask_ids", "DEFAULT_TARGET"]

DEFAULT_TARGET = 168

FAMILY_ORDER = ("morphosyntactic", "lexical", "ngram", "readability", "lexicon")


@dataclass(frozen=True)
class FeatureRegistry:
    entries: tuple  # of (feature_id, family)
    selection_mask: np.ndarray  # bool per entry

    @property
    def feature_ids(self) -> list:
        return [fid for fid, _ in self.entries]

    @property
    def selected_ids(self) -> list:
        return [fid for (fid, _), keep in zip(self.entries, self.selection_mask) if keep]

    @property
    def n_selected(self) -> int:
        return int(self.selection_mask.sum())

    def family_sizes(self) -> dict:
        sizes: dict = {}
        for _, family in self.entries:
            sizes[family] = sizes.get(family, 0) + 1
        return sizes


def _entry_names(bundle: ResourceBundle) -> list:
    entries = []
    entries += [(f"morpho.{n}", "morphosyntactic") for n in MORPHO_FEATURES]
    entries += [(f"lex.{n}", "lexical") for n in lexical_feature_names(bundle)]
    entries += [(f"ngram.{n}", "ngram") for n in ngram_feature_names()]
    entries += [(f"read.{n}", "readability") for n in READABILITY_FEATURES]
    entries += [(f"lexicon.{n}", "lexicon") for n in lexicon_feature_names(bundle)]
    ids = [fid for fid, _ in entries]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate feature ids in registry")
    return entries


def default_mask_ids() -> list:
    text = importlib_resources.files("anxpipe").joinpath("data/default_mask.json").read_text("utf-8")
    return json.loads(text)


def build_registry(bundle: ResourceBundle, mask_ids: list | None = None) -> FeatureRegistry:
    entries = tuple(_entry_names(bundle))
    all_ids = {fid for fid, _ in entries}
    if mask_ids is None:
        try:
            candidate = default_mask_ids()
        except FileNotFoundError:
            candidate = None
        mask_ids = candidate if candidate and set(candidate) <= all_ids else None
        if mask_ids is None:
            mask = np.ones(len(entries), dtype=bool)
            return FeatureRegistry(entries=entries, selection_mask=mask)
    missing = [fid for fid in mask_ids if fid not in all_ids]
    if missing:
        raise ValueError(f"mask names unknown features: {missing[:5]}")
    chosen = set(mask_ids)
    mask = np.array([fid in chosen for fid, _ in entries], dtype=bool)
    return FeatureRegistry(entries=entries, selection_mask=mask)
