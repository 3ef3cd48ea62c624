#!/usr/bin/env python3
"""Regenerate the default 168-feature selection mask.

Runs recursive feature elimination over the full 460-entry registry on the
shipped demo corpus (window rows labeled with their post's label), seed-free
and deterministic, then writes the surviving feature ids to
``src/anxpipe/data/default_mask.json``.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import numpy as np

PKG_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PKG_ROOT / "src"))

from anxpipe.corpus import clean_posts, load_posts
from anxpipe.linguafeat import (
    build_registry,
    extract_feature_matrix,
    load_resources,
    recursive_feature_elimination,
    sample_resources_path,
)

TARGET = 168
STEP = 10


def main() -> None:
    bundle = load_resources(sample_resources_path())
    registry = build_registry(bundle, mask_ids=None)
    if registry.n_selected != len(registry.entries):
        registry = build_registry(bundle, mask_ids=registry.feature_ids)
    posts = clean_posts(load_posts(PKG_ROOT / "src/anxpipe/data/demo_corpus.jsonl"))

    rows, labels = [], []
    for post in posts:
        fm = extract_feature_matrix(post, registry, bundle, seed=42)
        rows.append(fm.rows)
        labels.extend([post.label] * fm.rows.shape[0])
    x = np.vstack(rows)
    y = np.array(labels, dtype=np.float64)
    print(f"design matrix {x.shape}, positives {int(y.sum())}")

    t0 = time.time()
    mask = recursive_feature_elimination(x, y, target_k=TARGET, step=STEP)
    print(f"RFE done in {time.time() - t0:.1f}s, selected {int(mask.sum())}")

    ids = [fid for fid, keep in zip(registry.feature_ids, mask) if keep]
    out = PKG_ROOT / "src/anxpipe/data/default_mask.json"
    out.write_text(json.dumps(ids, indent=0) + "\n", encoding="utf-8")
    by_family = {}
    for fid in ids:
        fam = fid.split(".", 1)[0]
        by_family[fam] = by_family.get(fam, 0) + 1
    print(f"wrote {len(ids)} ids to {out}; per family: {by_family}")


if __name__ == "__main__":
    main()
