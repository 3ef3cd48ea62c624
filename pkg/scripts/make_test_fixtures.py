#!/usr/bin/env python3
"""Regenerate the committed test fixtures.

* tests/fixtures/demo40.temb: synthetic token embeddings for the first 40
  demo posts. Positive posts get a shifted mean so the hybrid model's token
  branch has signal to learn. Seed 23.
* tests/fixtures/m1_preds.csv, m2_preds.csv: synthetic base-model
  probabilities for the whole demo corpus (error rates 15% and 25%),
  standing in for externally fine-tuned transformer outputs. Seed 29.

These files keep the primary test suite self-contained: nothing here needs
the exporter tool or a pretrained checkpoint.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

PKG_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PKG_ROOT / "src"))

from anxpipe.corpus import load_posts
from anxpipe.exchange import EmbeddingSequence, write_embeddings

FIXTURES = PKG_ROOT / "tests" / "fixtures"


def main() -> None:
    posts = load_posts(PKG_ROOT / "src/anxpipe/data/demo_corpus.jsonl")
    FIXTURES.mkdir(parents=True, exist_ok=True)

    rng = np.random.default_rng(23)
    seqs = []
    for post in posts[:40]:
        m = int(rng.integers(3, 8))
        base = rng.normal(0.0, 0.4, size=(m, 768))
        shift = 0.6 if post.label == 1 else -0.6
        base[:, :32] += shift
        seqs.append(
            EmbeddingSequence(post_id=post.id, model_name="fixture-encoder", vectors=base)
        )
    write_embeddings(seqs, FIXTURES / "demo40.temb")
    print(f"wrote {len(seqs)} embedding records -> demo40.temb")

    rng = np.random.default_rng(29)
    for name, error_rate in (("m1_preds.csv", 0.15), ("m2_preds.csv", 0.25)):
        lines = ["post_id,prob_positive"]
        for post in posts:
            correct = rng.random() >= error_rate
            target = post.label if correct else 1 - post.label
            prob = rng.uniform(0.55, 0.95) if target == 1 else rng.uniform(0.05, 0.45)
            lines.append(f"{post.id},{prob:.6f}")
        (FIXTURES / name).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {len(posts)} rows -> {name}")


if __name__ == "__main__":
    main()
