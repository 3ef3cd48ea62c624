"""Embedding and prediction export from transformer checkpoints.

Embeddings: last hidden state of the base encoder, truncated to 512 tokens
(truncations logged to a sidecar file, not errors), written as f32 TEMB
records in eval mode so repeated runs are byte-identical.

Predictions: sequence-classification probabilities as post_id,prob_positive
CSV rows, optionally after a small seeded fine-tuning loop on a labeled
corpus. Output files are written atomically (temp file + rename).
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from transformers import AutoModel, AutoModelForSequenceClassification, AutoTokenizer

from .temb import EMBED_DIM, MAX_TOKENS, TembError, write_temb

__all__ = ["ExportError", "FineTuneSpec", "load_corpus", "export_embeddings", "export_predictions"]


class ExportError(RuntimeError):
    pass


@dataclass(frozen=True)
class FineTuneSpec:
    train_path: str
    epochs: int = 3
    lr: float = 2e-5
    seed: int = 42
    batch_size: int = 8


def load_corpus(path):
    """JSONL rows with id, text, optional label."""
    posts = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ExportError(f"line {line_no}: invalid JSON ({exc.msg})") from exc
            if "id" not in row or "text" not in row:
                raise ExportError(f"line {line_no}: rows need 'id' and 'text'")
            post_id = str(row["id"])
            if post_id in seen:
                raise ExportError(f"line {line_no}: duplicate post id {post_id!r}")
            seen.add(post_id)
            label = row.get("label")
            posts.append((post_id, str(row["text"]), None if label is None else int(label)))
    return posts


def _atomic_write(path, write_fn) -> None:
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent or ".", suffix=".tmp")
    os.close(fd)
    try:
        write_fn(tmp_name)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def _encode(tokenizer, text: str, max_tokens: int):
    return tokenizer(
        text,
        return_tensors="pt",
        truncation=True,
        max_length=max_tokens,
        return_overflowing_tokens=False,
    )


def export_embeddings(model_ref, corpus_path, out_path, max_tokens: int = MAX_TOKENS, model_name: str | None = None):
    """Write one TEMB record per post; returns (record count, truncated ids)."""
    if max_tokens > MAX_TOKENS:
        raise ExportError(f"max_tokens {max_tokens} exceeds format limit {MAX_TOKENS}")
    posts = load_corpus(corpus_path)
    tokenizer = AutoTokenizer.from_pretrained(model_ref)
    model = AutoModel.from_pretrained(model_ref)
    model.eval()
    hidden = getattr(model.config, "hidden_size", None)
    if hidden != EMBED_DIM:
        raise ExportError(f"model hidden size {hidden} != required {EMBED_DIM}")
    name = model_name or str(model_ref)

    records = []
    truncated = []
    with torch.no_grad():
        for post_id, text, _label in posts:
            full_len = len(tokenizer(text)["input_ids"])
            enc = _encode(tokenizer, text, max_tokens)
            if full_len > enc["input_ids"].shape[1]:
                truncated.append(post_id)
            out = model(**enc)
            vectors = out.last_hidden_state[0].numpy().astype(np.float32)
            records.append((post_id, name, vectors))

    try:
        _atomic_write(out_path, lambda tmp: write_temb(records, tmp))
    except TembError as exc:
        raise ExportError(str(exc)) from exc
    if truncated:
        sidecar = Path(str(out_path) + ".truncated.log")
        sidecar.write_text("\n".join(truncated) + "\n", encoding="utf-8")
    return len(records), truncated


def _fine_tune(model, tokenizer, spec: FineTuneSpec, max_tokens: int):
    posts = load_corpus(spec.train_path)
    if any(label is None for _pid, _text, label in posts):
        raise ExportError("fine-tuning needs labels on every training post")
    torch.manual_seed(spec.seed)
    rng = np.random.default_rng(spec.seed)
    optimizer = torch.optim.AdamW(model.parameters(), lr=spec.lr)
    loss_fn = torch.nn.CrossEntropyLoss()
    model.train()
    for _epoch in range(spec.epochs):
        order = rng.permutation(len(posts))
        for start in range(0, len(posts), spec.batch_size):
            batch = [posts[i] for i in order[start : start + spec.batch_size]]
            enc = tokenizer(
                [text for _pid, text, _label in batch],
                return_tensors="pt",
                truncation=True,
                max_length=max_tokens,
                padding=True,
            )
            labels = torch.tensor([label for _pid, _text, label in batch])
            optimizer.zero_grad()
            logits = model(**enc).logits
            loss = loss_fn(logits, labels)
            loss.backward()
            optimizer.step()
    model.eval()


def export_predictions(
    model_ref,
    corpus_path,
    out_path,
    fine_tune: FineTuneSpec | None = None,
    max_tokens: int = MAX_TOKENS,
):
    """Write post_id,prob_positive rows; returns the row count."""
    posts = load_corpus(corpus_path)
    tokenizer = AutoTokenizer.from_pretrained(model_ref)
    model = AutoModelForSequenceClassification.from_pretrained(model_ref, num_labels=2)
    if fine_tune is not None:
        _fine_tune(model, tokenizer, fine_tune, max_tokens)
    model.eval()

    rows = []
    with torch.no_grad():
        for post_id, text, _label in posts:
            enc = _encode(tokenizer, text, max_tokens)
            logits = model(**enc).logits[0]
            prob = torch.softmax(logits, dim=-1)[1].item()
            rows.append((post_id, prob))

    def write_csv(tmp_name):
        with open(tmp_name, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["post_id", "prob_positive"])
            for post_id, prob in rows:
                writer.writerow([post_id, repr(float(prob))])

    _atomic_write(out_path, write_csv)
    return len(rows)
