"""Exchange file formats bridging the pipeline and external transformer tools.

Token embedding file (TEMB): magic ``TEMB``, version u32 = 1, record count
u64, then per record: id length u32 + id bytes, model-name length u32 +
name bytes, M u32, dim u32, M*dim float32 payload. Little-endian throughout.
Storage is f32; in-memory arrays are f64. Records must satisfy 1 <= M <= 512
and dim = 768; every size field is validated against the remaining file
length before any payload allocation.

Prediction file: CSV with header ``post_id,prob_positive``, probabilities in
[0, 1], unique post ids.
"""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EmbeddingSequence",
    "BasePredictionSet",
    "ExchangeError",
    "write_embeddings",
    "read_embeddings",
    "write_predictions",
    "read_predictions",
    "EMBED_DIM",
    "MAX_TOKENS",
]

MAGIC = b"TEMB"
VERSION = 1
EMBED_DIM = 768
MAX_TOKENS = 512
MAX_ID_LEN = 1 << 16


class ExchangeError(ValueError):
    """Malformed exchange file or invalid payload."""


@dataclass(frozen=True)
class EmbeddingSequence:
    post_id: str
    model_name: str
    vectors: np.ndarray  # (M, 768) float64 in memory

    @property
    def token_count(self) -> int:
        return self.vectors.shape[0]

    def validate(self) -> None:
        if self.vectors.ndim != 2 or self.vectors.shape[1] != EMBED_DIM:
            raise ExchangeError(
                f"unexpected embedding dim {self.vectors.shape[-1]} (want {EMBED_DIM})"
            )
        if not 1 <= self.vectors.shape[0] <= MAX_TOKENS:
            raise ExchangeError(
                f"token count {self.vectors.shape[0]} outside [1, {MAX_TOKENS}]"
            )
        if not np.all(np.isfinite(self.vectors)):
            raise ExchangeError(f"non-finite embedding values for {self.post_id!r}")


@dataclass(frozen=True)
class BasePredictionSet:
    model_id: str
    entries: dict  # post_id -> prob_positive

    def prob_for(self, post_id: str) -> float:
        if post_id not in self.entries:
            raise ExchangeError(
                f"model {self.model_id!r} has no prediction for post {post_id!r}"
            )
        return self.entries[post_id]


def write_embeddings(seqs, path) -> None:
    for seq in seqs:
        seq.validate()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IQ", VERSION, len(seqs)))
        for seq in seqs:
            id_bytes = seq.post_id.encode("utf-8")
            name_bytes = seq.model_name.encode("utf-8")
            fh.write(struct.pack("<I", len(id_bytes)))
            fh.write(id_bytes)
            fh.write(struct.pack("<I", len(name_bytes)))
            fh.write(name_bytes)
            m = seq.vectors.shape[0]
            fh.write(struct.pack("<II", m, EMBED_DIM))
            fh.write(np.ascontiguousarray(seq.vectors, dtype="<f4").tobytes())


def read_embeddings(path) -> list[EmbeddingSequence]:
    with open(path, "rb") as fh:
        data = fh.read()
    pos = 0

    def take(count: int, what: str) -> bytes:
        nonlocal pos
        if count < 0 or pos + count > len(data):
            raise ExchangeError(f"truncated embedding file while reading {what}")
        chunk = data[pos : pos + count]
        pos += count
        return chunk

    if take(4, "magic") != MAGIC:
        raise ExchangeError("bad embedding-file magic")
    version, count = struct.unpack("<IQ", take(12, "header"))
    if version != VERSION:
        raise ExchangeError(f"unsupported embedding-file version {version}")
    seqs = []
    for _ in range(count):
        (id_len,) = struct.unpack("<I", take(4, "id length"))
        if id_len > MAX_ID_LEN:
            raise ExchangeError(f"id length {id_len} exceeds limit")
        post_id = take(id_len, "post id").decode("utf-8")
        (name_len,) = struct.unpack("<I", take(4, "name length"))
        if name_len > MAX_ID_LEN:
            raise ExchangeError(f"name length {name_len} exceeds limit")
        model_name = take(name_len, "model name").decode("utf-8")
        m, dim = struct.unpack("<II", take(8, "record shape"))
        if dim != EMBED_DIM:
            raise ExchangeError(f"unexpected embedding dim {dim} (want {EMBED_DIM})")
        if not 1 <= m <= MAX_TOKENS:
            raise ExchangeError(f"token count {m} outside [1, {MAX_TOKENS}]")
        payload = take(m * dim * 4, "vector payload")
        vectors = (
            np.frombuffer(payload, dtype="<f4").reshape(m, dim).astype(np.float64)
        )
        seqs.append(
            EmbeddingSequence(post_id=post_id, model_name=model_name, vectors=vectors)
        )
    return seqs


def write_predictions(predictions, path) -> None:
    """Write ``post_id,prob_positive`` rows; accepts Prediction-like objects."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["post_id", "prob_positive"])
        for pred in predictions:
            writer.writerow([pred.post_id, repr(float(pred.prob_positive))])


def read_predictions(path, model_id: str = "") -> BasePredictionSet:
    entries: dict = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["post_id", "prob_positive"]:
            raise ExchangeError("prediction CSV must start with header post_id,prob_positive")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 2:
                raise ExchangeError(f"line {line_no}: expected post_id,prob_positive")
            post_id = row[0]
            try:
                prob = float(row[1])
            except ValueError as exc:
                raise ExchangeError(f"line {line_no}: bad probability {row[1]!r}") from exc
            if not 0.0 <= prob <= 1.0:
                raise ExchangeError(
                    f"line {line_no}: probability {prob!r} outside [0, 1]"
                )
            if post_id in entries:
                raise ExchangeError(f"line {line_no}: duplicate post id {post_id!r}")
            entries[post_id] = prob
    return BasePredictionSet(model_id=model_id or str(path), entries=entries)
