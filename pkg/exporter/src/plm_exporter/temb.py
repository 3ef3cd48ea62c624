"""TEMB embedding-file writer (and minimal reader for self-checks).

Format: magic ``TEMB``, version u32 = 1, record count u64; per record:
id length u32 + id bytes, model-name length u32 + name bytes, M u32,
dim u32, M*dim float32 payload. Little-endian. Constraints: 1 <= M <= 512,
dim = 768.
"""

from __future__ import annotations

import struct

import numpy as np

MAGIC = b"TEMB"
VERSION = 1
EMBED_DIM = 768
MAX_TOKENS = 512


class TembError(ValueError):
    pass


def write_temb(records, path) -> None:
    """records: iterable of (post_id, model_name, ndarray (M, 768))."""
    records = list(records)
    for post_id, _name, vectors in records:
        if vectors.ndim != 2 or vectors.shape[1] != EMBED_DIM:
            raise TembError(
                f"{post_id}: unexpected embedding dim {vectors.shape[-1]} (want {EMBED_DIM})"
            )
        if not 1 <= vectors.shape[0] <= MAX_TOKENS:
            raise TembError(
                f"{post_id}: token count {vectors.shape[0]} outside [1, {MAX_TOKENS}]"
            )
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IQ", VERSION, len(records)))
        for post_id, name, vectors in records:
            id_bytes = post_id.encode("utf-8")
            name_bytes = name.encode("utf-8")
            fh.write(struct.pack("<I", len(id_bytes)))
            fh.write(id_bytes)
            fh.write(struct.pack("<I", len(name_bytes)))
            fh.write(name_bytes)
            fh.write(struct.pack("<II", vectors.shape[0], EMBED_DIM))
            fh.write(np.ascontiguousarray(vectors, dtype="<f4").tobytes())


def read_temb(path):
    """Self-check reader; returns [(post_id, model_name, (M, 768) f32 array)]."""
    with open(path, "rb") as fh:
        data = fh.read()
    pos = 0

    def take(count, what):
        nonlocal pos
        if pos + count > len(data):
            raise TembError(f"truncated file while reading {what}")
        chunk = data[pos : pos + count]
        pos += count
        return chunk

    if take(4, "magic") != MAGIC:
        raise TembError("bad magic")
    version, count = struct.unpack("<IQ", take(12, "header"))
    if version != VERSION:
        raise TembError(f"unsupported version {version}")
    out = []
    for _ in range(count):
        (id_len,) = struct.unpack("<I", take(4, "id length"))
        post_id = take(id_len, "post id").decode("utf-8")
        (name_len,) = struct.unpack("<I", take(4, "name length"))
        name = take(name_len, "model name").decode("utf-8")
        m, dim = struct.unpack("<II", take(8, "shape"))
        if dim != EMBED_DIM or not 1 <= m <= MAX_TOKENS:
            raise TembError(f"bad record shape ({m}, {dim})")
        vectors = np.frombuffer(take(m * dim * 4, "payload"), dtype="<f4").reshape(m, dim)
        out.append((post_id, name, vectors))
    return out
