"""NNCK checkpoint format: named float64 tensors, little-endian.

Layout: magic ``NNCK``, version u32, tensor count u32, then per tensor:
name length u32, UTF-8 name, rank u32, dims (u64 each), payload f64.
All integers little-endian. Every size field is validated against the
remaining file length before any payload allocation, so truncated or
hostile files fail fast instead of overallocating.
"""

from __future__ import annotations

import struct

import numpy as np

__all__ = ["CheckpointError", "write_tensors", "read_tensors", "MAGIC", "VERSION"]

MAGIC = b"NNCK"
VERSION = 1
MAX_NAME_LEN = 1 << 16
MAX_RANK = 8


class CheckpointError(ValueError):
    """Unreadable or malformed checkpoint file."""


def write_tensors(tensors: dict, path) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", VERSION, len(tensors)))
        for name, arr in tensors.items():
            arr = np.ascontiguousarray(arr, dtype=np.float64)
            encoded = name.encode("utf-8")
            fh.write(struct.pack("<I", len(encoded)))
            fh.write(encoded)
            fh.write(struct.pack("<I", arr.ndim))
            fh.write(struct.pack(f"<{arr.ndim}Q", *arr.shape))
            fh.write(arr.astype("<f8").tobytes())


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, count: int, what: str) -> bytes:
        if count < 0 or self.pos + count > len(self.data):
            raise CheckpointError(f"truncated checkpoint while reading {what}")
        chunk = self.data[self.pos : self.pos + count]
        self.pos += count
        return chunk

    def u32(self, what: str) -> int:
        return struct.unpack("<I", self.take(4, what))[0]

    def u64(self, what: str) -> int:
        return struct.unpack("<Q", self.take(8, what))[0]


def read_tensors(path) -> dict:
    with open(path, "rb") as fh:
        data = fh.read()
    r = _Reader(data)
    if r.take(4, "magic") != MAGIC:
        raise CheckpointError("bad checkpoint magic")
    version = r.u32("version")
    if version != VERSION:
        raise CheckpointError(f"unsupported checkpoint version {version}")
    count = r.u32("tensor count")
    tensors: dict = {}
    for _ in range(count):
        name_len = r.u32("name length")
        if name_len > MAX_NAME_LEN:
            raise CheckpointError(f"tensor name length {name_len} exceeds limit")
        name = r.take(name_len, "tensor name").decode("utf-8")
        rank = r.u32("rank")
        if rank > MAX_RANK:
            raise CheckpointError(f"tensor rank {rank} exceeds limit")
        dims = tuple(r.u64("dims") for _ in range(rank))
        elements = 1
        for d in dims:
            elements *= d
        payload_bytes = elements * 8
        if r.pos + payload_bytes > len(data):
            raise CheckpointError(f"truncated checkpoint while reading {name!r} payload")
        payload = r.take(payload_bytes, "payload")
        tensors[name] = np.frombuffer(payload, dtype="<f8").reshape(dims).copy()
    return tensors
