"""NNCK tensor-file round trips and hostile-file behavior."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anxpipe.neuralcore import CheckpointError, read_tensors, write_tensors


def random_tensors(seed):
    rng = np.random.default_rng(seed)
    tensors = {}
    for i in range(rng.integers(1, 5)):
        rank = int(rng.integers(1, 4))
        shape = tuple(int(d) for d in rng.integers(1, 5, size=rank))
        tensors[f"t{i}.{'x' * int(rng.integers(1, 4))}"] = rng.normal(size=shape)
    return tensors


class TestRoundTrip:
    def test_bit_exact(self, tmp_path):
        tensors = random_tensors(0)
        path = tmp_path / "a.nnck"
        write_tensors(tensors, path)
        back = read_tensors(path)
        assert set(back) == set(tensors)
        for name in tensors:
            assert np.array_equal(back[name], tensors[name])
            assert back[name].dtype == np.float64

    def test_save_load_save_identical_bytes(self, tmp_path):
        tensors = random_tensors(1)
        a = tmp_path / "a.nnck"
        b = tmp_path / "b.nnck"
        write_tensors(tensors, a)
        write_tensors(read_tensors(a), b)
        assert a.read_bytes() == b.read_bytes()

    @given(st.integers(0, 10_000))
    @settings(max_examples=100, deadline=None)
    def test_property_roundtrip(self, tmp_path_factory, seed):
        path = tmp_path_factory.mktemp("nnck") / "t.nnck"
        tensors = random_tensors(seed)
        write_tensors(tensors, path)
        back = read_tensors(path)
        for name in tensors:
            assert np.array_equal(back[name], tensors[name])


class TestHostileFiles:
    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.nnck"
        path.write_bytes(b"XXXX" + b"\x00" * 16)
        with pytest.raises(CheckpointError, match="magic"):
            read_tensors(path)

    def test_bad_version(self, tmp_path):
        path = tmp_path / "bad.nnck"
        path.write_bytes(b"NNCK" + (99).to_bytes(4, "little") + (0).to_bytes(4, "little"))
        with pytest.raises(CheckpointError, match="version"):
            read_tensors(path)

    def test_truncation_never_overallocates(self, tmp_path):
        full = tmp_path / "full.nnck"
        write_tensors({"w": np.arange(64.0).reshape(8, 8)}, full)
        data = full.read_bytes()
        for cut in range(0, len(data), 7):
            part = tmp_path / "part.nnck"
            part.write_bytes(data[:cut])
            with pytest.raises(CheckpointError):
                read_tensors(part)

    def test_huge_dims_rejected_before_allocation(self, tmp_path):
        import struct

        path = tmp_path / "huge.nnck"
        payload = (
            b"NNCK"
            + struct.pack("<II", 1, 1)
            + struct.pack("<I", 1)
            + b"w"
            + struct.pack("<I", 2)
            + struct.pack("<QQ", 1 << 60, 1 << 60)
        )
        path.write_bytes(payload)
        with pytest.raises(CheckpointError, match="truncated"):
            read_tensors(path)

    def test_fuzz_random_bytes(self, tmp_path):
        rng = np.random.default_rng(3)
        for i in range(200):
            blob = bytes(rng.integers(0, 256, size=int(rng.integers(0, 120)), dtype=np.uint8).tolist())
            path = tmp_path / "fuzz.nnck"
            path.write_bytes(b"NNCK" + blob if i % 2 else blob)
            try:
                read_tensors(path)
            except (CheckpointError, UnicodeDecodeError):
                pass  # rejection is fine; crashes and overallocation are not
