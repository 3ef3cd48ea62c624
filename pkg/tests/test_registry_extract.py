"""Registry composition, windowing, standardization, matrix file round trips."""

import numpy as np
import pytest

from anxpipe.corpus import Post, clean_text
from anxpipe.linguafeat import (
    SegmentationError,
    apply_standardizer,
    build_registry,
    extract_feature_matrix,
    fit_standardizer,
    load_resources,
    read_feature_matrix,
    sample_resources_path,
    write_feature_matrix,
)
from anxpipe.linguafeat.extract import FeatureMatrix, Standardizer


@pytest.fixture(scope="module")
def bundle():
    return load_resources(sample_resources_path())


@pytest.fixture(scope="module")
def registry(bundle):
    return build_registry(bundle)


@pytest.fixture(scope="module")
def full_registry(bundle):
    reg = build_registry(bundle)
    return build_registry(bundle, mask_ids=reg.feature_ids)


def post(text, post_id="p1"):
    return Post(id=post_id, raw_text=text, clean_text=clean_text(text))


class TestRegistry:
    def test_universe_size(self, full_registry):
        assert len(full_registry.entries) == 460
        assert full_registry.family_sizes() == {
            "morphosyntactic": 19,
            "lexical": 77,
            "ngram": 25,
            "readability": 14,
            "lexicon": 325,
        }

    def test_default_mask_target(self, registry):
        assert registry.n_selected == 168

    def test_ids_unique_and_ordered(self, full_registry):
        ids = full_registry.feature_ids
        assert len(set(ids)) == len(ids)
        assert ids[0].startswith("morpho.")
        assert ids[-1].startswith("lexicon.")

    def test_unknown_mask_id_rejected(self, bundle):
        with pytest.raises(ValueError, match="unknown features"):
            build_registry(bundle, mask_ids=["nope.missing"])


class TestWindows:
    def test_identity_windowing(self, registry, bundle):
        text = "One here. Two here. Three here. Four here. Five here."
        fm = extract_feature_matrix(post(text), registry, bundle, window_len=1, stride=1)
        assert fm.rows.shape == (5, 168)

    def test_partials_kept(self, registry, bundle):
        text = "One here. Two here. Three here. Four here. Five here."
        fm = extract_feature_matrix(post(text), registry, bundle, window_len=3, stride=1)
        assert fm.rows.shape[0] == 5  # starts 0..4, trailing partial spans kept

    def test_stride(self, registry, bundle):
        text = "One here. Two here. Three here. Four here. Five here."
        fm = extract_feature_matrix(post(text), registry, bundle, window_len=2, stride=2)
        assert fm.rows.shape[0] == 3

    def test_row_width_is_selection(self, registry, bundle):
        fm = extract_feature_matrix(post("A calm day."), registry, bundle)
        assert fm.rows.shape[1] == registry.n_selected == 168

    def test_empty_post_errors(self, registry, bundle):
        with pytest.raises(SegmentationError, match="no sentences"):
            extract_feature_matrix(post(""), registry, bundle)

    def test_deterministic(self, registry, bundle):
        p = post("I worry because the crowd watches. My chest gets tight.")
        a = extract_feature_matrix(p, registry, bundle, seed=42)
        b = extract_feature_matrix(p, registry, bundle, seed=42)
        assert np.array_equal(a.rows, b.rows)

    def test_wordless_window_finite(self, registry, bundle):
        fm = extract_feature_matrix(post("?! ... ??"), registry, bundle)
        assert np.all(np.isfinite(fm.rows))


class TestStandardizer:
    def make_matrix(self, rows, post_id="p"):
        rows = np.asarray(rows, dtype=np.float64)
        ids = tuple(f"f{i}" for i in range(rows.shape[1]))
        return FeatureMatrix(post_id=post_id, rows=rows, feature_ids=ids)

    def test_hand_computed(self):
        st = fit_standardizer([self.make_matrix([[1.0], [3.0]])])
        assert st.mean[0] == 2.0
        assert st.std[0] == 1.0  # population sigma
        out = apply_standardizer(self.make_matrix([[1.0], [3.0]]), st)
        assert out.rows[:, 0].tolist() == [-1.0, 1.0]
        assert out.standardized

    def test_constant_column_zeroed(self):
        st = fit_standardizer([self.make_matrix([[5.0, 1.0], [5.0, 2.0]])])
        out = apply_standardizer(self.make_matrix([[5.0, 1.5]]), st)
        assert out.rows[0, 0] == 0.0

    def test_training_mean_centered(self):
        rng = np.random.default_rng(3)
        matrices = [self.make_matrix(rng.normal(size=(4, 6)), f"p{i}") for i in range(5)]
        st = fit_standardizer(matrices)
        stacked = np.vstack([apply_standardizer(m, st).rows for m in matrices])
        assert np.allclose(stacked.mean(axis=0), 0.0, atol=1e-9)

    def test_feature_id_mismatch(self):
        st = fit_standardizer([self.make_matrix([[1.0], [2.0]])])
        other = FeatureMatrix("q", np.zeros((1, 1)), ("different",))
        with pytest.raises(ValueError, match="mismatch"):
            apply_standardizer(other, st)

    def test_roundtrip_dict(self):
        st = fit_standardizer([self.make_matrix([[1.0, 2.0], [3.0, 4.0]])])
        back = Standardizer.from_dict(st.to_dict())
        assert back.feature_ids == st.feature_ids
        assert np.array_equal(back.mean, st.mean)


class TestMatrixFile:
    def test_roundtrip_exact(self, tmp_path, registry, bundle):
        fm = extract_feature_matrix(
            post("I worry because the crowd watches. My chest gets tight."),
            registry,
            bundle,
        )
        path = tmp_path / "m.cmfx"
        write_feature_matrix(fm, path)
        back = read_feature_matrix(path)
        assert back.post_id == fm.post_id
        assert back.feature_ids == fm.feature_ids
        assert np.array_equal(back.rows, fm.rows)  # repr round-trips exactly

    def test_header_format(self, tmp_path):
        fm = FeatureMatrix("abc", np.array([[1.5, -2.0]]), ("x", "y"))
        path = tmp_path / "m.cmfx"
        write_feature_matrix(fm, path)
        first = path.read_text().splitlines()[0]
        assert first == "#CMFX v1 post_id=abc n=1 f=2"

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "m.cmfx"
        path.write_text("#WRONG v1 post_id=a n=1 f=1\n[]\n")
        with pytest.raises(ValueError, match="header"):
            read_feature_matrix(path)
