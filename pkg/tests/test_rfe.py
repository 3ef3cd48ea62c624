import numpy as np
import pytest

from anxpipe.learners import LearnerError
from anxpipe.linguafeat import recursive_feature_elimination


def informative_design(seed, n=200, informative=3, noise=7):
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 2, size=n).astype(np.float64)
    signal = np.column_stack(
        [y + rng.normal(0, 0.3, size=n) for _ in range(informative)]
    )
    junk = rng.normal(size=(n, noise))
    return np.column_stack([signal, junk]), y


class TestRFE:
    def test_single_step_drops_one(self):
        x, y = informative_design(0)
        mask = recursive_feature_elimination(x, y, target_k=x.shape[1] - 1, step=1)
        assert mask.sum() == x.shape[1] - 1

    def test_mask_cardinality_always_target(self):
        x, y = informative_design(1)
        for k in (1, 3, 5, 9):
            mask = recursive_feature_elimination(x, y, target_k=k, step=2)
            assert int(mask.sum()) == k

    def test_recovers_informative_majority(self):
        hits = 0
        for seed in range(10):
            x, y = informative_design(seed, n=300, informative=5, noise=5)
            mask = recursive_feature_elimination(x, y, target_k=5, step=1)
            if mask[:5].sum() >= 4:
                hits += 1
        assert hits >= 8

    def test_deterministic(self):
        x, y = informative_design(2)
        a = recursive_feature_elimination(x, y, target_k=4, step=2)
        b = recursive_feature_elimination(x, y, target_k=4, step=2)
        assert np.array_equal(a, b)

    def test_single_class_rejected(self):
        x = np.random.default_rng(0).normal(size=(20, 5))
        with pytest.raises(LearnerError):
            recursive_feature_elimination(x, np.ones(20), target_k=2)

    def test_bad_target(self):
        x, y = informative_design(3)
        with pytest.raises(ValueError):
            recursive_feature_elimination(x, y, target_k=x.shape[1])

    def test_dead_columns_dropped_first(self):
        x, y = informative_design(4, n=150, informative=2, noise=2)
        x = np.column_stack([x, np.full(150, 3.14)])  # constant column
        mask = recursive_feature_elimination(x, y, target_k=x.shape[1] - 1, step=1)
        assert not mask[-1]
