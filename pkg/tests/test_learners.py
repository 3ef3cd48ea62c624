import numpy as np
import pytest

from anxpipe.learners import (
    LearnerError,
    fit_gradient_boosting,
    fit_linear_svm,
    fit_logistic,
    fit_ridge,
    sigmoid,
)


def separable(seed=0, n=80):
    rng = np.random.default_rng(seed)
    y = (rng.random(n) < 0.5).astype(np.float64)
    x = np.column_stack([y + rng.normal(0, 0.1, n), rng.normal(size=n)])
    return x, y


class TestLogistic:
    def test_separable_reaches_perfect_train_accuracy(self):
        x, y = separable()
        w, b = fit_logistic(x, y)
        pred = (sigmoid(x @ w + b) >= 0.5).astype(float)
        assert (pred == y).all()

    def test_single_class_rejected(self):
        with pytest.raises(LearnerError):
            fit_logistic(np.zeros((5, 2)), np.ones(5))

    def test_deterministic(self):
        x, y = separable(3)
        assert np.array_equal(fit_logistic(x, y)[0], fit_logistic(x, y)[0])


class TestRidge:
    def test_identity_design_reproduces_targets(self):
        w, b = fit_ridge(np.eye(2), np.array([1.0, 0.0]), l2=0.0)
        margins = np.eye(2) @ w + b
        assert np.allclose(margins, [1.0, -1.0])  # the +/-1 targets exactly

    def test_infinite_shrinkage_majority(self):
        rng = np.random.default_rng(1)
        y = np.array([1.0] * 70 + [0.0] * 30)
        x = np.column_stack([y + rng.normal(0, 0.2, 100), rng.random(100)])
        w, b = fit_ridge(x, y, l2=1e9)
        assert np.all(np.abs(w) < 1e-5)
        margins = x @ w + b
        assert (margins >= 0).all()  # everything lands on the majority side

    def test_normal_equations_residual(self):
        # centered normal equations hold to 1e-8
        rng = np.random.default_rng(2)
        x = rng.normal(size=(50, 4))
        y = (rng.random(50) < 0.5).astype(float)
        lam = 1.0
        w, b = fit_ridge(x, y, l2=lam)
        targets = 2 * y - 1
        xc = x - x.mean(axis=0)
        tc = targets - targets.mean()
        residual = xc.T @ xc @ w + lam * w - xc.T @ tc
        assert np.linalg.norm(residual) < 1e-8


class TestLinearSVM:
    def test_separable(self):
        x, y = separable(5)
        w, b = fit_linear_svm(x, y)
        pred = ((x @ w + b) >= 0).astype(float)
        assert (pred == y).mean() == 1.0


class TestGradientBoosting:
    def test_loss_non_increasing(self):
        rng = np.random.default_rng(4)
        x = rng.random((200, 3))
        y = (x[:, 0] + 0.3 * rng.normal(size=200) > 0.5).astype(float)
        model = fit_gradient_boosting(x, y, rounds=120)
        losses = np.array(model.train_loss)
        assert np.all(np.diff(losses) <= 1e-12)

    def test_fits_threshold_rule(self):
        rng = np.random.default_rng(6)
        x = rng.random((300, 2))
        y = (x[:, 1] > 0.6).astype(float)
        model = fit_gradient_boosting(x, y, rounds=100)
        pred = (sigmoid(model.decision(x)) >= 0.5).astype(float)
        assert (pred == y).mean() > 0.97

    def test_deterministic(self):
        rng = np.random.default_rng(7)
        x = rng.random((100, 3))
        y = (x[:, 0] > 0.5).astype(float)
        a = fit_gradient_boosting(x, y, rounds=30).decision(x)
        b = fit_gradient_boosting(x, y, rounds=30).decision(x)
        assert np.array_equal(a, b)

    def test_single_class_rejected(self):
        with pytest.raises(LearnerError):
            fit_gradient_boosting(np.zeros((5, 2)), np.zeros(5))
