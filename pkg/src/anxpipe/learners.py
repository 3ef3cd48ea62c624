"""From-scratch learners shared by the stacking meta-layer and feature selection.

All four are deterministic given their inputs:

* logistic regression: full-batch gradient descent on L2-regularized
  log-loss (lambda 1e-4, 500 epochs, learning rate 0.1);
* ridge: closed-form (X'X + lambda I)^-1 X'y on +/-1 targets, lambda 1.0,
  decision threshold at margin 0;
* linear SVM: full-batch subgradient descent on hinge loss + L2;
* gradient boosting: depth-1 regression stumps on the logistic loss,
  200 rounds, shrinkage 0.1, initial score at the base-rate log odds.

Margin-based learners report sigmoid(margin) as their probability, which
keeps the 0.5 probability threshold identical to the margin-0 decision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LearnerError",
    "sigmoid",
    "fit_logistic",
    "logistic_margin",
    "fit_ridge",
    "fit_linear_svm",
    "GradientBoosting",
    "fit_gradient_boosting",
]


class LearnerError(ValueError):
    pass


def sigmoid(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _check_binary(y: np.ndarray) -> None:
    classes = np.unique(y)
    if classes.size < 2:
        raise LearnerError("training labels contain a single class")


def fit_logistic(
    x: np.ndarray,
    y: np.ndarray,
    l2: float = 1e-4,
    epochs: int = 500,
    lr: float = 0.1,
) -> tuple[np.ndarray, float]:
    """Returns (weights, intercept)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_binary(y)
    n, f = x.shape
    w = np.zeros(f)
    b = 0.0
    for _ in range(epochs):
        p = sigmoid(x @ w + b)
        err = p - y
        gw = x.T @ err / n + 2.0 * l2 * w
        gb = float(err.mean())
        w -= lr * gw
        b -= lr * gb
    return w, b


def logistic_margin(x: np.ndarray, w: np.ndarray, b: float) -> np.ndarray:
    return np.asarray(x, dtype=np.float64) @ w + b


def fit_ridge(x: np.ndarray, y: np.ndarray, l2: float = 1.0) -> tuple[np.ndarray, float]:
    """Closed-form ridge on +/-1 targets with an unpenalized intercept.

    Centering columns and targets before solving (X'X + lambda I) w = X'y
    leaves the intercept unshrunk, so infinite lambda degrades to the
    majority class rather than to an arbitrary side of an origin-crossing
    hyperplane. Returns (weights, intercept); decision threshold is margin 0.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_binary(y)
    targets = 2.0 * y - 1.0
    x_mean = x.mean(axis=0)
    t_mean = targets.mean()
    xc = x - x_mean
    tc = targets - t_mean
    f = x.shape[1]
    gram = xc.T @ xc + l2 * np.eye(f)
    rhs = xc.T @ tc
    try:
        w = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        w = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    intercept = float(t_mean - x_mean @ w)
    return w, intercept


def fit_linear_svm(
    x: np.ndarray,
    y: np.ndarray,
    l2: float = 1e-4,
    epochs: int = 500,
    lr: float = 0.1,
) -> tuple[np.ndarray, float]:
    """Batch subgradient descent on hinge loss + L2; returns (weights, bias)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_binary(y)
    targets = 2.0 * y - 1.0
    n, f = x.shape
    w = np.zeros(f)
    b = 0.0
    for _ in range(epochs):
        margins = targets * (x @ w + b)
        active = margins < 1.0
        gw = -(x[active].T @ targets[active]) / n + 2.0 * l2 * w
        gb = -float(targets[active].sum()) / n
        w -= lr * gw
        b -= lr * gb
    return w, b


@dataclass(frozen=True)
class _Stump:
    feature: int
    threshold: float
    left_value: float
    right_value: float

    def predict(self, x: np.ndarray) -> np.ndarray:
        return np.where(
            x[:, self.feature] <= self.threshold, self.left_value, self.right_value
        )


def _fit_stump(x: np.ndarray, residual: np.ndarray, order: list[np.ndarray]) -> _Stump:
    """Least-squares stump over all midpoint thresholds, via prefix sums."""
    n, f = x.shape
    total = residual.sum()
    best = (np.inf, 0, 0.0, residual.mean(), residual.mean())
    for j in range(f):
        idx = order[j]
        xs = x[idx, j]
        rs = residual[idx]
        csum = np.cumsum(rs)
        counts = np.arange(1, n + 1, dtype=np.float64)
        valid = xs[:-1] < xs[1:]
        if not valid.any():
            continue
        left_sum = csum[:-1]
        left_cnt = counts[:-1]
        right_sum = total - left_sum
        right_cnt = n - left_cnt
        # SSE decomposition: minimizing SSE == maximizing sum_g^2/n_g per side
        score = left_sum**2 / left_cnt + right_sum**2 / right_cnt
        score[~valid] = -np.inf
        k = int(np.argmax(score))
        if -score[k] < best[0]:
            thr = 0.5 * (xs[k] + xs[k + 1])
            best = (
                -score[k],
                j,
                thr,
                left_sum[k] / left_cnt[k],
                right_sum[k] / right_cnt[k],
            )
        # ties keep the earliest feature / threshold for determinism
    _, j, thr, lv, rv = best
    return _Stump(feature=j, threshold=thr, left_value=lv, right_value=rv)


@dataclass
class GradientBoosting:
    base_score: float
    shrinkage: float
    stumps: list = field(default_factory=list)
    train_loss: list = field(default_factory=list)

    def decision(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        score = np.full(x.shape[0], self.base_score)
        for stump in self.stumps:
            score += self.shrinkage * stump.predict(x)
        return score


def fit_gradient_boosting(
    x: np.ndarray,
    y: np.ndarray,
    rounds: int = 200,
    shrinkage: float = 0.1,
) -> GradientBoosting:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_binary(y)
    rate = float(y.mean())
    model = GradientBoosting(
        base_score=float(np.log(rate / (1.0 - rate))), shrinkage=shrinkage
    )
    order = [np.argsort(x[:, j], kind="stable") for j in range(x.shape[1])]
    score = np.full(x.shape[0], model.base_score)
    for _ in range(rounds):
        p = sigmoid(score)
        stump = _fit_stump(x, y - p, order)
        model.stumps.append(stump)
        score += shrinkage * stump.predict(x)
        p = sigmoid(score)
        loss = float(-np.mean(y * np.log(np.maximum(p, 1e-12)) + (1 - y) * np.log(np.maximum(1 - p, 1e-12))))
        model.train_loss.append(loss)
    return model
