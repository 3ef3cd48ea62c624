"""Recursive feature elimination with the in-repo logistic learner.

Each round fits logistic regression on the surviving (internally
standardized) features and drops the ``step`` features with the smallest
absolute coefficients, stopping exactly at ``target_k`` survivors. Dead
columns (zero variance) standardize to zero and fall out first.
"""

from __future__ import annotations

import numpy as np

from ..learners import LearnerError, fit_logistic

__all__ = ["recursive_feature_elimination"]


def recursive_feature_elimination(
    x: np.ndarray,
    y: np.ndarray,
    target_k: int,
    step: int = 1,
    epochs: int = 200,
    lr: float = 0.5,
    l2: float = 1e-4,
) -> np.ndarray:
    """Boolean mask with exactly ``target_k`` True entries."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("feature matrix must be 2-D")
    n, f = x.shape
    if not 0 < target_k < f:
        raise ValueError(f"target_k must be in (0, {f}), got {target_k}")
    if step < 1:
        raise ValueError("step must be >= 1")
    if np.unique(y).size < 2:
        raise LearnerError("labels contain a single class")

    mean = x.mean(axis=0)
    std = x.std(axis=0)
    safe = std >= 1e-12
    xs = np.where(safe, (x - mean) / np.where(safe, std, 1.0), 0.0)

    alive = np.arange(f)
    while alive.size > target_k:
        w, _ = fit_logistic(xs[:, alive], y, l2=l2, epochs=epochs, lr=lr)
        n_drop = min(step, alive.size - target_k)
        ranking = np.argsort(np.abs(w), kind="stable")
        alive = np.delete(alive, ranking[:n_drop])

    mask = np.zeros(f, dtype=bool)
    mask[alive] = True
    return mask
