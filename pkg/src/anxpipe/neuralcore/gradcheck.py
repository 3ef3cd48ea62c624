"""Central-finite-difference gradient checking over named tensors."""

from __future__ import annotations

import numpy as np

__all__ = ["grad_check"]


def grad_check(
    loss_and_grads,
    params: dict,
    eps: float = 1e-5,
    max_coords: int = 200,
    seed: int = 0,
) -> float:
    """Max relative error between analytic and numeric gradients.

    ``loss_and_grads(params)`` must return ``(loss, grads)`` with grads keyed
    like params. Checks a seeded random subsample of at least ``max_coords``
    coordinates (every coordinate when there are fewer). Relative error is
    |a - n| / max(|a|, |n|, 1e-8).
    """
    _, grads = loss_and_grads(params)
    coords = []
    for name in sorted(params):
        for flat_idx in range(params[name].size):
            coords.append((name, flat_idx))
    rng = np.random.default_rng(seed)
    if len(coords) > max_coords:
        picks = rng.choice(len(coords), size=max_coords, replace=False)
        coords = [coords[i] for i in picks]

    worst = 0.0
    for name, flat_idx in coords:
        flat = params[name].reshape(-1)
        orig = flat[flat_idx]
        flat[flat_idx] = orig + eps
        plus, _ = loss_and_grads(params)
        flat[flat_idx] = orig - eps
        minus, _ = loss_and_grads(params)
        flat[flat_idx] = orig
        numeric = (plus - minus) / (2.0 * eps)
        analytic = grads[name].reshape(-1)[flat_idx]
        rel = abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-8)
        worst = max(worst, rel)
    return worst
