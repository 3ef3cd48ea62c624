"""Dense layers, the two-logit softmax head, and cross-entropy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DenseParams",
    "init_dense",
    "dense_forward",
    "dense_backward",
    "binary_head_forward",
    "binary_head_backward",
    "cross_entropy",
]


@dataclass
class DenseParams:
    w: np.ndarray  # (out, in)
    b: np.ndarray  # (out,)
    activation: str = "relu"  # relu | none


def init_dense(
    in_dim: int, out_dim: int, rng: np.random.Generator, activation: str = "relu"
) -> DenseParams:
    bound = np.sqrt(6.0 / (in_dim + out_dim))
    w = rng.uniform(-bound, bound, size=(out_dim, in_dim))
    return DenseParams(w=w, b=np.zeros(out_dim), activation=activation)


def dense_forward(x: np.ndarray, p: DenseParams):
    if x.shape != (p.w.shape[1],):
        raise ValueError(f"dense input shape {x.shape} != ({p.w.shape[1]},)")
    pre = p.w @ x + p.b
    out = np.maximum(pre, 0.0) if p.activation == "relu" else pre
    return out, (x, p, pre)


def dense_backward(d_out: np.ndarray, cache):
    x, p, pre = cache
    d_pre = d_out * (pre > 0) if p.activation == "relu" else d_out
    dw = np.outer(d_pre, x)
    db = d_pre.copy()
    dx = p.w.T @ d_pre
    return dx, (dw, db)


def binary_head_forward(x: np.ndarray, w: np.ndarray, b: np.ndarray):
    """Two-way softmax with log-sum-exp stabilization; probs sum to 1."""
    if w.shape != (2, x.shape[0]) or b.shape != (2,):
        raise ValueError("head expects a 2 x dim weight matrix and a 2-vector bias")
    logits = w @ x + b
    shifted = logits - logits.max()
    exp = np.exp(shifted)
    probs = exp / exp.sum()
    return probs, (x, w, logits, probs)


def binary_head_backward(label: int, cache):
    x, w, _logits, probs = cache
    d_logits = probs.copy()
    d_logits[label] -= 1.0
    dw = np.outer(d_logits, x)
    db = d_logits
    dx = w.T @ d_logits
    return dx, (dw, db)


def cross_entropy(probs: np.ndarray, label: int) -> float:
    """Negative log-likelihood of the gold label, floored for stability."""
    return float(-np.log(max(probs[label], 1e-300)))
