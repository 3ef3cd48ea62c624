"""Pure-numpy LSTM recurrence kernels.

The serial per-step recurrence is the hot loop of training; everything
batchable (input projections, weight-gradient accumulation) happens outside
the kernel in plain BLAS calls, so the compiled twin in ``_kernel_cy`` only
replaces these two functions. Gate order in all (N, 4H) arrays is
input, forget, candidate, output.
"""

from __future__ import annotations

import numpy as np

__all__ = ["recurrent_forward", "recurrent_backward", "BACKEND"]

BACKEND = "python"


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def recurrent_forward(zpre: np.ndarray, wh: np.ndarray):
    """Run the gate recurrence over precomputed input projections.

    zpre: (N, 4H) rows of x_t @ Wx.T + b. wh: (4H, H).
    Returns (h_seq, c_seq, gates) with gates post-activation.
    """
    n, four_h = zpre.shape
    h_dim = four_h // 4
    h_seq = np.empty((n, h_dim))
    c_seq = np.empty((n, h_dim))
    gates = np.empty((n, four_h))
    h = np.zeros(h_dim)
    c = np.zeros(h_dim)
    for t in range(n):
        z = zpre[t] + wh @ h
        gi = _sigmoid(z[:h_dim])
        gf = _sigmoid(z[h_dim : 2 * h_dim])
        gg = np.tanh(z[2 * h_dim : 3 * h_dim])
        go = _sigmoid(z[3 * h_dim :])
        c = gf * c + gi * gg
        h = go * np.tanh(c)
        gates[t, :h_dim] = gi
        gates[t, h_dim : 2 * h_dim] = gf
        gates[t, 2 * h_dim : 3 * h_dim] = gg
        gates[t, 3 * h_dim :] = go
        h_seq[t] = h
        c_seq[t] = c
    return h_seq, c_seq, gates


def recurrent_backward(
    wh: np.ndarray,
    h_seq: np.ndarray,
    c_seq: np.ndarray,
    gates: np.ndarray,
    dh_seq: np.ndarray,
) -> np.ndarray:
    """Backpropagate through the recurrence; returns dz (N, 4H) on zpre."""
    n, h_dim = h_seq.shape
    dz = np.empty((n, 4 * h_dim))
    dh_next = np.zeros(h_dim)
    dc_next = np.zeros(h_dim)
    for t in range(n - 1, -1, -1):
        gi = gates[t, :h_dim]
        gf = gates[t, h_dim : 2 * h_dim]
        gg = gates[t, 2 * h_dim : 3 * h_dim]
        go = gates[t, 3 * h_dim :]
        tc = np.tanh(c_seq[t])
        dh = dh_seq[t] + dh_next
        dc = dh * go * (1.0 - tc * tc) + dc_next
        c_prev = c_seq[t - 1] if t > 0 else 0.0
        dz_t = dz[t]
        dz_t[:h_dim] = dc * gg * gi * (1.0 - gi)
        dz_t[h_dim : 2 * h_dim] = dc * c_prev * gf * (1.0 - gf)
        dz_t[2 * h_dim : 3 * h_dim] = dc * gi * (1.0 - gg * gg)
        dz_t[3 * h_dim :] = dh * tc * go * (1.0 - go)
        dh_next = wh.T @ dz_t
        dc_next = dc * gf
    return dz
