"""Bidirectional multi-layer LSTM built on the recurrence kernels.

Parameters for one direction of one layer live in combined gate-stacked
arrays (rows ordered input, forget, candidate, output); the per-gate
matrices of the conventional formulation are exposed as views. The backward
direction consumes the reversed input sequence, so its "final" state is the
state after the whole reversed sequence, i.e. the output aligned with the
first input position. Layer outputs are the per-position concatenation of
both directions, which feeds the next layer; the network's final vector is
h_forward[last] concatenated with h_backward[first] of the top layer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "LSTMLayerParams",
    "BiLSTMParams",
    "init_lstm_layer",
    "init_bilstm",
    "bilstm_forward",
    "bilstm_backward",
    "glorot_uniform",
]

FORGET_BIAS = 1.0


@dataclass
class LSTMLayerParams:
    wx: np.ndarray  # (4H, D)
    wh: np.ndarray  # (4H, H)
    b: np.ndarray  # (4H,)

    @property
    def hidden_dim(self) -> int:
        return self.wh.shape[1]

    @property
    def input_dim(self) -> int:
        return self.wx.shape[1]

    def _gate(self, mat: np.ndarray, index: int) -> np.ndarray:
        h = self.hidden_dim
        return mat[index * h : (index + 1) * h]

    # conventional per-gate views
    @property
    def W_ii(self) -> np.ndarray:
        return self._gate(self.wx, 0)

    @property
    def W_if(self) -> np.ndarray:
        return self._gate(self.wx, 1)

    @property
    def W_ig(self) -> np.ndarray:
        return self._gate(self.wx, 2)

    @property
    def W_io(self) -> np.ndarray:
        return self._gate(self.wx, 3)

    @property
    def W_hi(self) -> np.ndarray:
        return self._gate(self.wh, 0)

    @property
    def W_hf(self) -> np.ndarray:
        return self._gate(self.wh, 1)

    @property
    def W_hg(self) -> np.ndarray:
        return self._gate(self.wh, 2)

    @property
    def W_ho(self) -> np.ndarray:
        return self._gate(self.wh, 3)

    @property
    def b_i(self) -> np.ndarray:
        return self._gate(self.b, 0)

    @property
    def b_f(self) -> np.ndarray:
        return self._gate(self.b, 1)

    @property
    def b_g(self) -> np.ndarray:
        return self._gate(self.b, 2)

    @property
    def b_o(self) -> np.ndarray:
        return self._gate(self.b, 3)


@dataclass
class BiLSTMParams:
    layers: list[tuple[LSTMLayerParams, LSTMLayerParams]]  # (forward, backward)

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    @property
    def hidden_dim(self) -> int:
        return self.layers[0][0].hidden_dim

    @property
    def input_dim(self) -> int:
        return self.layers[0][0].input_dim


def glorot_uniform(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    bound = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-bound, bound, size=(rows, cols))


def init_lstm_layer(
    input_dim: int, hidden_dim: int, rng: np.random.Generator
) -> LSTMLayerParams:
    wx = np.vstack(
        [glorot_uniform(rng, hidden_dim, input_dim) for _ in range(4)]
    )
    wh = np.vstack(
        [glorot_uniform(rng, hidden_dim, hidden_dim) for _ in range(4)]
    )
    b = np.zeros(4 * hidden_dim)
    b[hidden_dim : 2 * hidden_dim] = FORGET_BIAS
    return LSTMLayerParams(wx=wx, wh=wh, b=b)


def init_bilstm(
    input_dim: int, hidden_dim: int, num_layers: int, rng: np.random.Generator
) -> BiLSTMParams:
    layers = []
    dim = input_dim
    for _ in range(num_layers):
        fwd = init_lstm_layer(dim, hidden_dim, rng)
        bwd = init_lstm_layer(dim, hidden_dim, rng)
        layers.append((fwd, bwd))
        dim = 2 * hidden_dim
    return BiLSTMParams(layers=layers)


def _layer_forward(x: np.ndarray, p: LSTMLayerParams):
    from . import kernel

    zpre = x @ p.wx.T + p.b
    h_seq, c_seq, gates = kernel.recurrent_forward(np.ascontiguousarray(zpre), p.wh)
    return h_seq, (x, p, h_seq, c_seq, gates)


def _layer_backward(cache, dh_seq: np.ndarray):
    from . import kernel

    x, p, h_seq, c_seq, gates = cache
    dz = kernel.recurrent_backward(
        p.wh, h_seq, c_seq, gates, np.ascontiguousarray(dh_seq)
    )
    dwx = dz.T @ x
    dwh = dz[1:].T @ h_seq[:-1] if len(h_seq) > 1 else np.zeros_like(p.wh)
    db = dz.sum(axis=0)
    dx = dz @ p.wx
    return dx, (dwx, dwh, db)


def bilstm_forward(seq: np.ndarray, params: BiLSTMParams):
    """Returns (all_outputs (N, 2H), final (2H,), cache for backward)."""
    seq = np.asarray(seq, dtype=np.float64)
    if seq.ndim != 2 or seq.shape[0] == 0:
        raise ValueError("input sequence must be a nonempty N x D matrix")
    if seq.shape[1] != params.input_dim:
        raise ValueError(
            f"input width {seq.shape[1]} != layer-1 input dim {params.input_dim}"
        )
    inp = seq
    layer_caches = []
    h_fwd = h_bwd_rev = None
    for fwd_p, bwd_p in params.layers:
        h_fwd, cache_f = _layer_forward(np.ascontiguousarray(inp), fwd_p)
        h_bwd_rev, cache_b = _layer_forward(np.ascontiguousarray(inp[::-1]), bwd_p)
        inp = np.concatenate([h_fwd, h_bwd_rev[::-1]], axis=1)
        layer_caches.append((cache_f, cache_b))
    final = np.concatenate([h_fwd[-1], h_bwd_rev[-1]])
    cache = (params, layer_caches, seq.shape)
    return inp, final, cache


def bilstm_backward(grad_final: np.ndarray, cache):
    """Exact BPTT for a loss that consumes only the final vector.

    Returns (per-layer [(fwd (dwx, dwh, db), bwd (dwx, dwh, db))], d_input).
    """
    params, layer_caches, in_shape = cache
    h = params.hidden_dim
    grad_final = np.asarray(grad_final, dtype=np.float64)
    if grad_final.shape != (2 * h,):
        raise ValueError(
            f"grad_final has shape {grad_final.shape}, expected ({2 * h},)"
        )
    n = in_shape[0]
    dh_f = np.zeros((n, h))
    dh_f[-1] = grad_final[:h]
    dh_b_rev = np.zeros((n, h))
    dh_b_rev[-1] = grad_final[h:]

    layer_grads: list = [None] * len(layer_caches)
    for li in range(len(layer_caches) - 1, -1, -1):
        cache_f, cache_b = layer_caches[li]
        dx_f, grads_f = _layer_backward(cache_f, dh_f)
        dx_b_rev, grads_b = _layer_backward(cache_b, dh_b_rev)
        d_inp = dx_f + dx_b_rev[::-1]
        layer_grads[li] = (grads_f, grads_b)
        if li > 0:
            dh_f = d_inp[:, :h]
            dh_b_rev = np.ascontiguousarray(d_inp[:, h:][::-1])
    return layer_grads, d_inp
