"""Dense-tensor neural kernel: LSTM recurrence, dense layers, Adam, checks.

The recurrence kernels come in two interchangeable builds: a compiled Cython
extension and a pure-numpy fallback. The compiled one is used when it
imported successfully and ``ANXPIPE_PURE_PY`` is unset; ``KERNEL_BACKEND``
reports which is live. ``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

from . import kernels_py

if os.environ.get("ANXPIPE_PURE_PY"):
    kernel = kernels_py
else:
    try:
        from . import _kernel_cy as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = kernels_py

KERNEL_BACKEND: str = kernel.BACKEND

from .adam import AdamState, adam_step
from .checkpoint import CheckpointError, read_tensors, write_tensors
from .dense import (
    DenseParams,
    binary_head_backward,
    binary_head_forward,
    cross_entropy,
    dense_backward,
    dense_forward,
    init_dense,
)
from .gradcheck import grad_check
from .lstm import (
    BiLSTMParams,
    LSTMLayerParams,
    bilstm_backward,
    bilstm_forward,
    init_bilstm,
    init_lstm_layer,
)

__all__ = [
    "KERNEL_BACKEND",
    "kernel",
    "kernels_py",
    "AdamState",
    "adam_step",
    "CheckpointError",
    "read_tensors",
    "write_tensors",
    "DenseParams",
    "init_dense",
    "dense_forward",
    "dense_backward",
    "binary_head_forward",
    "binary_head_backward",
    "cross_entropy",
    "grad_check",
    "LSTMLayerParams",
    "BiLSTMParams",
    "init_lstm_layer",
    "init_bilstm",
    "bilstm_forward",
    "bilstm_backward",
]
