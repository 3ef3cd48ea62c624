"""The feature-sequence classifier (M4) and the hybrid two-branch classifier (M5).

M4: window-feature sequence -> BiLSTM -> fc1 -> fc2 -> two-logit softmax.
M5: a token-embedding branch and a feature branch, each a BiLSTM followed by
a ReLU projection; the two projections are concatenated, projected once
more, and fed to the softmax head.

Two config presets ship for each model: "paper" carries the published sizes
(too slow to train in CI) and "desk" is the small profile the test suite
uses. Checkpoints are NNCK tensor files with a ``__meta__`` tensor holding
the JSON-encoded config (and optionally the feature standardizer).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .neuralcore import (
    AdamState,
    BiLSTMParams,
    CheckpointError,
    DenseParams,
    LSTMLayerParams,
    adam_step,
    binary_head_backward,
    binary_head_forward,
    bilstm_backward,
    bilstm_forward,
    cross_entropy,
    dense_backward,
    dense_forward,
    init_bilstm,
    init_dense,
    read_tensors,
    write_tensors,
)
from .neuralcore.adam import clip_global_norm
from .evalkit import compute_metrics

__all__ = [
    "M4Config",
    "M5Config",
    "TrainConfig",
    "Prediction",
    "TrainExample",
    "TrainingError",
    "m4_init",
    "m4_forward",
    "m5_init",
    "m5_forward",
    "predict",
    "train_model",
    "save_model",
    "load_model",
    "M4_PRESETS",
    "M5_PRESETS",
]


class TrainingError(RuntimeError):
    pass


@dataclass(frozen=True)
class M4Config:
    input_dim: int = 168
    hidden: int = 1024
    layers: int = 4
    fc1_out: int = 256
    fc2_out: int = 128


@dataclass(frozen=True)
class M5Config:
    embed_dim: int = 768
    max_tokens: int = 512
    input_dim: int = 168
    hidden_tok: int = 512
    layers_tok: int = 2
    hidden_feat: int = 1024
    layers_feat: int = 3
    fc1_out: int = 512
    fc2_out: int = 512
    fc3_out: int = 128


M4_PRESETS = {
    "paper": M4Config(),
    "desk": M4Config(hidden=64, layers=2, fc1_out=64, fc2_out=32),
}
M5_PRESETS = {
    "paper": M5Config(),
    "desk": M5Config(
        hidden_tok=32,
        layers_tok=1,
        hidden_feat=32,
        layers_feat=1,
        fc1_out=32,
        fc2_out=32,
        fc3_out=16,
    ),
}


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 30
    lr: float = 1e-3
    seed: int = 42
    clip_norm: float = 5.0
    early_stop_patience: Optional[int] = None
    shuffle: bool = True


@dataclass(frozen=True)
class Prediction:
    post_id: str
    prob_positive: float
    label_hat: int


@dataclass(frozen=True)
class TrainExample:
    post_id: str
    features: np.ndarray  # (N, input_dim) standardized window features
    label: Optional[int] = None
    embedding: Optional[np.ndarray] = None  # (M, embed_dim) for the hybrid model


def _make_prediction(post_id: str, probs: np.ndarray) -> Prediction:
    p1 = float(probs[1])
    return Prediction(post_id=post_id, prob_positive=p1, label_hat=int(p1 >= 0.5))


@dataclass
class M4Params:
    config: M4Config
    bilstm: BiLSTMParams
    fc1: DenseParams
    fc2: DenseParams
    head_w: np.ndarray
    head_b: np.ndarray

    @property
    def kind(self) -> str:
        return "m4"

    def tensors(self) -> dict:
        out = {}
        _bilstm_tensors(out, "bilstm", self.bilstm)
        out.update(
            {
                "fc1.w": self.fc1.w,
                "fc1.b": self.fc1.b,
                "fc2.w": self.fc2.w,
                "fc2.b": self.fc2.b,
                "head.w": self.head_w,
                "head.b": self.head_b,
            }
        )
        return out


@dataclass
class M5Params:
    config: M5Config
    bilstm_tok: BiLSTMParams
    bilstm_feat: BiLSTMParams
    fc1: DenseParams
    fc2: DenseParams
    fc3: DenseParams
    head_w: np.ndarray
    head_b: np.ndarray

    @property
    def kind(self) -> str:
        return "m5"

    def tensors(self) -> dict:
        out = {}
        _bilstm_tensors(out, "bilstm_tok", self.bilstm_tok)
        _bilstm_tensors(out, "bilstm_feat", self.bilstm_feat)
        out.update(
            {
                "fc1.w": self.fc1.w,
                "fc1.b": self.fc1.b,
                "fc2.w": self.fc2.w,
                "fc2.b": self.fc2.b,
                "fc3.w": self.fc3.w,
                "fc3.b": self.fc3.b,
                "head.w": self.head_w,
                "head.b": self.head_b,
            }
        )
        return out


def _bilstm_tensors(out: dict, prefix: str, params: BiLSTMParams) -> None:
    for i, (fwd, bwd) in enumerate(params.layers):
        for tag, layer in (("fwd", fwd), ("bwd", bwd)):
            out[f"{prefix}.l{i}.{tag}.wx"] = layer.wx
            out[f"{prefix}.l{i}.{tag}.wh"] = layer.wh
            out[f"{prefix}.l{i}.{tag}.b"] = layer.b


def _bilstm_grad_tensors(out: dict, prefix: str, layer_grads) -> None:
    for i, (grads_f, grads_b) in enumerate(layer_grads):
        for tag, (dwx, dwh, db) in (("fwd", grads_f), ("bwd", grads_b)):
            out[f"{prefix}.l{i}.{tag}.wx"] = dwx
            out[f"{prefix}.l{i}.{tag}.wh"] = dwh
            out[f"{prefix}.l{i}.{tag}.b"] = db


def m4_init(config: M4Config, seed: int = 42) -> M4Params:
    rng = np.random.default_rng(seed)
    bilstm = init_bilstm(config.input_dim, config.hidden, config.layers, rng)
    fc1 = init_dense(2 * config.hidden, config.fc1_out, rng)
    fc2 = init_dense(config.fc1_out, config.fc2_out, rng)
    bound = np.sqrt(6.0 / (config.fc2_out + 2))
    head_w = rng.uniform(-bound, bound, size=(2, config.fc2_out))
    return M4Params(
        config=config, bilstm=bilstm, fc1=fc1, fc2=fc2, head_w=head_w, head_b=np.zeros(2)
    )


def m4_forward(cm: np.ndarray, params: M4Params):
    cm = np.asarray(cm, dtype=np.float64)
    if cm.ndim != 2 or cm.shape[1] != params.config.input_dim:
        raise ValueError(
            f"feature matrix width {cm.shape[-1]} != input dim {params.config.input_dim}"
        )
    _, final, b_cache = bilstm_forward(cm, params.bilstm)
    h1, c1 = dense_forward(final, params.fc1)
    h2, c2 = dense_forward(h1, params.fc2)
    probs, hc = binary_head_forward(h2, params.head_w, params.head_b)
    return probs, (b_cache, c1, c2, hc)


def m4_backward(label: int, cache) -> dict:
    b_cache, c1, c2, hc = cache
    dx, (dhw, dhb) = binary_head_backward(label, hc)
    dx, (dw2, db2) = dense_backward(dx, c2)
    dx, (dw1, db1) = dense_backward(dx, c1)
    layer_grads, _ = bilstm_backward(dx, b_cache)
    grads = {
        "fc1.w": dw1,
        "fc1.b": db1,
        "fc2.w": dw2,
        "fc2.b": db2,
        "head.w": dhw,
        "head.b": dhb,
    }
    _bilstm_grad_tensors(grads, "bilstm", layer_grads)
    return grads


def m5_init(config: M5Config, seed: int = 42) -> M5Params:
    rng = np.random.default_rng(seed)
    bilstm_tok = init_bilstm(config.embed_dim, config.hidden_tok, config.layers_tok, rng)
    bilstm_feat = init_bilstm(config.input_dim, config.hidden_feat, config.layers_feat, rng)
    fc1 = init_dense(2 * config.hidden_tok, config.fc1_out, rng)
    fc2 = init_dense(2 * config.hidden_feat, config.fc2_out, rng)
    fc3 = init_dense(config.fc1_out + config.fc2_out, config.fc3_out, rng)
    bound = np.sqrt(6.0 / (config.fc3_out + 2))
    head_w = rng.uniform(-bound, bound, size=(2, config.fc3_out))
    return M5Params(
        config=config,
        bilstm_tok=bilstm_tok,
        bilstm_feat=bilstm_feat,
        fc1=fc1,
        fc2=fc2,
        fc3=fc3,
        head_w=head_w,
        head_b=np.zeros(2),
    )


def m5_forward(tokens: np.ndarray, cm: np.ndarray, params: M5Params):
    tokens = np.asarray(tokens, dtype=np.float64)
    cfg = params.config
    if tokens.ndim != 2 or tokens.shape[1] != cfg.embed_dim:
        raise ValueError(f"embedding dim {tokens.shape[-1]} != {cfg.embed_dim}")
    if not 1 <= tokens.shape[0] <= cfg.max_tokens:
        raise ValueError(
            f"token count {tokens.shape[0]} outside [1, {cfg.max_tokens}]"
        )
    _, s_final, tok_cache = bilstm_forward(tokens, params.bilstm_tok)
    _, h_final, feat_cache = bilstm_forward(cm, params.bilstm_feat)
    p1, c1 = dense_forward(s_final, params.fc1)
    p2, c2 = dense_forward(h_final, params.fc2)
    joint = np.concatenate([p1, p2])
    p3, c3 = dense_forward(joint, params.fc3)
    probs, hc = binary_head_forward(p3, params.head_w, params.head_b)
    return probs, (tok_cache, feat_cache, c1, c2, c3, hc, params.config.fc1_out)


def m5_backward(label: int, cache) -> dict:
    tok_cache, feat_cache, c1, c2, c3, hc, fc1_out = cache
    dx, (dhw, dhb) = binary_head_backward(label, hc)
    dj, (dw3, db3) = dense_backward(dx, c3)
    d1, (dw1, db1) = dense_backward(dj[:fc1_out], c1)
    d2, (dw2, db2) = dense_backward(dj[fc1_out:], c2)
    tok_grads, _ = bilstm_backward(d1, tok_cache)
    feat_grads, _ = bilstm_backward(d2, feat_cache)
    grads = {
        "fc1.w": dw1,
        "fc1.b": db1,
        "fc2.w": dw2,
        "fc2.b": db2,
        "fc3.w": dw3,
        "fc3.b": db3,
        "head.w": dhw,
        "head.b": dhb,
    }
    _bilstm_grad_tensors(grads, "bilstm_tok", tok_grads)
    _bilstm_grad_tensors(grads, "bilstm_feat", feat_grads)
    return grads


def _forward_example(params, ex: TrainExample):
    if params.kind == "m4":
        return m4_forward(ex.features, params)
    if ex.embedding is None:
        raise ValueError(f"post {ex.post_id!r} has no embedding for the hybrid model")
    return m5_forward(ex.embedding, ex.features, params)


def predict(params, examples: list[TrainExample]) -> list[Prediction]:
    out = []
    for ex in examples:
        probs, _ = _forward_example(params, ex)
        out.append(_make_prediction(ex.post_id, probs))
    return out


def _copy_tensors(tensors: dict) -> dict:
    return {k: v.copy() for k, v in tensors.items()}


def _assign_tensors(params, saved: dict) -> None:
    live = params.tensors()
    for name, arr in live.items():
        arr[...] = saved[name]


def _val_f1(params, examples: list[TrainExample]) -> tuple[float, float, float]:
    preds = predict(params, examples)
    gold = {ex.post_id: int(ex.label) for ex in examples}
    m = compute_metrics(preds, gold)
    return m.precision, m.recall, m.f1


def train_model(
    kind: str,
    train: list[TrainExample],
    val: list[TrainExample],
    config: TrainConfig,
    model_config=None,
    init_params=None,
):
    """Per-post SGD loop with Adam, gradient clipping, and best-F1 checkpointing.

    Shuffling keys on post id: examples are sorted by id before the seeded
    permutations, so the training order never depends on input order.
    """
    if kind not in ("m4", "m5"):
        raise ValueError(f"unknown model kind {kind!r}")
    if not train:
        raise TrainingError("empty training set")
    if not val:
        raise TrainingError("empty validation set")
    for ex in train + val:
        if ex.label is None:
            raise TrainingError(f"post {ex.post_id!r} is unlabeled")

    if init_params is not None:
        params = init_params
    elif kind == "m4":
        params = m4_init(model_config or M4_PRESETS["desk"], seed=config.seed)
    else:
        params = m5_init(model_config or M5_PRESETS["desk"], seed=config.seed)
    backward = m4_backward if kind == "m4" else m5_backward

    tensors = params.tensors()
    state = AdamState(lr=config.lr)
    rng = np.random.default_rng(config.seed)
    ordered = sorted(train, key=lambda ex: ex.post_id)

    history = {"train_loss": [], "val_precision": [], "val_recall": [], "val_f1": []}
    best_tensors = _copy_tensors(tensors)
    best_f1 = -1.0
    since_best = 0

    for epoch in range(config.epochs):
        perm = rng.permutation(len(ordered))
        batch = [ordered[i] for i in perm] if config.shuffle else ordered
        total_loss = 0.0
        for ex in batch:
            probs, cache = _forward_example(params, ex)
            loss = cross_entropy(probs, int(ex.label))
            if not np.isfinite(loss):
                raise TrainingError(f"loss diverged at epoch {epoch + 1}")
            grads = backward(int(ex.label), cache)
            clip_global_norm(grads, config.clip_norm)
            adam_step(tensors, grads, state)
            total_loss += loss
        p, r, f1 = _val_f1(params, val)
        history["train_loss"].append(total_loss / len(batch))
        history["val_precision"].append(p)
        history["val_recall"].append(r)
        history["val_f1"].append(f1)
        if f1 > best_f1:
            best_f1 = f1
            best_tensors = _copy_tensors(tensors)
            since_best = 0
        else:
            since_best += 1
            if (
                config.early_stop_patience is not None
                and since_best >= config.early_stop_patience
            ):
                break

    _assign_tensors(params, best_tensors)
    return params, history


# --- checkpoint serialization ------------------------------------------------


def save_model(params, path, standardizer=None) -> None:
    tensors = dict(params.tensors())
    meta = {"kind": params.kind, "config": asdict(params.config)}
    if standardizer is not None:
        meta["feature_ids"] = list(standardizer.feature_ids)
        tensors["standardizer.mean"] = standardizer.mean
        tensors["standardizer.std"] = standardizer.std
    payload = json.dumps(meta, sort_keys=True).encode("utf-8")
    tensors["__meta__"] = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
    write_tensors(tensors, path)


def _params_from_tensors(kind: str, config, tensors: dict):
    def layer(prefix: str) -> LSTMLayerParams:
        return LSTMLayerParams(
            wx=tensors[f"{prefix}.wx"],
            wh=tensors[f"{prefix}.wh"],
            b=tensors[f"{prefix}.b"],
        )

    def bilstm(prefix: str, n_layers: int) -> BiLSTMParams:
        return BiLSTMParams(
            layers=[
                (layer(f"{prefix}.l{i}.fwd"), layer(f"{prefix}.l{i}.bwd"))
                for i in range(n_layers)
            ]
        )

    def dense(prefix: str) -> DenseParams:
        return DenseParams(w=tensors[f"{prefix}.w"], b=tensors[f"{prefix}.b"])

    try:
        if kind == "m4":
            return M4Params(
                config=config,
                bilstm=bilstm("bilstm", config.layers),
                fc1=dense("fc1"),
                fc2=dense("fc2"),
                head_w=tensors["head.w"],
                head_b=tensors["head.b"],
            )
        return M5Params(
            config=config,
            bilstm_tok=bilstm("bilstm_tok", config.layers_tok),
            bilstm_feat=bilstm("bilstm_feat", config.layers_feat),
            fc1=dense("fc1"),
            fc2=dense("fc2"),
            fc3=dense("fc3"),
            head_w=tensors["head.w"],
            head_b=tensors["head.b"],
        )
    except KeyError as exc:
        raise CheckpointError(f"checkpoint is missing tensor {exc.args[0]!r}") from exc


def load_model(path, expect_kind: str | None = None):
    """Returns (params, standardizer-or-None). Round trips are bit-exact."""
    from .linguafeat.extract import Standardizer

    tensors = read_tensors(path)
    if "__meta__" not in tensors:
        raise CheckpointError("checkpoint has no __meta__ tensor")
    meta = json.loads(bytes(tensors.pop("__meta__").astype(np.uint8)).decode("utf-8"))
    kind = meta.get("kind")
    if kind not in ("m4", "m5"):
        raise CheckpointError(f"unknown checkpoint kind {kind!r}")
    if expect_kind is not None and kind != expect_kind:
        raise CheckpointError(
            f"checkpoint kind/shape mismatch: file holds {kind!r} tensors, expected {expect_kind!r}"
        )
    config = (M4Config if kind == "m4" else M5Config)(**meta["config"])
    standardizer = None
    if "standardizer.mean" in tensors:
        standardizer = Standardizer(
            feature_ids=tuple(meta["feature_ids"]),
            mean=tensors.pop("standardizer.mean"),
            std=tensors.pop("standardizer.std"),
        )
    return _params_from_tensors(kind, config, tensors), standardizer
