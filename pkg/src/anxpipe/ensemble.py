"""Stacking ensembles over base-model probabilities.

Base columns come either from prediction CSVs (externally trained models)
or from models trained in-process. Trainable bases contribute out-of-fold
probabilities: a seeded K-fold split assigns every post to exactly one
held-out fold, and its column entry is produced by the model trained on the
other K-1 folds (which also serve as that model's checkpoint-selection set,
so the held-out fold never leaks). File bases are read as-is.

Meta-learner kinds: logistic, ridge, linear_svm, gradient_boosting. The
"xgboost" spec alias maps onto the in-repo gradient-boosting learner.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import models as _models
from .exchange import read_predictions
from .learners import (
    GradientBoosting,
    LearnerError,
    _Stump,
    fit_gradient_boosting,
    fit_linear_svm,
    fit_logistic,
    fit_ridge,
    sigmoid,
)
from .models import Prediction, TrainConfig, TrainExample

__all__ = [
    "StackingDataset",
    "MetaLearner",
    "EnsembleError",
    "FileBase",
    "TrainableBase",
    "parse_ensemble_spec",
    "build_oof_matrix",
    "fit_meta",
    "predict_meta",
    "fit_full_bases",
    "stack_predict",
    "META_KINDS",
]

META_KINDS = ("logistic", "ridge", "linear_svm", "gradient_boosting")
META_ALIASES = {"xgboost": "gradient_boosting"}


class EnsembleError(ValueError):
    pass


@dataclass
class StackingDataset:
    z: np.ndarray  # (n, k) base probabilities
    y: np.ndarray  # (n,) gold labels
    base_ids: list
    post_ids: list
    fold_of: np.ndarray  # (n,) held-out fold per post, -1 for file-only stacks


@dataclass
class MetaLearner:
    kind: str
    n_features: int
    weights: Optional[np.ndarray] = None
    intercept: float = 0.0
    boosting: Optional[GradientBoosting] = None
    trained: bool = False

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "n_features": self.n_features, "intercept": self.intercept}
        if self.weights is not None:
            out["weights"] = self.weights.tolist()
        if self.boosting is not None:
            out["boosting"] = {
                "base_score": self.boosting.base_score,
                "shrinkage": self.boosting.shrinkage,
                "stumps": [
                    [s.feature, s.threshold, s.left_value, s.right_value]
                    for s in self.boosting.stumps
                ],
            }
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "MetaLearner":
        learner = cls(
            kind=data["kind"],
            n_features=data["n_features"],
            intercept=data.get("intercept", 0.0),
            trained=True,
        )
        if "weights" in data:
            learner.weights = np.asarray(data["weights"], dtype=np.float64)
        if "boosting" in data:
            b = data["boosting"]
            learner.boosting = GradientBoosting(
                base_score=b["base_score"],
                shrinkage=b["shrinkage"],
                stumps=[_Stump(int(f), t, l, r) for f, t, l, r in b["stumps"]],
            )
        return learner


@dataclass(frozen=True)
class FileBase:
    model_id: str
    path: str


@dataclass(frozen=True)
class TrainableBase:
    model_id: str
    kind: str  # m4 | m5
    seed: int = 42
    preset: str = "desk"
    epochs: int = 20
    lr: float = 1e-3

    def _train(self, examples: list) -> object:
        config = TrainConfig(epochs=self.epochs, lr=self.lr, seed=self.seed)
        model_config = (
            _models.M4_PRESETS[self.preset]
            if self.kind == "m4"
            else _models.M5_PRESETS[self.preset]
        )
        model_config = _infer_input_dim(model_config, examples)
        # the training folds double as the checkpoint-selection set
        params, _ = _models.train_model(
            self.kind, examples, examples, config, model_config
        )
        return params

    def fit_predictor(self, examples: list) -> Callable:
        params = self._train(examples)

        def predictor(targets: list) -> np.ndarray:
            preds = _models.predict(params, targets)
            return np.array([p.prob_positive for p in preds])

        return predictor


def _infer_input_dim(config, examples):
    width = examples[0].features.shape[1]
    if getattr(config, "input_dim") != width:
        from dataclasses import replace

        config = replace(config, input_dim=width)
    return config


def parse_ensemble_spec(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        spec = json.load(fh)
    if not isinstance(spec, dict) or "bases" not in spec or "meta" not in spec:
        raise EnsembleError("ensemble spec needs 'bases' and 'meta' entries")
    meta = META_ALIASES.get(spec["meta"], spec["meta"])
    if meta not in META_KINDS:
        raise EnsembleError(f"unknown meta-learner kind {spec['meta']!r}")
    bases = []
    for i, entry in enumerate(spec["bases"]):
        kind = entry.get("type")
        if kind == "file":
            bases.append(
                FileBase(model_id=entry.get("id", f"base{i}"), path=entry["path"])
            )
        elif kind == "train":
            if entry.get("model") not in ("m4", "m5"):
                raise EnsembleError(f"base {i}: model must be m4 or m5")
            bases.append(
                TrainableBase(
                    model_id=entry.get("id", f"{entry['model']}-s{entry.get('seed', 42)}"),
                    kind=entry["model"],
                    seed=int(entry.get("seed", 42)),
                    preset=entry.get("preset", "desk"),
                    epochs=int(entry.get("epochs", 20)),
                    lr=float(entry.get("lr", 1e-3)),
                )
            )
        else:
            raise EnsembleError(f"base {i}: type must be 'file' or 'train'")
    return {
        "bases": bases,
        "meta": meta,
        "hyper": spec.get("hyper", {}),
        "folds": int(spec.get("folds", 5)),
        "seed": int(spec.get("seed", 42)),
    }


def _fold_assignment(post_ids: list, folds: int, seed: int) -> np.ndarray:
    order = np.argsort(np.array(post_ids, dtype=object), kind="stable")
    perm = np.random.default_rng(seed).permutation(len(post_ids))
    fold_of = np.empty(len(post_ids), dtype=np.int64)
    for slot, idx in enumerate(perm):
        fold_of[order[idx]] = slot % folds
    return fold_of


def build_oof_matrix(
    bases: list, examples: list, folds: int = 5, seed: int = 42
) -> StackingDataset:
    if folds < 2:
        raise EnsembleError("stacking needs at least 2 folds")
    if not examples:
        raise EnsembleError("no training examples")
    for ex in examples:
        if ex.label is None:
            raise EnsembleError(f"post {ex.post_id!r} is unlabeled")
    post_ids = [ex.post_id for ex in examples]
    y = np.array([ex.label for ex in examples], dtype=np.float64)
    any_trainable = any(isinstance(b, TrainableBase) for b in bases)
    fold_of = (
        _fold_assignment(post_ids, folds, seed)
        if any_trainable
        else np.full(len(examples), -1, dtype=np.int64)
    )

    z = np.empty((len(examples), len(bases)))
    for j, base in enumerate(bases):
        if isinstance(base, FileBase):
            preds = read_predictions(base.path, model_id=base.model_id)
            z[:, j] = [preds.prob_for(pid) for pid in post_ids]
        elif isinstance(base, TrainableBase):
            for f in range(folds):
                held = fold_of == f
                train_part = [ex for ex, h in zip(examples, held) if not h]
                test_part = [ex for ex, h in zip(examples, held) if h]
                if not test_part:
                    continue
                predictor = base.fit_predictor(train_part)
                z[held, j] = predictor(test_part)
        else:
            raise EnsembleError(f"unknown base spec {base!r}")
    return StackingDataset(
        z=z, y=y, base_ids=[b.model_id for b in bases], post_ids=post_ids, fold_of=fold_of
    )


def fit_meta(ds: StackingDataset, kind: str, hyper: dict | None = None) -> MetaLearner:
    kind = META_ALIASES.get(kind, kind)
    if kind not in META_KINDS:
        raise EnsembleError(f"unknown meta-learner kind {kind!r}")
    hyper = hyper or {}
    learner = MetaLearner(kind=kind, n_features=ds.z.shape[1])
    try:
        if kind == "logistic":
            w, b = fit_logistic(
                ds.z,
                ds.y,
                l2=hyper.get("l2", 1e-4),
                epochs=hyper.get("epochs", 500),
                lr=hyper.get("lr", 0.1),
            )
            learner.weights, learner.intercept = w, b
        elif kind == "ridge":
            w, b = fit_ridge(ds.z, ds.y, l2=hyper.get("l2", 1.0))
            learner.weights, learner.intercept = w, b
        elif kind == "linear_svm":
            w, b = fit_linear_svm(
                ds.z,
                ds.y,
                l2=hyper.get("l2", 1e-4),
                epochs=hyper.get("epochs", 500),
                lr=hyper.get("lr", 0.1),
            )
            learner.weights, learner.intercept = w, b
        else:
            learner.boosting = fit_gradient_boosting(
                ds.z,
                ds.y,
                rounds=hyper.get("rounds", 200),
                shrinkage=hyper.get("shrinkage", 0.1),
            )
    except LearnerError as exc:
        raise EnsembleError(str(exc)) from exc
    learner.trained = True
    return learner


def _decision(learner: MetaLearner, z: np.ndarray) -> np.ndarray:
    if learner.kind == "gradient_boosting":
        return learner.boosting.decision(z)
    return z @ learner.weights + learner.intercept


def predict_meta(learner: MetaLearner, z_row: np.ndarray, post_id: str = "") -> Prediction:
    if not learner.trained:
        raise EnsembleError("meta-learner is not trained")
    z_row = np.asarray(z_row, dtype=np.float64)
    if z_row.shape != (learner.n_features,):
        raise EnsembleError(
            f"z-row width {z_row.shape} != ({learner.n_features},)"
        )
    margin = float(_decision(learner, z_row[None, :])[0])
    prob = float(sigmoid(np.array([margin]))[0])
    return Prediction(post_id=post_id, prob_positive=prob, label_hat=int(prob >= 0.5))


def fit_full_bases(bases: list, examples: list) -> list:
    """Deployment predictors: trainable bases refit on the whole training set."""
    predictors = []
    for base in bases:
        if isinstance(base, FileBase):
            preds = read_predictions(base.path, model_id=base.model_id)
            predictors.append(
                lambda targets, _p=preds: np.array(
                    [_p.prob_for(ex.post_id) for ex in targets]
                )
            )
        else:
            predictors.append(base.fit_predictor(examples))
    return predictors


def stack_predict(
    learner: MetaLearner, predictors: list, targets: list
) -> list[Prediction]:
    z = np.column_stack([predictor(targets) for predictor in predictors])
    return [
        predict_meta(learner, z[i], post_id=ex.post_id)
        for i, ex in enumerate(targets)
    ]
