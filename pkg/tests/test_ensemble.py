import json
from pathlib import Path

import numpy as np
import pytest

from anxpipe.ensemble import (
    EnsembleError,
    FileBase,
    MetaLearner,
    StackingDataset,
    TrainableBase,
    build_oof_matrix,
    fit_meta,
    parse_ensemble_spec,
    predict_meta,
)
from anxpipe.exchange import write_predictions
from anxpipe.models import TrainExample

FIXTURES = Path(__file__).parent / "fixtures"


class _Pred:
    def __init__(self, post_id, prob):
        self.post_id = post_id
        self.prob_positive = prob


def feature_examples(n=24, seed=0, n_windows=2, width=6):
    rng = np.random.default_rng(seed)
    examples = []
    for i in range(n):
        label = i % 2
        shift = 1.0 if label else -1.0
        rows = rng.normal(shift, 0.5, size=(n_windows, width))
        examples.append(
            TrainExample(post_id=f"p{i:03d}", features=rows, label=label)
        )
    return examples


def synthetic_stack(n=400, k=3, accuracy=0.8, seed=1):
    rng = np.random.default_rng(seed)
    y = (rng.random(n) < 0.5).astype(np.float64)
    z = np.empty((n, k))
    for j in range(k):
        correct = rng.random(n) < accuracy
        target = np.where(correct, y, 1 - y)
        z[:, j] = np.where(
            target == 1, rng.uniform(0.55, 0.95, n), rng.uniform(0.05, 0.45, n)
        )
    return StackingDataset(
        z=z, y=y, base_ids=[f"b{j}" for j in range(k)],
        post_ids=[f"p{i}" for i in range(n)], fold_of=np.full(n, -1),
    )


class TestBuildOOF:
    def test_file_bases_column_order(self, tmp_path):
        examples = feature_examples(8)
        paths = []
        for name, offset in (("m1", 0.0), ("m2", 0.5)):
            path = tmp_path / f"{name}.csv"
            write_predictions(
                [_Pred(ex.post_id, min(0.9, 0.1 + offset)) for ex in examples], path
            )
            paths.append(path)
        bases = [FileBase("M1", str(paths[0])), FileBase("M2", str(paths[1]))]
        ds = build_oof_matrix(bases, examples, folds=2)
        assert ds.base_ids == ["M1", "M2"]
        assert np.allclose(ds.z[:, 0], 0.1) and np.allclose(ds.z[:, 1], 0.6)

    def test_missing_post_names_model_and_post(self, tmp_path):
        examples = feature_examples(4)
        path = tmp_path / "m1.csv"
        write_predictions([_Pred(ex.post_id, 0.5) for ex in examples[:-1]], path)
        with pytest.raises(Exception, match="M1.*p003"):
            build_oof_matrix([FileBase("M1", str(path))], examples, folds=2)

    def test_oof_never_trains_on_heldout(self):
        # K=2: each example's entry must come from the model trained on the
        # other fold; verified through fold bookkeeping plus a spy trainer.
        examples = feature_examples(8)
        seen_training_sets = []

        class SpyBase(TrainableBase):
            def fit_predictor(self, train_part):
                ids = {ex.post_id for ex in train_part}
                seen_training_sets.append(ids)

                def predictor(targets):
                    assert all(ex.post_id not in ids for ex in targets)
                    return np.full(len(targets), 0.5)

                return predictor

        base = SpyBase(model_id="spy", kind="m4", epochs=1)
        ds = build_oof_matrix([base], examples, folds=2, seed=0)
        assert len(seen_training_sets) == 2
        assert ds.fold_of.min() == 0 and ds.fold_of.max() == 1

    def test_trainable_base_end_to_end(self):
        examples = feature_examples(16, n_windows=2)
        base = TrainableBase(model_id="m4", kind="m4", epochs=6, seed=1)
        ds = build_oof_matrix([base], examples, folds=2, seed=0)
        assert ds.z.shape == (16, 1)
        assert np.all((ds.z >= 0) & (ds.z <= 1))

    def test_needs_two_folds(self):
        with pytest.raises(EnsembleError):
            build_oof_matrix([], feature_examples(4), folds=1)

    def test_unlabeled_rejected(self):
        examples = feature_examples(4)
        examples[0] = TrainExample("p000", examples[0].features, None)
        with pytest.raises(EnsembleError, match="p000"):
            build_oof_matrix([], examples, folds=2)


class TestMeta:
    @pytest.mark.parametrize("kind", ["logistic", "ridge", "linear_svm", "gradient_boosting"])
    def test_all_kinds_beat_single_base(self, kind):
        ds = synthetic_stack()
        learner = fit_meta(ds, kind)
        preds = [predict_meta(learner, ds.z[i]).label_hat for i in range(len(ds.y))]
        accuracy = (np.array(preds) == ds.y).mean()
        assert accuracy > 0.8  # single base is ~0.8 by construction

    def test_unanimous_bases(self):
        ds = synthetic_stack()
        learner = fit_meta(ds, "logistic")
        pred = predict_meta(learner, np.array([0.99, 0.99, 0.99]))
        assert pred.label_hat == 1

    def test_in_sample_consistency(self):
        ds = synthetic_stack(n=100)
        learner = fit_meta(ds, "gradient_boosting")
        row = ds.z[17]
        assert predict_meta(learner, row).label_hat == predict_meta(learner, row.copy()).label_hat

    def test_width_checked(self):
        learner = fit_meta(synthetic_stack(), "ridge")
        with pytest.raises(EnsembleError, match="width"):
            predict_meta(learner, np.array([0.5]))

    def test_untrained_rejected(self):
        learner = MetaLearner(kind="ridge", n_features=3)
        with pytest.raises(EnsembleError, match="not trained"):
            predict_meta(learner, np.zeros(3))

    def test_single_class_rejected(self):
        ds = synthetic_stack(n=50)
        ds.y[:] = 1.0
        with pytest.raises(EnsembleError):
            fit_meta(ds, "logistic")

    def test_xgboost_alias(self):
        learner = fit_meta(synthetic_stack(), "xgboost")
        assert learner.kind == "gradient_boosting"

    def test_base_id_relabeling_invariant(self):
        ds = synthetic_stack()
        renamed = StackingDataset(
            z=ds.z, y=ds.y, base_ids=["x", "y", "z"], post_ids=ds.post_ids, fold_of=ds.fold_of
        )
        a = fit_meta(ds, "ridge")
        b = fit_meta(renamed, "ridge")
        row = ds.z[3]
        assert predict_meta(a, row).prob_positive == predict_meta(b, row).prob_positive

    def test_serialization_roundtrip(self):
        for kind in ("logistic", "ridge", "linear_svm", "gradient_boosting"):
            learner = fit_meta(synthetic_stack(), kind)
            back = MetaLearner.from_dict(json.loads(json.dumps(learner.to_dict())))
            row = np.array([0.2, 0.7, 0.9])
            assert predict_meta(back, row).prob_positive == pytest.approx(
                predict_meta(learner, row).prob_positive
            )


class TestSpecFile:
    def test_parse(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(
            json.dumps(
                {
                    "bases": [
                        {"type": "file", "path": "m1.csv", "id": "M1"},
                        {"type": "train", "model": "m4", "seed": 7},
                    ],
                    "meta": "xgboost",
                    "folds": 3,
                    "seed": 9,
                }
            )
        )
        spec = parse_ensemble_spec(spec_path)
        assert spec["meta"] == "gradient_boosting"
        assert isinstance(spec["bases"][0], FileBase)
        assert isinstance(spec["bases"][1], TrainableBase)
        assert spec["bases"][1].seed == 7
        assert spec["folds"] == 3

    def test_bad_meta(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps({"bases": [], "meta": "forest"}))
        with pytest.raises(EnsembleError, match="forest"):
            parse_ensemble_spec(spec_path)

    def test_heterogeneous_fixture_columns(self):
        # the committed M1/M2 fixture files line up with the demo corpus
        from anxpipe.corpus import load_posts
        from anxpipe.linguafeat import sample_resources_path  # noqa: F401  (env check)

        posts = load_posts(
            Path(__file__).parents[1] / "src/anxpipe/data/demo_corpus.jsonl"
        )[:12]
        examples = [
            TrainExample(p.id, np.zeros((1, 4)), p.label) for p in posts
        ]
        bases = [
            FileBase("M1", str(FIXTURES / "m1_preds.csv")),
            FileBase("M2", str(FIXTURES / "m2_preds.csv")),
        ]
        ds = build_oof_matrix(bases, examples, folds=2)
        assert ds.base_ids == ["M1", "M2"]
        assert ds.z.shape == (12, 2)
