"""Acceptance suite: one test per release criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.

The published-results consistency criterion carries a known data defect: the
BiLSTM row of the source table reports F1=59.01 against P=60.03/R=58.92,
but the harmonic mean of that P/R pair is 59.47, so the +/-0.02 tolerance
cannot hold. That row is marked as a strict expected failure rather than
silently widened; every other published row satisfies the identity.
"""

import json
import math
import time
from pathlib import Path

import numpy as np
import pytest

from anxpipe.corpus import Post, clean_text
from anxpipe.ensemble import StackingDataset, fit_meta, predict_meta
from anxpipe.evalkit import harmonic_mean
from anxpipe.exchange import (
    EMBED_DIM,
    EmbeddingSequence,
    ExchangeError,
    read_embeddings,
    write_embeddings,
)
from anxpipe.linguafeat import (
    READABILITY_FEATURES,
    SegmentationError,
    build_registry,
    extract_feature_matrix,
    load_resources,
    readability_features,
    recursive_feature_elimination,
    sample_resources_path,
    segment_sentences,
)
from anxpipe.models import (
    M4Config,
    M5Config,
    TrainConfig,
    TrainExample,
    m4_backward,
    m4_forward,
    m4_init,
    m5_backward,
    m5_forward,
    m5_init,
    predict,
    train_model,
)
from anxpipe.neuralcore import (
    CheckpointError,
    bilstm_backward,
    bilstm_forward,
    cross_entropy,
    grad_check,
    init_bilstm,
    read_tensors,
    write_tensors,
)

DATA_DIR = Path(__file__).parents[1] / "src/anxpipe/data"


def verdict(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}" + (f" ({detail})" if detail else ""))


# --- criterion: gradient fidelity ---------------------------------------------


class TestGradientFidelity:
    def test_bilstm_m4_head_and_m5_under_1e4(self):
        start = time.monotonic()
        rng = np.random.default_rng(21)

        # BiLSTM H=8, L=2, N=4
        params = init_bilstm(6, 8, 2, rng)
        x = rng.normal(size=(4, 6))
        w_target = rng.normal(size=16)
        tensors = {}
        for i, (f, b) in enumerate(params.layers):
            tensors[f"l{i}.f.wx"], tensors[f"l{i}.f.wh"], tensors[f"l{i}.f.b"] = f.wx, f.wh, f.b
            tensors[f"l{i}.b.wx"], tensors[f"l{i}.b.wh"], tensors[f"l{i}.b.b"] = b.wx, b.wh, b.b

        def bilstm_loss(_):
            _, final, cache = bilstm_forward(x, params)
            layer_grads, _ = bilstm_backward(w_target, cache)
            grads = {}
            for i, (gf, gb) in enumerate(layer_grads):
                grads[f"l{i}.f.wx"], grads[f"l{i}.f.wh"], grads[f"l{i}.f.b"] = gf
                grads[f"l{i}.b.wx"], grads[f"l{i}.b.wh"], grads[f"l{i}.b.b"] = gb
            return float(final @ w_target), grads

        err_bilstm = grad_check(bilstm_loss, tensors, max_coords=220, seed=1)

        # M4 including the fc1/fc2/softmax head
        m4_cfg = M4Config(input_dim=6, hidden=8, layers=1, fc1_out=8, fc2_out=4)
        m4 = m4_init(m4_cfg, seed=3)
        xm4 = rng.normal(size=(4, 6))

        def m4_loss(_):
            probs, cache = m4_forward(xm4, m4)
            return cross_entropy(probs, 1), m4_backward(1, cache)

        err_m4 = grad_check(m4_loss, m4.tensors(), max_coords=220, seed=2)

        # full tiny M5
        m5_cfg = M5Config(
            input_dim=6, hidden_tok=4, layers_tok=1, hidden_feat=4, layers_feat=1,
            fc1_out=4, fc2_out=4, fc3_out=4,
        )
        m5 = m5_init(m5_cfg, seed=5)
        tok = rng.normal(size=(3, 768))
        cm = rng.normal(size=(2, 6))

        def m5_loss(_):
            probs, cache = m5_forward(tok, cm, m5)
            return cross_entropy(probs, 0), m5_backward(0, cache)

        err_m5 = grad_check(m5_loss, m5.tensors(), max_coords=220, seed=4)

        elapsed = time.monotonic() - start
        worst = max(err_bilstm, err_m4, err_m5)
        ok = worst < 1e-4 and elapsed < 30.0
        verdict(
            "gradient fidelity < 1e-4 (BiLSTM, M4 head, full M5)",
            ok,
            f"max rel err {worst:.2e}, {elapsed:.1f}s",
        )
        assert err_bilstm < 1e-4
        assert err_m4 < 1e-4
        assert err_m5 < 1e-4
        assert elapsed < 30.0


# --- criterion: published-table consistency ------------------------------------

TABLE_ROWS = [
    ("val M1", 81.85, 91.91, 86.59),
    ("val M2", 79.46, 85.98, 82.59),
    ("val M3", 69.36, 74.55, 71.86),
    pytest.param(
        "val M4", 60.03, 58.92, 59.01,
        marks=pytest.mark.xfail(
            strict=True,
            reason="published BiLSTM row is internally inconsistent: "
            "H(60.03, 58.92) = 59.47, which is 0.46 from the published 59.01",
        ),
    ),
    ("val M5", 83.30, 90.76, 86.87),
    ("val M6", 85.57, 92.28, 88.80),
    ("val M7", 84.90, 92.92, 88.73),
    ("val M8", 85.02, 94.06, 89.31),
    ("test M6", 81.07, 86.35, 83.63),
    ("test M12", 80.60, 87.17, 83.76),
]


class TestTableConsistency:
    @pytest.mark.parametrize("row,p,r,f1", TABLE_ROWS)
    def test_published_f1_is_harmonic_mean(self, row, p, r, f1):
        recomputed = harmonic_mean(p, r)
        ok = abs(recomputed - f1) <= 0.02
        verdict(
            f"table consistency {row}: H({p}, {r}) vs {f1}",
            ok,
            f"recomputed {recomputed:.2f}",
        )
        assert ok


# --- criterion: readability oracle ---------------------------------------------


class TestReadabilityOracle:
    def test_all_indices_match_oracle_to_1e9(self):
        oracle = json.loads(
            (Path(__file__).parent / "data" / "readability_oracle.json").read_text()
        )
        worst = 0.0
        for case in oracle:
            values = readability_features(segment_sentences(case["text"]))
            for name, value in zip(READABILITY_FEATURES, values):
                worst = max(worst, abs(value - case["values"][name]))
        ok = worst <= 1e-9
        verdict(
            "readability oracle: 14 indices x 10 texts to 1e-9",
            ok,
            f"max abs dev {worst:.2e}",
        )
        assert ok


# --- criterion: overfit sanity --------------------------------------------------


class TestOverfitSanity:
    def test_m4_reaches_100pct_train_accuracy(self):
        start = time.monotonic()
        rng = np.random.default_rng(17)
        examples = []
        for i in range(32):
            label = i % 2
            rows = rng.normal(0.8 if label else -0.8, 1.0, size=(int(rng.integers(1, 4)), 168))
            examples.append(TrainExample(f"syn{i:02d}", rows, label))
        config = M4Config(input_dim=168, hidden=32, layers=1, fc1_out=32, fc2_out=16)
        tc = TrainConfig(epochs=200, lr=1e-3, seed=42, early_stop_patience=5)
        params, history = train_model("m4", examples, examples, tc, config)
        preds = predict(params, examples)
        gold = {ex.post_id: ex.label for ex in examples}
        accuracy = sum(p.label_hat == gold[p.post_id] for p in preds) / len(preds)
        elapsed = time.monotonic() - start
        ok = accuracy == 1.0 and len(history["train_loss"]) <= 200 and elapsed < 60.0
        verdict(
            "overfit sanity: M4 (H=32, L=1) hits 100% train accuracy",
            ok,
            f"{len(history['train_loss'])} epochs, acc {accuracy:.3f}, {elapsed:.1f}s",
        )
        assert accuracy == 1.0
        assert elapsed < 60.0


# --- criterion: stacking gain ----------------------------------------------------


class TestStackingGain:
    def test_every_meta_kind_beats_087(self):
        start = time.monotonic()
        rng = np.random.default_rng(42)
        n, k, accuracy = 2000, 3, 0.8
        y = (rng.random(n) < 0.5).astype(np.float64)
        z = np.empty((n, k))
        for j in range(k):
            correct = rng.random(n) < accuracy
            target = np.where(correct, y, 1 - y)
            z[:, j] = np.where(
                target == 1, rng.uniform(0.70, 0.95, n), rng.uniform(0.05, 0.30, n)
            )
        half = n // 2
        train = StackingDataset(
            z=z[:half], y=y[:half], base_ids=list("abc"),
            post_ids=[f"p{i}" for i in range(half)], fold_of=np.full(half, -1),
        )
        majority_ceiling = 3 * accuracy**2 * (1 - accuracy) + accuracy**3
        results = {}
        for kind in ("logistic", "ridge", "linear_svm", "gradient_boosting"):
            learner = fit_meta(train, kind)
            labels = np.array(
                [predict_meta(learner, z[i]).label_hat for i in range(half, n)]
            )
            results[kind] = float((labels == y[half:]).mean())
        elapsed = time.monotonic() - start
        ok = all(acc >= 0.87 for acc in results.values()) and elapsed < 60.0
        detail = ", ".join(f"{k}={v:.3f}" for k, v in results.items())
        verdict(
            f"stacking gain >= 0.87 (analytic ceiling {majority_ceiling:.3f})",
            ok,
            f"{detail}, {elapsed:.1f}s",
        )
        for kind, acc in results.items():
            assert acc >= 0.87, kind
        assert elapsed < 60.0


# --- criterion: RFE recovery -----------------------------------------------------


class TestRFERecovery:
    def test_informative_features_recovered(self):
        hits = 0
        for seed in range(10):
            rng = np.random.default_rng(seed)
            n = 500
            y = (rng.random(n) < 0.5).astype(np.float64)
            informative = np.column_stack(
                [y + rng.normal(0, 0.5, n) for _ in range(5)]
            )
            noise = rng.normal(size=(n, 45))
            x = np.column_stack([informative, noise])
            mask = recursive_feature_elimination(x, y, target_k=10, step=5)
            if int(mask[:5].sum()) >= 4:
                hits += 1
        ok = hits >= 8
        verdict("RFE recovery: >=4 of 5 informative in >=8 of 10 seeds", ok, f"{hits}/10")
        assert hits >= 8


# --- criterion: end-to-end determinism --------------------------------------------


def run_demo_pipeline(workdir: Path) -> dict:
    from anxpipe.cli import run

    workdir.mkdir(parents=True, exist_ok=True)
    corpus = DATA_DIR / "demo_corpus.jsonl"
    clean = workdir / "clean.jsonl"
    feats = workdir / "feats"
    parts = {n: workdir / f"{n}.jsonl" for n in ("train", "val", "test")}
    model = workdir / "m4.nnck"
    preds = workdir / "preds.csv"
    table = workdir / "eval.txt"

    assert run(["--seed", "42", "clean", "--in", str(corpus), "--out", str(clean)]) == 0
    assert run(["--seed", "42", "extract", "--in", str(clean), "--out-dir", str(feats)]) == 0
    assert (
        run(
            [
                "--seed", "42", "split", "--in", str(clean),
                "--train", str(parts["train"]), "--val", str(parts["val"]),
                "--test", str(parts["test"]),
            ]
        )
        == 0
    )
    assert (
        run(
            [
                "--seed", "42", "train", "m4",
                "--train-corpus", str(parts["train"]), "--val-corpus", str(parts["val"]),
                "--features", str(feats), "--out", str(model), "--epochs", "4",
                "--preset", "desk",
            ]
        )
        == 0
    )
    assert (
        run(
            [
                "--seed", "42", "predict", "--model", str(model),
                "--in", str(parts["test"]), "--features", str(feats), "--out", str(preds),
            ]
        )
        == 0
    )
    assert (
        run(
            [
                "--seed", "42", "eval", "--pred", str(preds),
                "--gold", str(parts["test"]), "--name", "demo-m4", "--out", str(table),
            ]
        )
        == 0
    )
    artifacts = {}
    for path in sorted([clean, model, preds, table, *feats.glob("*.cmfx")]):
        artifacts[path.name] = path.read_bytes()
    return artifacts


class TestDeterminism:
    def test_pipeline_twice_byte_identical(self, tmp_path, capsys):
        first = run_demo_pipeline(tmp_path / "run1")
        second = run_demo_pipeline(tmp_path / "run2")
        capsys.readouterr()  # swallow subcommand chatter before the verdict
        same_names = set(first) == set(second)
        diffs = [name for name in first if first[name] != second.get(name)]
        ok = same_names and not diffs
        verdict(
            "determinism: demo pipeline twice, byte-identical artifacts",
            ok,
            f"{len(first)} artifacts" + (f", diffs: {diffs[:3]}" if diffs else ""),
        )
        assert same_names
        assert not diffs


# --- criterion: exchange/checkpoint format robustness -------------------------------


class TestFormatRobustness:
    def test_thousand_roundtrips_and_truncation_fuzz(self, tmp_path):
        rng = np.random.default_rng(77)

        temb = tmp_path / "x.temb"
        for trial in range(1000):
            seqs = []
            for i in range(int(rng.integers(0, 3))):
                m = int(rng.integers(1, 5))
                vec = rng.normal(size=(m, EMBED_DIM)).astype(np.float32).astype(np.float64)
                seqs.append(EmbeddingSequence(f"id{trial}-{i}", "m", vec))
            write_embeddings(seqs, temb)
            back = read_embeddings(temb)
            assert len(back) == len(seqs)
            for a, b in zip(seqs, back):
                assert a.post_id == b.post_id
                assert np.array_equal(a.vectors, b.vectors)  # exact at f32

        nnck = tmp_path / "x.nnck"
        for trial in range(1000):
            tensors = {
                f"t{i}": rng.normal(size=tuple(rng.integers(1, 4, size=int(rng.integers(1, 3)))))
                for i in range(int(rng.integers(1, 4)))
            }
            write_tensors(tensors, nnck)
            back = read_tensors(nnck)
            for name in tensors:
                assert np.array_equal(tensors[name], back[name])  # exact at f64

        # truncation fuzz: every prefix must fail cleanly, never crash or overallocate
        write_embeddings(
            [EmbeddingSequence("p", "m", rng.normal(size=(3, EMBED_DIM)))], temb
        )
        temb_bytes = temb.read_bytes()
        for cut in range(0, len(temb_bytes) - 1, 97):
            (tmp_path / "part.temb").write_bytes(temb_bytes[:cut])
            with pytest.raises(ExchangeError):
                read_embeddings(tmp_path / "part.temb")

        write_tensors({"w": rng.normal(size=(6, 6))}, nnck)
        nnck_bytes = nnck.read_bytes()
        for cut in range(0, len(nnck_bytes) - 1, 41):
            (tmp_path / "part.nnck").write_bytes(nnck_bytes[:cut])
            with pytest.raises(CheckpointError):
                read_tensors(tmp_path / "part.nnck")

        verdict("format robustness: 1000+1000 round trips, truncation fuzz clean", True)


# --- criterion: feature totality fuzz ------------------------------------------------


class TestFeatureTotalityFuzz:
    POOLS = (
        (0x20, 0x7F),
        (0xA0, 0x180),
        (0x370, 0x400),
        (0x4E00, 0x4E80),
        (0x1F300, 0x1F500),
        (0x2000, 0x2070),
    )

    def random_text(self, rng) -> str:
        n = int(rng.integers(0, 120))
        return "".join(
            chr(int(rng.integers(*self.POOLS[int(rng.integers(len(self.POOLS)))])))
            for _ in range(n)
        )

    def test_10k_random_unicode_posts_all_finite(self):
        bundle = load_resources(sample_resources_path())
        registry = build_registry(bundle)
        rng = np.random.default_rng(99)
        extracted = empty = 0
        for i in range(10_000):
            text = clean_text(self.random_text(rng))
            post = Post(f"fuzz{i}", "", text)
            try:
                fm = extract_feature_matrix(post, registry, bundle, seed=1)
            except SegmentationError:
                empty += 1  # documented empty-input case
                continue
            assert np.all(np.isfinite(fm.rows)), f"non-finite features for {text!r}"
            assert fm.rows.shape[1] == registry.n_selected
            extracted += 1
        ok = extracted + empty == 10_000
        verdict(
            "feature totality: 10,000 random unicode posts all finite",
            ok,
            f"{extracted} extracted, {empty} documented-empty",
        )
        assert ok
