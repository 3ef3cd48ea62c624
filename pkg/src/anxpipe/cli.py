"""Single executable for the pipeline: clean, split, extract, rfe, train,
stack, predict, eval, report.

Settings resolve with precedence flag > ANXPIPE_SEED env var (seed only) >
config file > built-in default. Config files are flat ``key = value`` lines:
``#`` comments, optional double quotes around strings, ints/floats/booleans
literal. Data goes to stdout/files; logs and the reproducibility header
(version, seed, config hash) go to stderr. Exit codes: 0 success, 1 usage
error, 2 data error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import CorpusError, Post, SplitSpec, clean_posts, load_posts, save_posts, split_dataset
from .ensemble import (
    EnsembleError,
    build_oof_matrix,
    fit_full_bases,
    fit_meta,
    parse_ensemble_spec,
    predict_meta,
    stack_predict,
)
from .evalkit import EvalError, Metrics, compute_metrics, metrics_to_json, render_report
from .exchange import ExchangeError, read_embeddings, write_predictions
from .linguafeat import (
    FeatureError,
    ResourceError,
    SegmentationError,
    apply_standardizer,
    build_registry,
    extract_feature_matrix,
    fit_standardizer,
    load_resources,
    read_feature_matrix,
    recursive_feature_elimination,
    sample_resources_path,
    write_feature_matrix,
)
from .models import (
    M4_PRESETS,
    M5_PRESETS,
    TrainConfig,
    TrainExample,
    TrainingError,
    load_model,
    predict,
    save_model,
    train_model,
)
from .neuralcore import CheckpointError

DATA_ERRORS = (
    CorpusError,
    EnsembleError,
    EvalError,
    ExchangeError,
    FeatureError,
    ResourceError,
    SegmentationError,
    TrainingError,
    CheckpointError,
    ValueError,
    OSError,
)


def _read_config(path: str | None) -> dict:
    if not path:
        return {}
    config: dict = {}
    for line_no, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CorpusError(f"config line {line_no}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if value.startswith('"') and value.endswith('"') and len(value) >= 2:
            config[key] = value[1:-1]
        elif value.lower() in ("true", "false"):
            config[key] = value.lower() == "true"
        else:
            try:
                config[key] = int(value)
            except ValueError:
                try:
                    config[key] = float(value)
                except ValueError:
                    config[key] = value
    return config


def _resolve_seed(args, config: dict) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("ANXPIPE_SEED")
    if env is not None:
        return int(env)
    return int(config.get("seed", 42))


def _setting(args, config: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key, default)


def _emit_header(command: str, seed: int, config: dict) -> None:
    digest = hashlib.sha256(
        json.dumps(config, sort_keys=True, default=str).encode("utf-8")
    ).hexdigest()[:12]
    print(
        f"anxpipe {__version__} | {command} | seed={seed} | config={digest}",
        file=sys.stderr,
    )


def _load_bundle(args, config: dict):
    path = _setting(args, config, "resources", None)
    return load_resources(path if path else sample_resources_path())


def _registry(args, config: dict, bundle):
    mask_path = _setting(args, config, "mask", None)
    mask_ids = json.loads(Path(mask_path).read_text("utf-8")) if mask_path else None
    return build_registry(bundle, mask_ids=mask_ids)


# --- subcommand implementations ----------------------------------------------


def _cmd_clean(args, config: dict, seed: int) -> int:
    posts = clean_posts(load_posts(args.infile))
    save_posts(posts, args.out, use_clean=True)
    print(f"cleaned {len(posts)} posts -> {args.out}", file=sys.stderr)
    return 0


def _cmd_split(args, config: dict, seed: int) -> int:
    posts = load_posts(args.infile)
    fracs = [float(v) for v in str(_setting(args, config, "fracs", "0.75,0.084,0.166")).split(",")]
    if len(fracs) != 3:
        raise CorpusError("--fracs needs train,val,test")
    spec = SplitSpec(*fracs, seed=seed)
    train, val, test = split_dataset(posts, spec)
    for part, path in ((train, args.train), (val, args.val), (test, args.test)):
        save_posts(part, path)
    print(
        f"split {len(posts)} -> {len(train)}/{len(val)}/{len(test)}", file=sys.stderr
    )
    return 0


def _extract_one(payload):
    post, registry, bundle, window_len, stride, seed = payload
    return extract_feature_matrix(post, registry, bundle, window_len, stride, seed)


def _cmd_extract(args, config: dict, seed: int) -> int:
    posts = load_posts(args.infile)
    posts = [
        p if p.clean_text else Post(p.id, p.raw_text, p.raw_text, p.label)
        for p in clean_posts(posts)
    ]
    bundle = _load_bundle(args, config)
    registry = _registry(args, config, bundle)
    window_len = int(_setting(args, config, "window_len", 1))
    stride = int(_setting(args, config, "stride", 1))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = int(_setting(args, config, "jobs", 1))
    payloads = [(p, registry, bundle, window_len, stride, seed) for p in posts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            matrices = list(pool.map(_extract_one, payloads, chunksize=8))
    else:
        matrices = [_extract_one(p) for p in payloads]
    for fm in matrices:
        write_feature_matrix(fm, out_dir / f"{fm.post_id}.cmfx")
    print(f"extracted {len(matrices)} matrices -> {out_dir}", file=sys.stderr)
    return 0


def _cmd_rfe(args, config: dict, seed: int) -> int:
    posts = clean_posts(load_posts(args.infile))
    bundle = _load_bundle(args, config)
    registry = build_registry(bundle, mask_ids=None)
    if registry.n_selected != len(registry.entries):
        registry = build_registry(bundle, mask_ids=registry.feature_ids)
    rows, labels = [], []
    for post in posts:
        if post.label is None:
            raise CorpusError(f"post {post.id!r} is unlabeled")
        fm = extract_feature_matrix(post, registry, bundle, seed=seed)
        rows.append(fm.rows)
        labels.extend([post.label] * fm.rows.shape[0])
    x = np.vstack(rows)
    y = np.array(labels, dtype=np.float64)
    target_k = int(_setting(args, config, "target_k", 168))
    step = int(_setting(args, config, "step", 10))
    mask = recursive_feature_elimination(x, y, target_k=target_k, step=step)
    ids = [fid for fid, keep in zip(registry.feature_ids, mask) if keep]
    Path(args.out).write_text(json.dumps(ids, indent=0) + "\n", encoding="utf-8")
    print(f"selected {len(ids)} features -> {args.out}", file=sys.stderr)
    return 0


def _load_examples(corpus_path, features_dir, embeddings_path=None, require_labels=True):
    """Returns (examples, feature_ids) joined from corpus + .cmfx files."""
    posts = load_posts(corpus_path)
    emb_by_id = {}
    if embeddings_path:
        emb_by_id = {seq.post_id: seq.vectors for seq in read_embeddings(embeddings_path)}
    examples = []
    feature_ids = None
    for post in posts:
        if require_labels and post.label is None:
            raise CorpusError(f"post {post.id!r} is unlabeled")
        fm = read_feature_matrix(Path(features_dir) / f"{post.id}.cmfx")
        if feature_ids is None:
            feature_ids = fm.feature_ids
        elif fm.feature_ids != feature_ids:
            raise CorpusError(f"feature id mismatch in {post.id}.cmfx")
        examples.append(
            TrainExample(
                post_id=post.id,
                features=fm.rows,
                label=post.label,
                embedding=emb_by_id.get(post.id),
            )
        )
    return examples, feature_ids


def _standardize_examples(examples, standardizer):
    out = []
    for ex in examples:
        safe = standardizer.std >= 1e-12
        rows = np.where(
            safe,
            (ex.features - standardizer.mean) / np.where(safe, standardizer.std, 1.0),
            0.0,
        )
        out.append(
            TrainExample(
                post_id=ex.post_id, features=rows, label=ex.label, embedding=ex.embedding
            )
        )
    return out


def _cmd_train(args, config: dict, seed: int) -> int:
    kind = args.model
    embeddings = _setting(args, config, "embeddings", None)
    if kind == "m5" and not embeddings:
        raise CorpusError("training m5 needs --embeddings")
    train_examples, feature_ids = _load_examples(args.train_corpus, args.features, embeddings)
    val_examples, _ = _load_examples(args.val_corpus, args.features, embeddings)

    from .linguafeat.extract import FeatureMatrix

    matrices = [
        FeatureMatrix(ex.post_id, ex.features, feature_ids) for ex in train_examples
    ]
    standardizer = fit_standardizer(matrices)
    train_examples = _standardize_examples(train_examples, standardizer)
    val_examples = _standardize_examples(val_examples, standardizer)

    preset = str(_setting(args, config, "preset", "desk"))
    presets = M4_PRESETS if kind == "m4" else M5_PRESETS
    if preset not in presets:
        raise CorpusError(f"unknown preset {preset!r}")
    model_config = presets[preset]
    width = train_examples[0].features.shape[1]
    if model_config.input_dim != width:
        from dataclasses import replace

        model_config = replace(model_config, input_dim=width)
    tc = TrainConfig(
        epochs=int(_setting(args, config, "epochs", 30)),
        lr=float(_setting(args, config, "lr", 1e-3)),
        seed=seed,
        early_stop_patience=(
            int(_setting(args, config, "patience", 0)) or None
        ),
    )
    params, history = train_model(kind, train_examples, val_examples, tc, model_config)
    save_model(params, args.out, standardizer=standardizer)
    if args.history:
        Path(args.history).write_text(json.dumps(history, sort_keys=True), encoding="utf-8")
    best = max(history["val_f1"]) if history["val_f1"] else 0.0
    print(f"trained {kind} ({len(history['train_loss'])} epochs, best val F1 {best:.4f}) -> {args.out}", file=sys.stderr)
    return 0


def _cmd_predict(args, config: dict, seed: int) -> int:
    params, standardizer = load_model(args.model_path)
    embeddings = _setting(args, config, "embeddings", None)
    examples, _ = _load_examples(args.infile, args.features, embeddings, require_labels=False)
    if standardizer is not None:
        examples = _standardize_examples(examples, standardizer)
    jobs = int(_setting(args, config, "jobs", 1))
    if jobs > 1:
        # params are immutable during inference, so threads are safe
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            preds = list(pool.map(lambda ex: predict(params, [ex])[0], examples))
    else:
        preds = predict(params, examples)
    write_predictions(preds, args.out)
    print(f"wrote {len(preds)} predictions -> {args.out}", file=sys.stderr)
    return 0


def _cmd_stack(args, config: dict, seed: int) -> int:
    spec = parse_ensemble_spec(args.spec)
    embeddings = _setting(args, config, "embeddings", None)
    examples, feature_ids = _load_examples(args.train_corpus, args.features, embeddings)

    from .linguafeat.extract import FeatureMatrix

    matrices = [
        FeatureMatrix(ex.post_id, ex.features, feature_ids) for ex in examples
    ]
    standardizer = fit_standardizer(matrices)
    examples = _standardize_examples(examples, standardizer)

    ds = build_oof_matrix(spec["bases"], examples, folds=spec["folds"], seed=spec["seed"])
    learner = fit_meta(ds, spec["meta"], spec["hyper"])
    Path(args.out).write_text(json.dumps(learner.to_dict(), sort_keys=True), encoding="utf-8")
    in_sample = [predict_meta(learner, ds.z[i], pid) for i, pid in enumerate(ds.post_ids)]
    gold = dict(zip(ds.post_ids, ds.y.astype(int)))
    m = compute_metrics(in_sample, gold)
    print(
        f"stacked {len(spec['bases'])} bases, OOF F1 {m.f1:.4f} -> {args.out}",
        file=sys.stderr,
    )
    if args.predict_corpus:
        if not args.predict_out:
            raise CorpusError("--predict-corpus needs --predict-out")
        targets, _ = _load_examples(
            args.predict_corpus, args.features, embeddings, require_labels=False
        )
        targets = _standardize_examples(targets, standardizer)
        predictors = fit_full_bases(spec["bases"], examples)
        preds = stack_predict(learner, predictors, targets)
        write_predictions(preds, args.predict_out)
        print(f"wrote {len(preds)} ensemble predictions -> {args.predict_out}", file=sys.stderr)
    return 0


def _gold_labels(path) -> dict:
    gold = {}
    for post in load_posts(path):
        if post.label is None:
            raise CorpusError(f"gold post {post.id!r} is unlabeled")
        gold[post.id] = post.label
    return gold


def _cmd_eval(args, config: dict, seed: int) -> int:
    from .exchange import read_predictions
    from .models import Prediction

    preds_set = read_predictions(args.pred)
    gold = _gold_labels(args.gold)
    preds = [
        Prediction(pid, prob, int(prob >= 0.5))
        for pid, prob in preds_set.entries.items()
    ]
    metrics = compute_metrics(preds, gold)
    name = args.name or Path(args.pred).stem
    table = render_report([(name, metrics)])
    sys.stdout.write(table)
    if args.json_out:
        Path(args.json_out).write_text(metrics_to_json(name, metrics), encoding="utf-8")
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
    return 0


def _cmd_report(args, config: dict, seed: int) -> int:
    rows = []
    for item in args.rows:
        data = json.loads(Path(item).read_text("utf-8"))
        rows.append(
            (
                data["name"],
                Metrics(tp=data["tp"], fp=data["fp"], fn=data["fn"], tn=data["tn"]),
            )
        )
    table = render_report(rows)
    sys.stdout.write(table)
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
    return 0


# --- argument wiring -----------------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="anxpipe", description=__doc__)
    parser.add_argument("--config", help="key = value settings file")
    parser.add_argument("--seed", type=int, help="global seed override")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("clean", help="apply text cleaning to a corpus")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("split", help="stratified train/val/test split")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--train", required=True)
    p.add_argument("--val", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--fracs")

    p = sub.add_parser("extract", help="window feature matrices per post")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.add_argument("--resources")
    p.add_argument("--mask")
    p.add_argument("--window-len", dest="window_len", type=int)
    p.add_argument("--stride", type=int)
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("rfe", help="recursive feature elimination mask")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--resources")
    p.add_argument("--target-k", dest="target_k", type=int)
    p.add_argument("--step", type=int)

    p = sub.add_parser("train", help="train the m4 or m5 classifier")
    p.add_argument("model", choices=("m4", "m5"))
    p.add_argument("--train-corpus", dest="train_corpus", required=True)
    p.add_argument("--val-corpus", dest="val_corpus", required=True)
    p.add_argument("--features", required=True, help="directory of .cmfx files")
    p.add_argument("--embeddings")
    p.add_argument("--out", required=True)
    p.add_argument("--history")
    p.add_argument("--preset")
    p.add_argument("--epochs", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--patience", type=int)

    p = sub.add_parser("predict", help="predict with a trained checkpoint")
    p.add_argument("--model", dest="model_path", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--embeddings")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("stack", help="fit a stacking ensemble from a spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("--train-corpus", dest="train_corpus", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--embeddings")
    p.add_argument("--out", required=True)
    p.add_argument("--predict-corpus", dest="predict_corpus")
    p.add_argument("--predict-out", dest="predict_out")

    p = sub.add_parser("eval", help="score predictions against gold labels")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--name")
    p.add_argument("--out")
    p.add_argument("--json-out", dest="json_out")

    p = sub.add_parser("report", help="render a metrics table from eval JSON files")
    p.add_argument("rows", nargs="+")
    p.add_argument("--out")
    return parser


_COMMANDS = {
    "clean": _cmd_clean,
    "split": _cmd_split,
    "extract": _cmd_extract,
    "rfe": _cmd_rfe,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "stack": _cmd_stack,
    "eval": _cmd_eval,
    "report": _cmd_report,
}


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        config = _read_config(args.config)
        seed = _resolve_seed(args, config)
        _emit_header(args.command, seed, config)
        return _COMMANDS[args.command](args, config, seed)
    except DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
