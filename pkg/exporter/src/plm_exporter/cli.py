"""Command-line entry: export embeddings or predictions from a checkpoint.

    plm-export --model <ref> --mode embeddings|predictions \
        --in corpus.jsonl --out path \
        [--fine-tune train.jsonl --epochs E --lr LR --seed S] [--max-tokens M]
"""

from __future__ import annotations

import argparse
import sys

from .export import ExportError, FineTuneSpec, export_embeddings, export_predictions


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plm-export", description=__doc__)
    parser.add_argument("--model", required=True, help="hub id or local checkpoint path")
    parser.add_argument("--mode", required=True, choices=("embeddings", "predictions"))
    parser.add_argument("--in", dest="infile", required=True, help="JSONL corpus")
    parser.add_argument("--out", required=True)
    parser.add_argument("--fine-tune", dest="fine_tune", help="labeled JSONL training corpus")
    parser.add_argument("--epochs", type=int, default=3)
    parser.add_argument("--lr", type=float, default=2e-5)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--batch-size", dest="batch_size", type=int, default=8)
    parser.add_argument("--max-tokens", dest="max_tokens", type=int, default=512)
    return parser


def run(argv) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.mode == "embeddings":
            if args.fine_tune:
                raise ExportError("--fine-tune only applies to predictions mode")
            count, truncated = export_embeddings(
                args.model, args.infile, args.out, max_tokens=args.max_tokens
            )
            print(
                f"wrote {count} embedding records -> {args.out}"
                + (f" ({len(truncated)} truncated, see sidecar log)" if truncated else ""),
                file=sys.stderr,
            )
        else:
            spec = None
            if args.fine_tune:
                spec = FineTuneSpec(
                    train_path=args.fine_tune,
                    epochs=args.epochs,
                    lr=args.lr,
                    seed=args.seed,
                    batch_size=args.batch_size,
                )
            count = export_predictions(
                args.model, args.infile, args.out, fine_tune=spec, max_tokens=args.max_tokens
            )
            print(f"wrote {count} prediction rows -> {args.out}", file=sys.stderr)
        return 0
    except (ExportError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
