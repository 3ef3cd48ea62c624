"""Binary-classification metrics and fixed-width report tables.

Positive class is label 1 (self-reported diagnosis). Precision, recall and
F1 all resolve 0/0 to 0. Reports show metrics multiplied by 100 and rounded
to two decimals, columns ordered F1, P, R.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

__all__ = [
    "Metrics",
    "EvalError",
    "compute_metrics",
    "consistency_check",
    "harmonic_mean",
    "render_report",
    "metrics_to_json",
]


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class Metrics:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2.0 * p * r / (p + r) if p + r else 0.0


def compute_metrics(predictions, gold: dict) -> Metrics:
    tp = fp = fn = tn = 0
    for pred in predictions:
        if pred.post_id not in gold:
            raise EvalError(f"prediction for unknown post id {pred.post_id!r}")
        truth = int(gold[pred.post_id])
        if pred.label_hat == 1:
            if truth == 1:
                tp += 1
            else:
                fp += 1
        else:
            if truth == 1:
                fn += 1
            else:
                tn += 1
    return Metrics(tp=tp, fp=fp, fn=fn, tn=tn)


def harmonic_mean(p: float, r: float) -> float:
    return 2.0 * p * r / (p + r) if p + r else 0.0


def consistency_check(p_pct: float, r_pct: float, f1_pct: float, tol: float) -> bool:
    """Does the published F1 match the harmonic mean of published P and R?"""
    for v in (p_pct, r_pct, f1_pct):
        if not 0.0 <= v <= 100.0:
            raise EvalError(f"percentage {v!r} outside [0, 100]")
    return abs(harmonic_mean(p_pct, r_pct) - f1_pct) <= tol


def render_report(rows) -> str:
    """Fixed-width table of (model name, Metrics) rows."""
    if not rows:
        raise EvalError("report needs at least one row")
    name_width = max(len("Detection model"), max(len(name) for name, _ in rows))
    header = f"{'Detection model':<{name_width}}  {'F1':>7}  {'P':>7}  {'R':>7}"
    lines = [header, "-" * len(header)]
    for name, m in rows:
        lines.append(
            f"{name:<{name_width}}  {100 * m.f1:>7.2f}  {100 * m.precision:>7.2f}  {100 * m.recall:>7.2f}"
        )
    return "\n".join(lines) + "\n"


def metrics_to_json(name: str, m: Metrics) -> str:
    return json.dumps(
        {
            "name": name,
            "tp": m.tp,
            "fp": m.fp,
            "fn": m.fn,
            "tn": m.tn,
            "precision": m.precision,
            "recall": m.recall,
            "f1": m.f1,
        },
        sort_keys=True,
    )
