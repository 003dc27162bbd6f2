"""Threshold calibration: confusion counting, sensitivity/FPR/accuracy,
ROC sweep at 0.1 intervals, and Youden-J optimal-threshold selection.

An attempt counts as predicted-positive only when its best score clears the
threshold AND the matched template is the intended target; matching the
wrong template never counts as performing the target pose.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import EmptyCurve, EmptyDataset, UndefinedMetric
from .similarity import nearest_template
from .template_store import LabeledAttempt, TemplateStore

DEFAULT_THRESHOLDS = tuple(i / 10 for i in range(11))


@dataclass(frozen=True)
class ScoredAttempt:
    """Best nearest-neighbor score of one attempt plus its ground truth."""

    alpha: float
    matched_template_id: str
    target_template_id: str
    label: str  # "correct" | "incorrect"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class RocPoint:
    threshold: float
    sensitivity: float
    false_positive_rate: float


def score_attempts(
    store: TemplateStore, attempts: Sequence[LabeledAttempt]
) -> list[ScoredAttempt]:
    """Nearest-neighbor score of every attempt against the whole store."""
    templates = store.templates
    return [
        ScoredAttempt(
            alpha=(m := nearest_template(att.mask, templates)).alpha,
            matched_template_id=m.template_id,
            target_template_id=att.target_template_id,
            label=att.label,
        )
        for att in attempts
    ]


def confusion_counts(attempts: Sequence[ScoredAttempt], threshold: float) -> ConfusionCounts:
    if not attempts:
        raise EmptyDataset("no attempts to evaluate")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")
    tp = fp = tn = fn = 0
    for att in attempts:
        predicted_positive = (
            att.alpha >= threshold and att.matched_template_id == att.target_template_id
        )
        if att.label == "correct":
            if predicted_positive:
                tp += 1
            else:
                fn += 1
        else:
            if predicted_positive:
                fp += 1
            else:
                tn += 1
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def sensitivity(c: ConfusionCounts) -> float:
    """True-positive rate TP / (TP + FN)."""
    if c.tp + c.fn == 0:
        raise UndefinedMetric("sensitivity undefined: no positive-label attempts")
    return c.tp / (c.tp + c.fn)


def false_positive_rate(c: ConfusionCounts) -> float:
    """1 - specificity = FP / (TN + FP)."""
    if c.tn + c.fp == 0:
        raise UndefinedMetric("false positive rate undefined: no negative-label attempts")
    return c.fp / (c.tn + c.fp)


def accuracy(c: ConfusionCounts) -> float:
    """(TP + TN) / (TP + FP + TN + FN)."""
    if c.total == 0:
        raise UndefinedMetric("accuracy undefined: zero attempts")
    return (c.tp + c.tn) / c.total


def roc_curve(
    attempts: Sequence[ScoredAttempt],
    thresholds: Sequence[float] = DEFAULT_THRESHOLDS,
) -> list[RocPoint]:
    """One RocPoint per threshold, in threshold order."""
    if not attempts:
        raise EmptyDataset("no attempts to evaluate")
    if not thresholds:
        raise ValueError("thresholds must be non-empty")
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise ValueError("thresholds must be strictly increasing")
    points = []
    for t in thresholds:
        c = confusion_counts(attempts, t)
        points.append(
            RocPoint(
                threshold=t,
                sensitivity=sensitivity(c),
                false_positive_rate=false_positive_rate(c),
            )
        )
    return points


def optimal_threshold(curve: Sequence[RocPoint]) -> float:
    """Threshold maximizing Youden's J = sensitivity - FPR; ties go to the
    larger threshold."""
    if not curve:
        raise EmptyCurve("cannot pick a threshold from an empty curve")
    best = curve[0]
    for pt in curve[1:]:
        j = pt.sensitivity - pt.false_positive_rate
        best_j = best.sensitivity - best.false_positive_rate
        if j > best_j or (j == best_j and pt.threshold > best.threshold):
            best = pt
    return best.threshold


# ---------------------------------------------------------------------------
# Report emission

REPORT_FIELDS = ("threshold", "tp", "fp", "tn", "fn", "sensitivity", "fpr", "accuracy")


def evaluation_rows(
    attempts: Sequence[ScoredAttempt],
    thresholds: Sequence[float] = DEFAULT_THRESHOLDS,
) -> list[dict]:
    rows = []
    for t in thresholds:
        c = confusion_counts(attempts, t)
        rows.append(
            {
                "threshold": t,
                "tp": c.tp,
                "fp": c.fp,
                "tn": c.tn,
                "fn": c.fn,
                "sensitivity": sensitivity(c),
                "fpr": false_positive_rate(c),
                "accuracy": accuracy(c),
            }
        )
    return rows


def write_report(rows: Sequence[dict], path: str | Path) -> None:
    """Machine-readable CSV, one record per threshold, fixed field order."""
    lines = [",".join(REPORT_FIELDS)]
    for row in rows:
        lines.append(
            ",".join(
                f"{row[f]:.6f}" if f in ("threshold", "sensitivity", "fpr", "accuracy")
                else str(row[f])
                for f in REPORT_FIELDS
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def summary_table(rows: Sequence[dict]) -> str:
    """Human-readable fixed-width table of the sweep."""
    header = f"{'thr':>5} {'tp':>5} {'fp':>5} {'tn':>5} {'fn':>5} {'sens':>8} {'fpr':>8} {'acc':>8}"
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(
            f"{row['threshold']:>5.2f} {row['tp']:>5} {row['fp']:>5} {row['tn']:>5} "
            f"{row['fn']:>5} {row['sensitivity']:>8.4f} {row['fpr']:>8.4f} {row['accuracy']:>8.4f}"
        )
    return "\n".join(lines)
