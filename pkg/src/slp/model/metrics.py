"""Threshold and ranking metrics for binary classifiers."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.stats import rankdata


class SingleClassError(ValueError):
    """AUC is undefined when only one class is present."""


class SingleClassWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Metrics:
    auc: Optional[float]
    f1: float
    precision: float
    recall: float

    def as_row(self) -> tuple:
        return (self.auc, self.f1, self.precision, self.recall)


def roc_auc(y_true: Sequence[int], scores: Sequence[float]) -> float:
    """Mann-Whitney U statistic divided by n_pos * n_neg; tied scores count one half."""
    y = np.asarray(y_true)
    s = np.asarray(scores, dtype=float)
    if len(y) != len(s):
        raise ValueError("y_true and scores differ in length")
    n_pos = int(np.sum(y == 1))
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("AUC needs both classes")
    ranks = rankdata(s)  # average ranks, so ties contribute 1/2
    u = ranks[y == 1].sum() - n_pos * (n_pos + 1) / 2
    return float(u / (n_pos * n_neg))


def compute_metrics(y_true: Sequence[int], scores: Sequence[float], threshold: float = 0.5) -> Metrics:
    """Precision/recall/F1 at ``threshold`` (score >= threshold is positive) plus AUC.

    Precision with no predicted positives is 0. When only one class is present
    the AUC is reported as ``None`` and a ``SingleClassWarning`` is emitted.
    """
    y = np.asarray(y_true)
    s = np.asarray(scores, dtype=float)
    if len(y) != len(s):
        raise ValueError("y_true and scores differ in length")
    pred = s >= threshold
    tp = int(np.sum(pred & (y == 1)))
    fp = int(np.sum(pred & (y == 0)))
    fn = int(np.sum(~pred & (y == 1)))
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    try:
        auc = roc_auc(y, s)
    except SingleClassError as e:
        warnings.warn(str(e), SingleClassWarning, stacklevel=2)
        auc = None
    return Metrics(auc=auc, f1=f1, precision=precision, recall=recall)


def mean_metrics(per_fold: Sequence[Metrics]) -> Metrics:
    aucs = [m.auc for m in per_fold]
    return Metrics(
        auc=None if any(a is None for a in aucs) else float(np.mean(aucs)),
        f1=float(np.mean([m.f1 for m in per_fold])),
        precision=float(np.mean([m.precision for m in per_fold])),
        recall=float(np.mean([m.recall for m in per_fold])),
    )
