"""Stratified k-fold cross-validation."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..encoders import SparseMatrix
from .gbdt import GbdtParams, fit, predict_proba
from .metrics import Metrics, compute_metrics, mean_metrics


class TooFewSamplesError(ValueError):
    pass


def stratified_folds(y: Sequence[int], folds: int) -> list[list[int]]:
    """Deal each class's samples, in input order, round-robin onto the folds.

    >>> stratified_folds([0, 0, 1, 1], 2)
    [[0, 2], [1, 3]]
    """
    if folds < 2:
        raise ValueError(f"folds must be >= 2, got {folds}")
    y = list(y)
    out: list[list[int]] = [[] for _ in range(folds)]
    for cls in sorted(set(y)):
        members = [i for i, label in enumerate(y) if label == cls]
        if len(members) < folds:
            raise TooFewSamplesError(
                f"class {cls} has {len(members)} samples, fewer than {folds} folds"
            )
        for k, i in enumerate(members):
            out[k % folds].append(i)
    return [sorted(f) for f in out]


def cross_validate(
    X: SparseMatrix,
    y: Sequence[int],
    params: GbdtParams | None = None,
    folds: int = 10,
    threshold: float = 0.5,
) -> tuple[Metrics, list[Metrics]]:
    """Mean metrics over the folds, plus the per-fold values."""
    y = [int(v) for v in y]
    if len(set(y)) < 2:
        raise TooFewSamplesError("cross-validation needs both classes")
    assignment = stratified_folds(y, folds)
    y_arr = np.asarray(y)
    per_fold = []
    for held_out in assignment:
        held = set(held_out)
        train = [i for i in range(len(y)) if i not in held]
        model = fit(X.take_rows(train), y_arr[train], params)
        scores = predict_proba(model, X.take_rows(held_out))
        per_fold.append(compute_metrics(y_arr[held_out], scores, threshold))
    return mean_metrics(per_fold), per_fold
