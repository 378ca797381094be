from .gbdt import (
    DegenerateLabelsError,
    GbdtModel,
    GbdtParams,
    Leaf,
    Split,
    WidthMismatchError,
    decision_function,
    fit,
    logistic_loss,
    predict_proba,
)
from .metrics import Metrics, SingleClassError, SingleClassWarning, compute_metrics, roc_auc
from .validation import TooFewSamplesError, cross_validate, stratified_folds

__all__ = [
    "DegenerateLabelsError",
    "GbdtModel",
    "GbdtParams",
    "Leaf",
    "Metrics",
    "SingleClassError",
    "SingleClassWarning",
    "Split",
    "TooFewSamplesError",
    "WidthMismatchError",
    "compute_metrics",
    "cross_validate",
    "decision_function",
    "fit",
    "logistic_loss",
    "predict_proba",
    "roc_auc",
    "stratified_folds",
]
