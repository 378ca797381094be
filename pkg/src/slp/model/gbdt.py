"""Gradient-boosted decision trees for binary classification (logistic loss).

Exact greedy split search over the distinct values present in each node,
second-order leaf weights, no subsampling. Everything is deterministic:
split candidates are visited in (feature, threshold) order and near-equal
gains are resolved towards the first candidate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.special import expit

from ..encoders import SparseMatrix

FORMAT_VERSION = 1
# gains within this relative distance of the best are treated as tied, so
# that summation order cannot decide between mathematically equal splits
_GAIN_RTOL = 1e-12
_GAIN_ATOL = 1e-12
_P_CLAMP = 1e-6


class DegenerateLabelsError(ValueError):
    pass


class WidthMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class GbdtParams:
    n_rounds: int = 100
    max_depth: int = 3
    learning_rate: float = 0.3
    l2_lambda: float = 1.0
    min_gain: float = 0.0

    def __post_init__(self):
        if self.n_rounds < 1:
            raise ValueError("n_rounds must be >= 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 0 < self.learning_rate <= 1:
            raise ValueError("learning_rate must be in (0, 1]")
        if self.l2_lambda < 0:
            raise ValueError("l2_lambda must be >= 0")


@dataclass
class Leaf:
    weight: float


@dataclass
class Split:
    feature: int
    threshold: float
    left: Node  # rows with value < threshold
    right: Node
    gain: float = 0.0


Node = Union[Leaf, Split]


@dataclass
class GbdtModel:
    base_score: float
    learning_rate: float
    n_features: int
    trees: list[Node] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_VERSION,
            "base_score": self.base_score,
            "learning_rate": self.learning_rate,
            "n_features": self.n_features,
            "trees": [_node_to_dict(t) for t in self.trees],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> GbdtModel:
        if d.get("format") != FORMAT_VERSION:
            raise ValueError(f"unsupported model format {d.get('format')!r}")
        return cls(
            base_score=float(d["base_score"]),
            learning_rate=float(d["learning_rate"]),
            n_features=int(d["n_features"]),
            trees=[_node_from_dict(t) for t in d["trees"]],
        )

    @classmethod
    def from_json(cls, text: str) -> GbdtModel:
        return cls.from_dict(json.loads(text))


def _node_to_dict(node: Node) -> dict:
    if isinstance(node, Leaf):
        return {"leaf": node.weight}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "gain": node.gain,
        "left": _node_to_dict(node.left),
        "right": _node_to_dict(node.right),
    }


def _node_from_dict(d: dict) -> Node:
    if "leaf" in d:
        return Leaf(float(d["leaf"]))
    return Split(
        int(d["feature"]),
        float(d["threshold"]),
        _node_from_dict(d["left"]),
        _node_from_dict(d["right"]),
        float(d.get("gain", 0.0)),
    )


def tree_depth(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_depth(node.left), tree_depth(node.right))


_P_MIN = np.nextafter(0.0, 1.0)
_P_MAX = np.nextafter(1.0, 0.0)


def sigmoid(z):
    # clipped so probabilities stay strictly inside (0, 1) even for huge margins
    return np.clip(expit(np.asarray(z, dtype=float)), _P_MIN, _P_MAX)


def as_dense(X) -> np.ndarray:
    if isinstance(X, SparseMatrix):
        return X.to_dense()
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2:
        raise ValueError("X must be 2-D")
    return arr


def logistic_loss(y, margin) -> float:
    """Mean negative log-likelihood of labels ``y`` under log-odds ``margin``."""
    y = np.asarray(y, dtype=float)
    margin = np.asarray(margin, dtype=float)
    return float(np.mean(np.logaddexp(0.0, margin) - y * margin))


def split_gain(g_left, h_left, g_right, h_right, lam):
    g, h = g_left + g_right, h_left + h_right
    return 0.5 * (g_left**2 / (h_left + lam) + g_right**2 / (h_right + lam) - g**2 / (h + lam))


class _TreeBuilder:
    def __init__(self, X: np.ndarray, order: np.ndarray, params: GbdtParams):
        self.X = X
        self.order_t = order.T  # (n_features, n_rows), rows sorted per feature
        self.params = params
        self.feat_idx = np.arange(X.shape[1])[:, None]

    def best_split(self, mask: np.ndarray, g: np.ndarray, h: np.ndarray):
        """Return (gain, feature, threshold) of the best split of ``mask``, or None."""
        m = int(mask.sum())
        n_feat = self.X.shape[1]
        if m < 2 or n_feat == 0:
            return None
        lam = self.params.l2_lambda
        idx = self.order_t[mask[self.order_t]].reshape(n_feat, m)
        vals = self.X[idx, self.feat_idx]
        # positions k where a threshold fits between sorted values k and k+1;
        # np.nonzero yields them in (feature asc, threshold asc) order
        feats, ks = np.nonzero(vals[:, :-1] < vals[:, 1:])
        if feats.size == 0:
            return None
        G = math.fsum(g[mask])
        H = math.fsum(h[mask])
        GL = np.cumsum(g[idx], axis=1)[feats, ks]
        HL = np.cumsum(h[idx], axis=1)[feats, ks]
        with np.errstate(divide="ignore", invalid="ignore"):
            gain = split_gain(GL, HL, G - GL, H - HL, lam)
        gain = np.where(np.isnan(gain), -np.inf, gain)
        best = gain.max()
        if not np.isfinite(best):
            return None
        tol = max(_GAIN_ATOL, _GAIN_RTOL * abs(best))
        c = int(np.flatnonzero(gain >= best - tol)[0])
        if not gain[c] > self.params.min_gain + tol:
            return None
        f, k = int(feats[c]), int(ks[c])
        threshold = 0.5 * (vals[f, k] + vals[f, k + 1])
        return float(gain[c]), f, float(threshold)

    def build(self, mask, g, h, depth, out_weights) -> Node:
        lam = self.params.l2_lambda
        found = self.best_split(mask, g, h) if depth < self.params.max_depth else None
        if found is None:
            G = math.fsum(g[mask])
            H = math.fsum(h[mask])
            w = -G / (H + lam) if H + lam > 0 else 0.0
            out_weights[mask] = w
            return Leaf(w)
        gain, f, thr = found
        goes_left = self.X[:, f] < thr
        left = self.build(mask & goes_left, g, h, depth + 1, out_weights)
        right = self.build(mask & ~goes_left, g, h, depth + 1, out_weights)
        return Split(f, thr, left, right, gain)


def fit(X, y, params: GbdtParams | None = None, loss_trace: list[float] | None = None) -> GbdtModel:
    """Train a boosted ensemble on ``X`` (SparseMatrix or 2-D array) and 0/1 labels ``y``.

    If ``loss_trace`` is given, the mean training log-loss is appended after
    the base score and after every round.
    """
    params = params or GbdtParams()
    Xd = as_dense(X)
    y = np.asarray(y, dtype=float)
    if Xd.shape[0] != len(y):
        raise ValueError(f"X has {Xd.shape[0]} rows but y has {len(y)} labels")
    if len(y) < 2:
        raise ValueError("need at least 2 samples")
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("labels must be 0 or 1")
    if y.min() == y.max():
        raise DegenerateLabelsError(f"only class {int(y[0])} present")

    p = min(max(float(np.mean(y)), _P_CLAMP), 1 - _P_CLAMP)
    base = math.log(p / (1 - p))
    model = GbdtModel(base_score=base, learning_rate=params.learning_rate, n_features=Xd.shape[1])

    order = np.argsort(Xd, axis=0, kind="stable")
    builder = _TreeBuilder(Xd, order, params)
    margin = np.full(len(y), base)
    all_rows = np.ones(len(y), dtype=bool)
    weights = np.empty(len(y))
    if loss_trace is not None:
        loss_trace.append(logistic_loss(y, margin))
    for _ in range(params.n_rounds):
        prob = sigmoid(margin)
        g = prob - y
        h = prob * (1.0 - prob)
        tree = builder.build(all_rows, g, h, 0, weights)
        model.trees.append(tree)
        margin = margin + params.learning_rate * weights
        if loss_trace is not None:
            loss_trace.append(logistic_loss(y, margin))
    return model


def _tree_output(node: Node, X: np.ndarray, rows: np.ndarray, out: np.ndarray) -> None:
    if isinstance(node, Leaf):
        out[rows] = node.weight
        return
    goes_left = X[rows, node.feature] < node.threshold
    _tree_output(node.left, X, rows[goes_left], out)
    _tree_output(node.right, X, rows[~goes_left], out)


def decision_function(model: GbdtModel, X) -> np.ndarray:
    Xd = as_dense(X)
    if Xd.shape[1] != model.n_features:
        raise WidthMismatchError(
            f"model trained on {model.n_features} features, got {Xd.shape[1]}"
        )
    margin = np.full(Xd.shape[0], model.base_score)
    rows = np.arange(Xd.shape[0])
    out = np.empty(Xd.shape[0])
    for tree in model.trees:
        _tree_output(tree, Xd, rows, out)
        margin += model.learning_rate * out
    return margin


def predict_proba(model: GbdtModel, X) -> np.ndarray:
    """Probability of the positive class for every row."""
    return sigmoid(decision_function(model, X))
