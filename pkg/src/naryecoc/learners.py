"""Base learners for single coding-matrix columns.

Both learners predict symbols in ``{0, ..., n_classes-1}`` and are
deterministic given their seed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


class DecisionTree:
    """CART classifier: Gini impurity, best split over all features.

    Grown until leaves are pure or no split separates the samples
    (``max_depth=None``, ``min_samples_leaf=1``).  Features are scanned in
    a seeded random order and the first strictly best split is kept, so
    equally good splits are broken reproducibly.
    """

    def __init__(self, max_depth: Optional[int] = None, min_samples_leaf: int = 1, seed: int = 0):
        if min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.seed = seed

    def fit(self, X: np.ndarray, y: np.ndarray, n_classes: Optional[int] = None) -> "DecisionTree":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if X.ndim != 2 or X.shape[0] != y.shape[0] or X.shape[0] == 0:
            raise ValueError("X must be (samples, features) matching y")
        self.n_classes_ = int(n_classes if n_classes is not None else y.max() + 1)
        self.n_features_ = X.shape[1]
        rng = np.random.default_rng(self.seed)

        feature, threshold, left, right, value = [], [], [], [], []

        def new_node(counts):
            feature.append(-1)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            value.append(int(np.argmax(counts)))
            return len(feature) - 1

        onehot = np.eye(self.n_classes_, dtype=np.float64)
        root_idx = np.arange(X.shape[0])
        stack = [(new_node(np.bincount(y, minlength=self.n_classes_)), root_idx, 0)]
        while stack:
            node, idx, depth = stack.pop()
            yc = y[idx]
            if idx.size < 2 * self.min_samples_leaf or np.all(yc == yc[0]):
                continue
            if self.max_depth is not None and depth >= self.max_depth:
                continue
            split = self._best_split(X[idx], onehot[yc], rng.permutation(self.n_features_))
            if split is None:
                continue
            f, thr = split
            go_left = X[idx, f] <= thr
            li, ri = idx[go_left], idx[~go_left]
            lnode = new_node(np.bincount(y[li], minlength=self.n_classes_))
            rnode = new_node(np.bincount(y[ri], minlength=self.n_classes_))
            feature[node], threshold[node] = f, thr
            left[node], right[node] = lnode, rnode
            stack.append((rnode, ri, depth + 1))
            stack.append((lnode, li, depth + 1))

        self.feature_ = np.array(feature, dtype=np.int64)
        self.threshold_ = np.array(threshold, dtype=np.float64)
        self.left_ = np.array(left, dtype=np.int64)
        self.right_ = np.array(right, dtype=np.int64)
        self.value_ = np.array(value, dtype=np.int64)
        return self

    def _best_split(self, Xn: np.ndarray, Yn: np.ndarray, order: np.ndarray):
        n = Xn.shape[0]
        leaf = self.min_samples_leaf
        total = Yn.sum(axis=0)
        best_score, best = -np.inf, None
        n_left = np.arange(1, n, dtype=np.float64)
        n_right = n - n_left
        for f in order:
            col = Xn[:, f]
            srt = np.argsort(col, kind="stable")
            xs = col[srt]
            valid = xs[1:] > xs[:-1]
            if leaf > 1:
                valid[: leaf - 1] = False
                valid[n - leaf:] = False
            if not valid.any():
                continue
            cum = np.cumsum(Yn[srt], axis=0)[:-1]
            rest = total - cum
            # weighted Gini = 1 - (sum(l^2)/n_l + sum(r^2)/n_r) / n; maximise the bracket
            score = (cum * cum).sum(axis=1) / n_left + (rest * rest).sum(axis=1) / n_right
            score[~valid] = -np.inf
            pos = int(np.argmax(score))
            if score[pos] > best_score + 1e-12:
                lo, hi = xs[pos], xs[pos + 1]
                thr = (lo + hi) / 2.0
                if thr >= hi or not np.isfinite(thr):
                    thr = lo
                best_score, best = score[pos], (int(f), float(thr))
        return best

    def apply(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        node = np.zeros(X.shape[0], dtype=np.int64)
        active = self.feature_[node] >= 0
        while active.any():
            cur = node[active]
            go_left = X[active, self.feature_[cur]] <= self.threshold_[cur]
            node[active] = np.where(go_left, self.left_[cur], self.right_[cur])
            active = self.feature_[node] >= 0
        return node

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.value_[self.apply(X)]

    @property
    def node_count(self) -> int:
        return self.feature_.size


class NearestCentroid:
    """Assigns the symbol whose training mean is closest in Euclidean distance."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def fit(self, X: np.ndarray, y: np.ndarray, n_classes: Optional[int] = None) -> "NearestCentroid":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        self.classes_ = np.unique(y)
        self.centroids_ = np.stack([X[y == s].mean(axis=0) for s in self.classes_])
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        d = ((X[:, None, :] - self.centroids_[None, :, :]) ** 2).sum(axis=-1)
        return self.classes_[np.argmin(d, axis=1)]


@dataclass(frozen=True)
class LearnerSpec:
    kind: str = "decision_tree"
    max_depth: Optional[int] = None
    min_samples_leaf: int = 1

    def __post_init__(self):
        aliases = {"dt": "decision_tree", "tree": "decision_tree", "centroid": "nearest_centroid"}
        kind = aliases.get(self.kind, self.kind)
        if kind not in {"decision_tree", "nearest_centroid"}:
            raise ValueError(f"unknown learner {self.kind!r}")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")
        object.__setattr__(self, "kind", kind)

    @property
    def short(self) -> str:
        return "dt" if self.kind == "decision_tree" else "centroid"

    def build(self, seed: int = 0):
        if self.kind == "decision_tree":
            return DecisionTree(self.max_depth, self.min_samples_leaf, seed=seed)
        return NearestCentroid(seed=seed)
