"""ECOC ensembles: one base learner per coding-matrix column, nearest-codeword decoding."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .coding import CodingMatrix
from .datasets import Dataset, stratified_folds
from .learners import LearnerSpec
from .metrics import Metric, cross_distances


class ColumnLearner(Protocol):
    def predict(self, X: np.ndarray) -> np.ndarray: ...


class _Constant:
    def __init__(self, symbol: int):
        self.symbol = int(symbol)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.full(np.asarray(X).shape[0], self.symbol, dtype=np.int64)


def relabel(labels: np.ndarray, column: Sequence[int]) -> np.ndarray:
    """Map each class label ``t`` to its superclass symbol ``column[t]``."""
    labels = np.asarray(labels, dtype=np.int64)
    column = np.asarray(column, dtype=np.int64)
    if labels.size and (labels.min() < 0 or labels.max() >= column.size):
        raise ValueError(f"labels must lie in [0, {column.size - 1}]")
    return column[labels]


def column_seed(seed: int, column: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(column,)).generate_state(1)[0])


@dataclass(frozen=True)
class Prediction:
    labels: np.ndarray
    codewords: np.ndarray
    distances: np.ndarray
    margins: np.ndarray


def decode(codewords: np.ndarray, codebook: CodingMatrix,
           metric: Metric | str = Metric.KRONECKER) -> Prediction:
    """Nearest codebook row for each codeword; ties go to the smallest class."""
    codewords = np.atleast_2d(np.asarray(codewords, dtype=np.int64))
    d = cross_distances(codewords, codebook.entries, codebook.base, metric)
    labels = np.argmin(d, axis=1)
    best = d[np.arange(d.shape[0]), labels]
    if d.shape[1] > 1:
        second = np.partition(d, 1, axis=1)[:, 1]
    else:
        second = best
    return Prediction(labels, codewords, best, second - best)


@dataclass(frozen=True)
class EcocEnsemble:
    codebook: CodingMatrix
    learners: tuple
    metric: Metric = Metric.KRONECKER
    constant_columns: tuple = ()

    def __post_init__(self):
        if len(self.learners) != self.codebook.cols:
            raise ValueError(f"{len(self.learners)} learners for {self.codebook.cols} columns")
        if len({r.tobytes() for r in self.codebook.entries}) != self.codebook.rows:
            raise ValueError("codebook rows must be pairwise distinct")
        object.__setattr__(self, "learners", tuple(self.learners))
        object.__setattr__(self, "metric", Metric.parse(self.metric))

    def codewords(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        out = np.column_stack([np.asarray(l.predict(X), dtype=np.int64) for l in self.learners])
        if out.size and (out.min() < 0 or out.max() >= self.codebook.base):
            raise ValueError("a learner produced a symbol outside the alphabet")
        return out

    def predict(self, X: np.ndarray) -> Prediction:
        return decode(self.codewords(X), self.codebook, self.metric)


def train(X: np.ndarray, y: np.ndarray, codebook: CodingMatrix, spec: LearnerSpec | None = None,
          seed: int = 0, metric: Metric | str = Metric.KRONECKER) -> EcocEnsemble:
    """Fit one learner per column on the superclass-relabelled targets.

    A column whose relabelled targets are constant gets a constant
    predictor and is listed in ``constant_columns``.
    """
    spec = spec or LearnerSpec()
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if y.size and y.max() >= codebook.rows:
        raise ValueError(f"labels reach {y.max()} but the codebook has {codebook.rows} rows")
    learners, constant = [], []
    for j in range(codebook.cols):
        target = relabel(y, codebook.col(j))
        if np.all(target == target[0]):
            learners.append(_Constant(target[0]))
            constant.append(j)
            continue
        learner = spec.build(seed=column_seed(seed, j))
        learner.fit(X, target, codebook.base)
        learners.append(learner)
    return EcocEnsemble(codebook, tuple(learners), metric, tuple(constant))


def train_dataset(ds: Dataset, codebook: CodingMatrix, spec: LearnerSpec | None = None,
                  seed: int = 0, metric: Metric | str = Metric.KRONECKER) -> EcocEnsemble:
    if ds.class_count != codebook.rows:
        raise ValueError(f"dataset has {ds.class_count} classes, codebook has {codebook.rows} rows")
    return train(ds.features, ds.labels, codebook, spec, seed, metric)


@dataclass(frozen=True)
class CVResult:
    mean: float
    std: float
    fold_accuracies: tuple

    def row(self, dataset: str, base: int, policy: str, learner: str) -> str:
        return f"{dataset}\t{base}\t{policy}\t{learner}\t{self.mean:.4f}\t{self.std:.4f}"


def _fold_accuracy(args) -> float:
    ds, codebook, spec, seed, metric, train_idx, test_idx = args
    X_tr, y_tr = ds.subset(train_idx)
    X_te, y_te = ds.subset(test_idx)
    model = train(X_tr, y_tr, codebook, spec, seed, metric)
    return float(np.mean(model.predict(X_te).labels == y_te))


def evaluate_cv(ds: Dataset, codebook: CodingMatrix, spec: LearnerSpec | None = None,
                folds: int = 10, seed: int = 0, metric: Metric | str = Metric.KRONECKER,
                jobs: int = 1) -> CVResult:
    """Stratified k-fold accuracy; std is the population std over folds."""
    if ds.class_count != codebook.rows:
        raise ValueError(f"dataset has {ds.class_count} classes, codebook has {codebook.rows} rows")
    spec = spec or LearnerSpec()
    assignment = stratified_folds(ds, folds, seed)
    tasks = [(ds, codebook, spec, seed, metric, *assignment.split(f)) for f in range(folds)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            accs = list(pool.map(_fold_accuracy, tasks))
    else:
        accs = [_fold_accuracy(t) for t in tasks]
    arr = np.array(accs)
    return CVResult(float(arr.mean()), float(arr.std()), tuple(accs))
