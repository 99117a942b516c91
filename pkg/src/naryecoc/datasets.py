"""Dataset ingestion, synthetic blobs and stratified folds."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np


class DatasetError(ValueError):
    pass


class ParseError(DatasetError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EmptyFileError(ParseError):
    pass


class RaggedRowError(ParseError):
    pass


class NonNumericError(ParseError):
    pass


class StratificationError(DatasetError):
    pass


@dataclass(frozen=True, eq=False)
class Dataset:
    """Dense features plus labels densely remapped to ``0..c-1``.

    ``label_values[t]`` is the original label of class ``t``.
    """

    features: np.ndarray
    labels: np.ndarray
    class_count: int
    name: str = "dataset"
    label_values: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        X = np.array(self.features, dtype=np.float64)
        y = np.array(self.labels, dtype=np.int64)
        if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
            raise DatasetError(f"features {X.shape} and labels {y.shape} do not line up")
        if not np.isfinite(X).all():
            raise DatasetError("features contain non-finite values")
        if y.size and (y.min() < 0 or y.max() >= self.class_count):
            raise DatasetError(f"labels must lie in [0, {self.class_count - 1}]")
        if np.unique(y).size != self.class_count:
            raise DatasetError("every class must occur at least once")
        values = self.label_values
        values = np.arange(self.class_count) if values is None else np.asarray(values)
        for a in (X, y, values):
            a.setflags(write=False)
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "label_values", values)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def subset(self, index: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return self.features[index], self.labels[index]


def _remap(raw_labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values, dense = np.unique(raw_labels, return_inverse=True)
    return dense.ravel().astype(np.int64), values


def load_csv(path: Union[str, Path], label_column: Union[int, str] = "last",
             has_header: bool = False, name: Optional[str] = None) -> Dataset:
    """Read a comma-separated numeric table; one column holds the labels."""
    path = Path(path)
    rows: list[list[float]] = []
    width = None
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        for lineno, record in enumerate(reader, start=1):
            if has_header and lineno == 1:
                continue
            if not record or all(not cell.strip() for cell in record):
                continue
            if width is None:
                width = len(record)
            elif len(record) != width:
                raise RaggedRowError(f"expected {width} fields, found {len(record)}", lineno)
            try:
                rows.append([float(cell) for cell in record])
            except ValueError:
                raise NonNumericError("non-numeric cell", lineno) from None
    if not rows:
        raise EmptyFileError(f"{path} holds no data rows", 1)
    table = np.array(rows, dtype=np.float64)
    col = width - 1 if label_column == "last" else int(label_column)
    if not -width <= col < width:
        raise DatasetError(f"label column {label_column} out of range for {width} fields")
    col %= width
    labels, values = _remap(table[:, col])
    features = np.delete(table, col, axis=1)
    return Dataset(features, labels, values.size, name or path.stem, values)


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def save_csv(ds: Dataset, path: Union[str, Path]) -> None:
    """Features followed by the original label in the last column."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for x, t in zip(ds.features, ds.labels):
            writer.writerow([_fmt(v) for v in x] + [_fmt(ds.label_values[t])])


def load_sparse(path: Union[str, Path], n_features: Optional[int] = None,
                name: Optional[str] = None) -> Dataset:
    """Read ``label index:value ...`` lines (1-based indices, absent = 0)."""
    path = Path(path)
    raw_labels, entries = [], []
    max_index = 0
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            try:
                raw_labels.append(float(parts[0]))
                pairs = []
                for tok in parts[1:]:
                    idx, _, val = tok.partition(":")
                    pairs.append((int(idx), float(val)))
            except ValueError:
                raise NonNumericError(f"cannot parse {line.strip()!r}", lineno) from None
            if any(i < 1 for i, _ in pairs):
                raise ParseError("feature indices are 1-based", lineno)
            max_index = max([max_index] + [i for i, _ in pairs])
            entries.append(pairs)
    if not entries:
        raise EmptyFileError(f"{path} holds no data rows", 1)
    width = n_features or max_index
    X = np.zeros((len(entries), width))
    for r, pairs in enumerate(entries):
        for i, v in pairs:
            if i > width:
                raise ParseError(f"feature index {i} exceeds {width}", r + 1)
            X[r, i - 1] = v
    labels, values = _remap(np.array(raw_labels))
    return Dataset(X, labels, values.size, name or path.stem, values)


def make_blobs(classes: int, samples_per_class: int, dims: int, separation: float = 8.0,
               seed: int = 0, name: str = "blobs") -> Dataset:
    """Unit-variance Gaussian clusters whose centres are >= ``separation`` apart."""
    if min(classes, samples_per_class, dims) < 1 or separation <= 0:
        raise ValueError("all arguments must be positive")
    rng = np.random.default_rng(seed)
    side = separation * max(2.0, classes ** (1.0 / dims)) * 2.0
    centres: list[np.ndarray] = []
    attempts = 0
    while len(centres) < classes:
        cand = rng.uniform(-side, side, size=dims)
        if all(np.linalg.norm(cand - c) >= separation for c in centres):
            centres.append(cand)
        attempts += 1
        if attempts % 1000 == 0:
            side *= 1.5
    X = np.concatenate([c + rng.standard_normal((samples_per_class, dims)) for c in centres])
    y = np.repeat(np.arange(classes), samples_per_class)
    return Dataset(X, y, classes, name)


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    fold_of: np.ndarray
    folds: int

    def split(self, fold: int) -> tuple[np.ndarray, np.ndarray]:
        test = self.fold_of == fold
        return np.flatnonzero(~test), np.flatnonzero(test)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.fold_of, minlength=self.folds)


def stratified_folds(ds: Dataset, folds: int, seed: int = 0) -> FoldAssignment:
    """Shuffle each class by ``seed`` and deal it round-robin over the folds.

    Each class starts dealing where the previous one stopped, which keeps
    overall fold sizes within one sample of each other.
    """
    if folds < 2:
        raise ValueError("need at least 2 folds")
    counts = np.bincount(ds.labels, minlength=ds.class_count)
    if counts.min() < folds:
        small = int(np.argmin(counts))
        raise StratificationError(f"class {small} has {counts[small]} samples, fewer than {folds} folds")
    rng = np.random.default_rng(seed)
    fold_of = np.empty(ds.n_samples, dtype=np.int64)
    offset = 0
    for t in range(ds.class_count):
        members = rng.permutation(np.flatnonzero(ds.labels == t))
        fold_of[members] = (offset + np.arange(members.size)) % folds
        offset += members.size
    return FoldAssignment(fold_of, folds)
