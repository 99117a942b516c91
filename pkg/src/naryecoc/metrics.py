"""Distances between codewords and distance aggregates of coding matrices."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .coding import CodingMatrix


class Metric(str, Enum):
    """Kronecker counts differing positions; absolute sums ``|x_i - y_i|``."""

    KRONECKER = "kronecker"
    ABSOLUTE = "absolute"

    @classmethod
    def parse(cls, value: "Metric | str") -> "Metric":
        if isinstance(value, Metric):
            return value
        aliases = {"hamming": cls.KRONECKER, "kronecker": cls.KRONECKER, "absolute": cls.ABSOLUTE}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown metric {value!r}") from None


def _as_codewords(x, y, base: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(x, dtype=np.int64).ravel()
    b = np.asarray(y, dtype=np.int64).ravel()
    if a.shape != b.shape:
        raise ValueError(f"codeword lengths differ: {a.size} != {b.size}")
    if base is not None:
        for v in (a, b):
            if v.size and (v.min() < 0 or v.max() >= base):
                raise ValueError(f"symbol outside [0, {base - 1}]")
    return a, b


def hamming(x: Sequence[int], y: Sequence[int], metric: Metric | str = Metric.KRONECKER,
            base: Optional[int] = None) -> int:
    """Distance between two codewords under ``metric``.

    ``base`` is optional; when given, symbols are range-checked against it.
    """
    metric = Metric.parse(metric)
    a, b = _as_codewords(x, y, base)
    if a.size and (a.min() < 0 or b.min() < 0):
        raise ValueError("symbols must be non-negative")
    if metric is Metric.KRONECKER:
        return int(np.count_nonzero(a != b))
    return int(np.abs(a - b).sum())


def cross_distances(a: np.ndarray, b: np.ndarray, base: int,
                    metric: Metric | str = Metric.KRONECKER) -> np.ndarray:
    """All distances between the rows of ``a`` and the rows of ``b``.

    Kronecker distances come from per-symbol indicator products; absolute
    distances from the thermometer code ``[x >= t]``, ``t = 1..N-1``, since
    ``|x - y| = sum_t |[x >= t] - [y >= t]|``.  Products are exact in
    float64 for any realistic length.
    """
    metric = Metric.parse(metric)
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[1] != b.shape[1]:
        raise ValueError("codeword lengths differ")
    n = a.shape[1]
    if metric is Metric.KRONECKER:
        agree = np.zeros((a.shape[0], b.shape[0]), dtype=np.float64)
        for s in range(base):
            ia = (a == s).astype(np.float64)
            ib = (b == s).astype(np.float64)
            agree += ia @ ib.T
        out = n - agree
    else:
        out = np.zeros((a.shape[0], b.shape[0]), dtype=np.float64)
        for t in range(1, base):
            ta = (a >= t).astype(np.float64)
            tb = (b >= t).astype(np.float64)
            out += ta.sum(1)[:, None] + tb.sum(1)[None, :] - 2.0 * (ta @ tb.T)
    return np.rint(out).astype(np.int64)


def pairwise_distances(m: CodingMatrix | np.ndarray, metric: Metric | str = Metric.KRONECKER,
                       base: Optional[int] = None) -> np.ndarray:
    if isinstance(m, CodingMatrix):
        base, arr = m.base, m.entries
    else:
        arr = np.asarray(m)
        if base is None:
            raise ValueError("base is required for raw arrays")
    return cross_distances(arr, arr, base, metric)


def _min_pair(d: np.ndarray) -> tuple[int, tuple[int, int]]:
    """Minimum over ``i < j`` with the lexicographically smallest argmin."""
    size = d.shape[0]
    masked = d.astype(np.float64, copy=True)
    masked[np.tril_indices(size)] = np.inf
    flat = int(np.argmin(masked))
    i, j = divmod(flat, size)
    return int(d[i, j]), (i, j)


@dataclass(frozen=True)
class DistanceReport:
    d_r: int
    d_c: int
    argmin_rows: tuple[int, int]
    argmin_cols: tuple[int, int]
    metric: Metric = Metric.KRONECKER

    @property
    def d_T(self) -> int:
        return self.d_r + self.d_c

    def line(self) -> str:
        return f"{self.d_r} {self.d_c} {self.d_T}"


def row_distance(m: CodingMatrix, metric: Metric | str = Metric.KRONECKER) -> tuple[int, tuple[int, int]]:
    if m.rows < 2:
        raise ValueError("row distance needs at least 2 rows")
    return _min_pair(pairwise_distances(m, metric))


def distance_report(m: CodingMatrix, metric: Metric | str = Metric.KRONECKER) -> DistanceReport:
    """Row, column and total distance of ``m`` by exhaustive pairwise scan."""
    metric = Metric.parse(metric)
    if m.rows < 2 or m.cols < 2:
        raise ValueError(f"distance report needs at least 2 rows and 2 columns, got {m.shape}")
    d_r, rows = _min_pair(pairwise_distances(m.entries, metric, m.base))
    d_c, cols = _min_pair(pairwise_distances(m.entries.T, metric, m.base))
    return DistanceReport(d_r, d_c, rows, cols, metric)


def difference_vector(x: Sequence[int], y: Sequence[int], base: int) -> np.ndarray:
    """Modular difference ``(x_i - y_i) mod N``."""
    a, b = _as_codewords(x, y)
    return (a - b) % base


def multiplicity(x: Sequence[int], y: Sequence[int], base: int) -> Optional[int]:
    """``p`` if every residue occurs exactly ``p`` times in ``x - y``, else ``None``."""
    a, b = _as_codewords(x, y)
    n = a.size
    if n % base:
        raise ValueError(f"base {base} does not divide length {n}")
    counts = np.bincount(difference_vector(a, b, base), minlength=base)
    p = n // base
    return p if bool(np.all(counts == p)) else None


def are_nary_complements(x: Sequence[int], y: Sequence[int], base: Optional[int] = None) -> bool:
    """Whether ``y`` is obtained from ``x`` by a nontrivial symbol permutation.

    The position-wise map ``x_i -> y_i`` must be a function, injective on the
    symbols occurring in ``x`` (so it extends to a permutation of the whole
    alphabet), and must move at least one occurring symbol.
    """
    a, b = _as_codewords(x, y, base)
    forward: dict[int, int] = {}
    backward: dict[int, int] = {}
    for u, v in zip(a.tolist(), b.tolist()):
        if forward.setdefault(u, v) != v:
            return False
        if backward.setdefault(v, u) != u:
            return False
    return any(u != v for u, v in forward.items())


def canonical_relabel(words: np.ndarray, base: int) -> np.ndarray:
    """Relabel each row's symbols by order of first appearance.

    Two rows share a canonical form iff a symbol bijection maps one onto
    the other.
    """
    words = np.asarray(words)
    m, n = words.shape
    first = np.full((m, base), n, dtype=np.int64)
    for s in range(base):
        mask = words == s
        present = mask.any(axis=1)
        first[present, s] = mask[present].argmax(axis=1)
    order = np.argsort(first, axis=1, kind="stable")
    rank = np.empty_like(order)
    np.put_along_axis(rank, order, np.arange(base)[None, :].repeat(m, axis=0), axis=1)
    return np.take_along_axis(rank, words.astype(np.int64), axis=1)


def first_complement_pair(words: np.ndarray, base: int) -> Optional[tuple[int, int]]:
    """Lexicographically smallest ``(i, j)``, ``i < j``, of complementary rows."""
    words = np.asarray(words)
    canon = canonical_relabel(words, base)
    _, groups = np.unique(canon, axis=0, return_inverse=True)
    groups = groups.ravel()
    best: Optional[tuple[int, int]] = None
    for g in np.unique(groups[np.bincount(groups)[groups] > 1]):
        members = np.flatnonzero(groups == g)
        for pos, i in enumerate(members):
            if best is not None and i >= best[0]:
                break
            differs = [j for j in members[pos + 1:] if not np.array_equal(words[i], words[j])]
            if differs:
                cand = (int(i), int(differs[0]))
                if best is None or cand < best:
                    best = cand
                break
    return best


@dataclass(frozen=True)
class PropertyReport:
    complement_pair: Optional[tuple[int, int]]
    constant_column: Optional[int]

    @property
    def p3(self) -> bool:
        return self.complement_pair is None

    @property
    def p4(self) -> bool:
        return self.constant_column is None

    @property
    def passed(self) -> bool:
        return self.p3 and self.p4


def validate_ecoc_properties(m: CodingMatrix) -> PropertyReport:
    """Check for complementary columns (P3) and constant columns (P4)."""
    cols = m.entries.T
    constant = np.flatnonzero((cols == cols[:, :1]).all(axis=1))
    return PropertyReport(
        complement_pair=first_complement_pair(cols, m.base),
        constant_column=int(constant[0]) if constant.size else None,
    )

