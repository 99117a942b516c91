"""Construction of N-ary coding matrices.

The base matrix ``M_1(N)`` enumerates residues along its diagonals, and
``M_k(N)`` is built by the block recursion where block ``(i, j)`` is the
``m_ij``-shift of ``M_{k-1}(N)``.  For ``N = 2`` this reproduces Sylvester's
doubling construction of Walsh matrices over ``{0, 1}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

DEFAULT_MAX_DIMENSION = 4096


class CodingError(ValueError):
    """Base class for construction failures."""


class CompositeBaseError(CodingError):
    pass


class CapacityError(CodingError):
    pass


class MatrixFormatError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, eq=False)
class CodingMatrix:
    """A ``rows x cols`` grid of symbols in ``{0, ..., base-1}``.

    Entries are stored as a read-only integer array.  Two matrices compare
    equal only if both the entries and the declared base agree.
    """

    base: int
    entries: np.ndarray

    def __post_init__(self):
        if int(self.base) < 2:
            raise CodingError(f"base must be >= 2, got {self.base}")
        arr = np.array(self.entries, dtype=np.int32, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise CodingError(f"entries must be a non-empty 2-D grid, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= self.base:
            raise CodingError(f"entries must lie in [0, {self.base - 1}]")
        arr.setflags(write=False)
        object.__setattr__(self, "base", int(self.base))
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def T(self) -> "CodingMatrix":
        return CodingMatrix(self.base, self.entries.T)

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]

    def col(self, j: int) -> np.ndarray:
        return self.entries[:, j]

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __eq__(self, other):
        if not isinstance(other, CodingMatrix):
            return NotImplemented
        return self.base == other.base and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.base, self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"CodingMatrix(base={self.base}, shape={self.shape})"


def _check_prime(base: int) -> None:
    if not is_prime(base):
        raise CompositeBaseError(f"base {base} is not prime")


def _check_capacity(dim: int, max_dimension: int) -> None:
    if dim > max_dimension:
        raise CapacityError(f"dimension {dim} exceeds the configured maximum {max_dimension}")


def _diagonal_entry(i: int, j: int, base: int) -> int:
    lo, hi = min(i, j), max(i, j)
    total = lo + sum(base - l + 1 for l in range(1, hi - lo + 1))
    return total % base


def _m1_entries(base: int) -> np.ndarray:
    return np.array(
        [[_diagonal_entry(i, j, base) for j in range(base)] for i in range(base)],
        dtype=np.int32,
    )


def build_m1(base: int) -> CodingMatrix:
    """Base matrix ``M_1(N)`` for a prime ``N``.

    >>> build_m1(3).tolist()
    [[0, 0, 2], [0, 1, 1], [2, 1, 2]]
    """
    _check_prime(base)
    return CodingMatrix(base, _m1_entries(base))


def shift(m: CodingMatrix, s: int) -> CodingMatrix:
    if s < 0:
        raise ValueError("shift amount must be non-negative")
    return CodingMatrix(m.base, (m.entries + s) % m.base)


def _recursive(base: int, k: int, max_dimension: int) -> CodingMatrix:
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_capacity(base**k, max_dimension)
    seed = CodingMatrix(base, _m1_entries(base))
    current = seed
    for _ in range(k - 1):
        blocks = [
            [shift(current, int(seed.entries[i, j])).entries for j in range(base)]
            for i in range(base)
        ]
        current = CodingMatrix(base, np.block(blocks))
    return current


def build_mk(base: int, k: int, *, max_dimension: int = DEFAULT_MAX_DIMENSION) -> CodingMatrix:
    """The ``N^k x N^k`` matrix ``M_k(N)``; ``base`` must be prime."""
    _check_prime(base)
    return _recursive(base, k, max_dimension)


def build_mk_unchecked(base: int, k: int, *, max_dimension: int = DEFAULT_MAX_DIMENSION) -> CodingMatrix:
    """Same recursion as :func:`build_mk` but without the primality check.

    Only meant for demonstrating that the distance law breaks for composite
    bases (e.g. ``N = 4``).
    """
    if base < 2:
        raise CodingError("base must be >= 2")
    return _recursive(base, k, max_dimension)


def build_walsh(k: int, *, max_dimension: int = DEFAULT_MAX_DIMENSION) -> CodingMatrix:
    """Sylvester doubling ``H_k = [[H, H], [H, ~H]]`` over ``{0, 1}``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_capacity(2**k, max_dimension)
    h = np.array([[0, 0], [0, 1]], dtype=np.int32)
    for _ in range(k - 1):
        h = np.block([[h, h], [h, 1 - h]])
    return CodingMatrix(2, h)


def build_punctured_walsh(k: int, *, max_dimension: int = DEFAULT_MAX_DIMENSION) -> CodingMatrix:
    if k < 2:
        raise ValueError("k must be >= 2")
    h = build_walsh(k, max_dimension=max_dimension)
    return CodingMatrix(2, h.entries[1:, 1:])


# -- text format -------------------------------------------------------------

def format_matrix(m: CodingMatrix) -> str:
    lines = [f"{m.base} {m.rows} {m.cols}"]
    lines.extend(" ".join(str(v) for v in row) for row in m.entries.tolist())
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> CodingMatrix:
    lines = text.splitlines()
    if not lines:
        raise MatrixFormatError("empty matrix text")
    header = lines[0].split(" ")
    try:
        base, rows, cols = (int(v) for v in header)
    except ValueError:
        raise MatrixFormatError(f"line 1: expected 'N c n', got {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != rows:
        raise MatrixFormatError(f"expected {rows} rows, found {len(body)}")
    data = []
    for lineno, line in enumerate(body, start=2):
        parts = line.split(" ")
        if len(parts) != cols:
            raise MatrixFormatError(f"line {lineno}: expected {cols} symbols, found {len(parts)}")
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise MatrixFormatError(f"line {lineno}: non-integer symbol") from None
        if any(v < 0 or v >= base for v in values):
            raise MatrixFormatError(f"line {lineno}: symbol outside [0, {base - 1}]")
        data.append(values)
    try:
        return CodingMatrix(base, np.array(data, dtype=np.int32).reshape(rows, cols))
    except CodingError as exc:
        raise MatrixFormatError(str(exc)) from None


def save_matrix(m: CodingMatrix, path: str | Path) -> None:
    Path(path).write_text(format_matrix(m), newline="\n")


def load_matrix(path: str | Path) -> CodingMatrix:
    return parse_matrix(Path(path).read_text())


def from_rows(base: int, rows: Iterable[Iterable[int]]) -> CodingMatrix:
    return CodingMatrix(base, np.array([list(r) for r in rows], dtype=np.int32))
