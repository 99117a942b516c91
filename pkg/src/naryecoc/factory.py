"""Experiment-ready coding matrices: deterministic truncation and random search."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .coding import DEFAULT_MAX_DIMENSION, CodingError, CodingMatrix, build_mk, save_matrix
from .metrics import DistanceReport, Metric, distance_report


class RepairError(CodingError):
    pass


@dataclass(frozen=True)
class DimensionPolicy:
    """How many columns to give a ``c``-class matrix.

    ``half`` resolves to ``floor(c / 2)`` (an 11-class problem gets 5
    columns), ``square`` to ``c``, ``double`` to ``2c``.
    """

    kind: str
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind not in {"half", "square", "double", "explicit"}:
            raise ValueError(f"unknown dimension policy {self.kind!r}")
        if self.kind == "explicit" and (self.n is None or self.n < 1):
            raise ValueError("explicit policy needs n >= 1")

    @classmethod
    def parse(cls, value: Union["DimensionPolicy", str, int]) -> "DimensionPolicy":
        if isinstance(value, DimensionPolicy):
            return value
        if isinstance(value, int):
            return cls("explicit", value)
        if str(value).isdigit():
            return cls("explicit", int(value))
        return cls(str(value))

    def resolve(self, classes: int) -> int:
        if self.kind == "half":
            n = classes // 2
        elif self.kind == "square":
            n = classes
        elif self.kind == "double":
            n = 2 * classes
        else:
            n = self.n
        if n < 1:
            raise ValueError(f"policy {self.kind} gives no columns for {classes} classes")
        return n

    def __str__(self):
        return str(self.n) if self.kind == "explicit" else self.kind


HALF = DimensionPolicy("half")
SQUARE = DimensionPolicy("square")
DOUBLE = DimensionPolicy("double")


@dataclass(frozen=True)
class SearchConfig:
    trials: int = 1000
    objective: str = "total"
    metric: Metric = Metric.KRONECKER
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.objective not in {"total", "row"}:
            raise ValueError(f"unknown objective {self.objective!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "metric", Metric.parse(self.metric))


@dataclass(frozen=True)
class FactoryResult:
    matrix: CodingMatrix
    report: DistanceReport
    strategy: str
    k: Optional[int] = None
    repairs: int = 0
    seed: Optional[int] = None
    trial: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def meta_lines(self) -> list[str]:
        def fmt(v):
            return "-" if v is None else str(v)

        lines = [
            f"strategy={self.strategy}",
            f"base={self.matrix.base}",
            f"rows={self.matrix.rows}",
            f"cols={self.matrix.cols}",
            f"seed={fmt(self.seed)}",
            f"k={fmt(self.k)}",
            f"repairs={self.repairs}",
        ]
        if self.trial is not None:
            lines.append(f"trial={self.trial}")
        lines.extend(f"{key}={value}" for key, value in self.extra.items())
        return lines


def meta_path(path: str | Path) -> Path:
    return Path(path).with_suffix(".meta")


def write_result(result: FactoryResult, path: str | Path) -> Path:
    """Write the matrix file and its ``.meta`` sidecar; returns the sidecar path."""
    save_matrix(result.matrix, path)
    side = meta_path(path)
    side.write_text("\n".join(result.meta_lines()) + "\n", newline="\n")
    return side


def read_meta(path: str | Path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text().splitlines():
        if line:
            key, _, value = line.partition("=")
            out[key] = value
    return out


def choose_k(base: int, classes: int) -> int:
    """Smallest ``k`` with ``base**k >= classes``."""
    if classes < 2:
        raise ValueError("need at least 2 classes")
    k, size = 1, base
    while size < classes:
        k += 1
        size *= base
    return k


def truncate(m: CodingMatrix, rows: int, cols: int) -> CodingMatrix:
    """Keep the bottom-right ``rows x cols`` block (leading rows/columns dropped)."""
    if not (1 <= rows <= m.rows and 1 <= cols <= m.cols):
        raise ValueError(f"cannot cut {rows}x{cols} out of {m.rows}x{m.cols}")
    return CodingMatrix(m.base, m.entries[m.rows - rows:, m.cols - cols:])


def _first_duplicate(arr: np.ndarray) -> Optional[tuple[int, int]]:
    seen: dict[bytes, int] = {}
    best = None
    for j, row in enumerate(arr):
        key = row.tobytes()
        if key in seen:
            cand = (seen[key], j)
            if best is None or cand < best:
                best = cand
        else:
            seen[key] = j
    return best


def repair_duplicate_rows(m: CodingMatrix) -> tuple[CodingMatrix, int]:
    """Make all rows distinct by bumping entry 0 of the later duplicate.

    The first duplicate pair (lexicographic) is repaired by replacing
    entry 0 of the higher-indexed row with ``(entry + 1) mod N``, and the
    scan repeats.  If a row's entry 0 cycles back to its original symbol
    without resolving the clash, the bump moves on to entry 1, and so on.
    """
    if m.rows > m.base**m.cols:
        raise RepairError(f"{m.rows} distinct codewords of length {m.cols} do not exist over base {m.base}")
    arr = m.entries.copy()
    repairs = 0
    position: dict[int, int] = {}
    bumps: dict[int, int] = {}
    limit = m.rows * m.cols * m.base + 1
    while (pair := _first_duplicate(arr)) is not None:
        j = pair[1]
        p = position.get(j, 0)
        arr[j, p] = (arr[j, p] + 1) % m.base
        repairs += 1
        bumps[j] = bumps.get(j, 0) + 1
        if bumps[j] % m.base == 0:
            position[j] = (p + 1) % m.cols
        if repairs > limit:
            raise RepairError("duplicate-row repair did not converge")
    return CodingMatrix(m.base, arr), repairs


def deterministic_matrix(base: int, classes: int, policy: DimensionPolicy | str = SQUARE, *,
                         metric: Metric | str = Metric.KRONECKER,
                         max_dimension: int = DEFAULT_MAX_DIMENSION) -> FactoryResult:
    policy = DimensionPolicy.parse(policy)
    n = policy.resolve(classes)
    k = choose_k(base, max(classes, n))
    source = build_mk(base, k, max_dimension=max_dimension)
    matrix, repairs = repair_duplicate_rows(truncate(source, classes, n))
    return FactoryResult(
        matrix=matrix,
        report=distance_report(matrix, metric),
        strategy="deterministic",
        k=k,
        repairs=repairs,
        extra={"policy": str(policy), "metric": Metric.parse(metric).value},
    )


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, keyed on ``(seed, trial)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def random_candidate(base: int, rows: int, cols: int, seed: int, trial: int) -> CodingMatrix:
    return CodingMatrix(base, trial_rng(seed, trial).integers(0, base, size=(rows, cols)))


def objective_value(report: DistanceReport, objective: str) -> int:
    return report.d_T if objective == "total" else report.d_r


def _score_trials(base, rows, cols, config, trials):
    out = []
    for t in trials:
        cand = random_candidate(base, rows, cols, config.seed, t)
        out.append(objective_value(distance_report(cand, config.metric), config.objective))
    return out


def random_matrix(base: int, classes: int, policy: DimensionPolicy | str = SQUARE,
                  config: Optional[SearchConfig] = None, *, jobs: int = 1) -> FactoryResult:
    """Best of ``config.trials`` uniformly random matrices.

    The earliest trial wins ties, so the result does not depend on ``jobs``.
    """
    config = config or SearchConfig()
    policy = DimensionPolicy.parse(policy)
    n = policy.resolve(classes)
    if base < 2:
        raise ValueError("base must be >= 2")
    if jobs > 1:
        chunks = np.array_split(np.arange(config.trials), jobs)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(lambda ch: _score_trials(base, classes, n, config, ch.tolist()), chunks)
            scores = [s for part in parts for s in part]
    else:
        scores = _score_trials(base, classes, n, config, range(config.trials))
    winner = int(np.argmax(scores))
    matrix = random_candidate(base, classes, n, config.seed, winner)
    return FactoryResult(
        matrix=matrix,
        report=distance_report(matrix, config.metric),
        strategy="random",
        seed=config.seed,
        trial=winner,
        extra={
            "policy": str(policy),
            "metric": config.metric.value,
            "objective": config.objective,
            "trials": config.trials,
        },
    )


def heuristic_length(classes: int) -> int:
    """The common ``ceil(10 log2 c)`` codeword-length rule of thumb."""
    return math.ceil(10 * math.log2(classes))
