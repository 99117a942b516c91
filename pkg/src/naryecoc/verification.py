"""Brute-force checks of the optimality claims on small instances."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .coding import DEFAULT_MAX_DIMENSION, CodingMatrix, build_mk, build_mk_unchecked, is_prime
from .metrics import Metric, distance_report, validate_ecoc_properties

DEFAULT_BUDGET = 2**26
_CHUNK = 2**17


class BudgetExceeded(RuntimeError):
    pass


def conjecture_bound(n: int) -> int:
    """Conjectured maximum total distance of a binary ``n x n`` matrix, ``n >= 3``."""
    return n if n % 2 == 0 else n + 1


def optimal_total_distance(base: int, n: int) -> float:
    return 2 * (base - 1) / base * n


@dataclass(frozen=True)
class ExhaustiveResult:
    dim: int
    base: int
    max_d_T: int
    witness: CodingMatrix
    enumerated: int

    @property
    def conjectured(self) -> Optional[int]:
        if self.base == 2 and self.dim >= 3:
            return conjecture_bound(self.dim)
        return None

    @property
    def matches_conjecture(self) -> Optional[bool]:
        bound = self.conjectured
        return None if bound is None else self.max_d_T == bound


def _min_pair_distance(batch: np.ndarray, axis_pairs: list[tuple[int, int]], along_rows: bool) -> np.ndarray:
    best = None
    for i, j in axis_pairs:
        if along_rows:
            d = (batch[:, i, :] != batch[:, j, :]).sum(axis=1)
        else:
            d = (batch[:, :, i] != batch[:, :, j]).sum(axis=1)
        best = d if best is None else np.minimum(best, d)
    return best


def exhaustive_max_dT(base: int, dim: int, *, budget: int = DEFAULT_BUDGET) -> ExhaustiveResult:
    """Maximum Kronecker total distance over every ``dim x dim`` matrix.

    Candidates are enumerated as base-``N`` numerals with entry ``(0, 0)``
    as the most significant digit; the witness is the first maximiser in
    that order.  Refuses (never samples) when ``N**(dim*dim)`` exceeds
    ``budget``.
    """
    if base < 2 or dim < 2:
        raise ValueError("need base >= 2 and dim >= 2")
    cells = dim * dim
    total = base**cells
    if total > budget:
        raise BudgetExceeded(f"{base}^{cells} = {total} candidates exceeds budget {budget}")
    powers = base ** np.arange(cells - 1, -1, -1, dtype=np.int64)
    pairs = list(combinations(range(dim), 2))
    best_val, best_idx = -1, -1
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        batch = ((idx[:, None] // powers) % base).reshape(-1, dim, dim)
        d_t = _min_pair_distance(batch, pairs, True) + _min_pair_distance(batch, pairs, False)
        pos = int(np.argmax(d_t))
        if d_t[pos] > best_val:
            best_val, best_idx = int(d_t[pos]), int(idx[pos])
    witness = ((best_idx // powers) % base).reshape(dim, dim)
    return ExhaustiveResult(dim, base, best_val, CodingMatrix(base, witness), total)


@dataclass(frozen=True)
class Theorem12Report:
    base: int
    k: int
    d_r: int
    d_c: int
    expected: int
    multiplicity_ok: bool
    p3: bool
    p4: bool
    violation: Optional[str]

    @property
    def passed(self) -> bool:
        return self.violation is None

    @property
    def d_T(self) -> int:
        return self.d_r + self.d_c


def first_multiplicity_violation(m: CodingMatrix, p: int) -> Optional[tuple[int, int]]:
    """First row pair whose modular difference is not a ``p``-fold permutation.

    The count of residue ``r`` in ``x_i - x_j`` equals
    ``sum_s [x_i = s + r] [x_j = s]``, so every residue count for every pair
    is a sum of indicator products (exact in float32 for n < 2**24).
    """
    base = m.base
    ind = [(m.entries == s).astype(np.float32) for s in range(base)]
    bad = np.zeros((m.rows, m.rows), dtype=bool)
    for r in range(base):
        counts = np.zeros((m.rows, m.rows), dtype=np.float32)
        for s in range(base):
            counts += ind[(s + r) % base] @ ind[s].T
        bad |= np.rint(counts) != p
    bad[np.tril_indices(m.rows)] = False
    hits = np.argwhere(bad)
    if hits.size == 0:
        return None
    i, j = hits[0]
    return int(i), int(j)


def check_theorem12(base: int, k: int, *, unchecked: bool = False,
                    max_dimension: int = DEFAULT_MAX_DIMENSION) -> Theorem12Report:
    """Verify the distance law, multiplicity, P3 and P4 for ``M_k(N)`` directly."""
    build = build_mk_unchecked if unchecked else build_mk
    m = build(base, k, max_dimension=max_dimension)
    expected = (base - 1) * base ** (k - 1)
    rep = distance_report(m, Metric.KRONECKER)
    props = validate_ecoc_properties(m)
    bad_pair = first_multiplicity_violation(m, base ** (k - 1))

    violation = None
    if rep.d_r != expected or rep.d_c != expected:
        violation = (f"d_r={rep.d_r}, d_c={rep.d_c}, d_T={rep.d_T}; expected "
                     f"{expected}, {expected}, {2 * expected}")
    elif bad_pair is not None:
        violation = f"rows {bad_pair} do not have multiplicity {base ** (k - 1)}"
    elif not props.p3:
        violation = f"columns {props.complement_pair} are complements"
    elif not props.p4:
        violation = f"column {props.constant_column} is constant"
    if not is_prime(base) and violation is None:
        violation = f"base {base} is composite"
    return Theorem12Report(base, k, rep.d_r, rep.d_c, expected, bad_pair is None,
                           props.p3, props.p4, violation)


@dataclass(frozen=True)
class AgreementReport:
    agree: bool
    kronecker: tuple[int, int, int]
    absolute: tuple[int, int, int]

    def __bool__(self):
        return self.agree


def check_hamming_absolute_agreement(m: CodingMatrix) -> AgreementReport:
    kr = distance_report(m, Metric.KRONECKER)
    ab = distance_report(m, Metric.ABSOLUTE)
    k3 = (kr.d_r, kr.d_c, kr.d_T)
    a3 = (ab.d_r, ab.d_c, ab.d_T)
    return AgreementReport(k3 == a3, k3, a3)
