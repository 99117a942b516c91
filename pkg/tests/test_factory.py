import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from naryecoc.coding import CodingMatrix, build_mk, from_rows
from naryecoc.factory import (
    DOUBLE,
    HALF,
    SQUARE,
    DimensionPolicy,
    RepairError,
    SearchConfig,
    choose_k,
    deterministic_matrix,
    heuristic_length,
    meta_path,
    objective_value,
    random_candidate,
    random_matrix,
    read_meta,
    repair_duplicate_rows,
    truncate,
    write_result,
)
from naryecoc.metrics import distance_report


def has_duplicate_rows(m: CodingMatrix) -> bool:
    return len({r.tobytes() for r in m.entries}) < m.rows


def test_choose_k_examples():
    assert choose_k(3, 26) == 3
    assert choose_k(11, 26) == 2
    assert choose_k(2, 2) == 1
    with pytest.raises(ValueError):
        choose_k(3, 1)


@settings(max_examples=100, deadline=None)
@given(base=st.sampled_from([2, 3, 5, 7, 11, 13]), classes=st.integers(2, 3000))
def test_choose_k_is_minimal(base, classes):
    k = choose_k(base, classes)
    assert base ** (k - 1) < classes <= base**k


def test_policy_resolution():
    assert HALF.resolve(10) == 5
    assert HALF.resolve(11) == 5
    assert SQUARE.resolve(26) == 26
    assert DOUBLE.resolve(26) == 52
    assert DimensionPolicy.parse("7").resolve(26) == 7
    assert DimensionPolicy.parse(12).resolve(3) == 12
    assert str(DimensionPolicy.parse("half")) == "half"
    with pytest.raises(ValueError):
        DimensionPolicy.parse("triple")
    with pytest.raises(ValueError):
        HALF.resolve(1)


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(trials=0)
    with pytest.raises(ValueError):
        SearchConfig(objective="column")
    with pytest.raises(ValueError):
        SearchConfig(seed=-1)
    assert SearchConfig(metric="hamming").metric.value == "kronecker"


def test_truncate_examples():
    m = build_mk(3, 2)
    assert truncate(m, 9, 9) == m
    rep = distance_report(truncate(build_mk(3, 3), 26, 26))
    assert (rep.d_r, rep.d_T) == (17, 34)
    rep = distance_report(truncate(build_mk(2, 4), 10, 10))
    assert (rep.d_r, rep.d_T) == (4, 8)
    with pytest.raises(ValueError):
        truncate(m, 10, 9)


def test_truncate_keeps_bottom_right_block():
    m = build_mk(3, 2)
    assert np.array_equal(truncate(m, 7, 5).entries, m.entries[2:, 4:])


@settings(max_examples=40, deadline=None)
@given(N=st.sampled_from([2, 3, 5]), k=st.integers(1, 3), data=st.data())
def test_truncation_distance_bound(N, k, data):
    m = build_mk(N, k)
    size = m.rows
    if size < 2:
        return
    rows = data.draw(st.integers(2, size))
    cols = data.draw(st.integers(2, size))
    full = distance_report(m)
    cut = distance_report(truncate(m, rows, cols))
    assert full.d_r - (size - cols) <= cut.d_r
    assert full.d_c - (size - rows) <= cut.d_c


def test_repair_leaves_distinct_rows_alone():
    m = build_mk(3, 2)
    out, repairs = repair_duplicate_rows(m)
    assert out == m and repairs == 0


def test_repair_bumps_first_entry_of_later_row():
    m = from_rows(3, [[0, 1], [2, 2], [0, 1]])
    out, repairs = repair_duplicate_rows(m)
    assert repairs == 1
    assert out.tolist() == [[0, 1], [2, 2], [1, 1]]


def test_repair_escalates_to_next_entry():
    # bumping entry 0 of row 1 cycles through clashes with rows 0 and 2
    m = from_rows(2, [[0, 0], [0, 0], [1, 0]])
    out, repairs = repair_duplicate_rows(m)
    assert not has_duplicate_rows(out)
    assert repairs >= 2


def test_repair_on_binary_leading_block():
    # leading 10x5 block of the 16x16 Walsh matrix has repeated rows
    block = CodingMatrix(2, build_mk(2, 4).entries[:10, :5])
    assert has_duplicate_rows(block)
    out, repairs = repair_duplicate_rows(block)
    assert repairs >= 1
    assert not has_duplicate_rows(out)
    diff = np.argwhere(out.entries != block.entries)
    assert set(diff[:, 1].tolist()) <= {0, 1}


def test_repair_pigeonhole_error():
    m = from_rows(2, [[0], [1], [0]])
    with pytest.raises(RepairError):
        repair_duplicate_rows(m)


@settings(max_examples=80, deadline=None)
@given(base=st.integers(2, 4), rows=st.integers(1, 8), cols=st.integers(1, 4), data=st.data())
def test_repair_always_yields_distinct_rows(base, rows, cols, data):
    flat = data.draw(st.lists(st.integers(0, base - 1), min_size=rows * cols, max_size=rows * cols))
    m = CodingMatrix(base, np.array(flat).reshape(rows, cols))
    if rows > base**cols:
        with pytest.raises(RepairError):
            repair_duplicate_rows(m)
        return
    out, repairs = repair_duplicate_rows(m)
    assert not has_duplicate_rows(out)
    assert (repairs == 0) == (out == m)


def test_deterministic_examples():
    r = deterministic_matrix(3, 10, "square")
    assert r.matrix.shape == (10, 10) and (r.report.d_r, r.report.d_T) == (6, 12)
    r = deterministic_matrix(7, 95, "square")
    assert (r.report.d_r, r.report.d_T) == (49, 98) and r.k == 3
    r = deterministic_matrix(2, 10, "half")
    assert r.matrix.shape == (10, 5)
    assert not has_duplicate_rows(r.matrix)


def test_deterministic_double_raises_k():
    r = deterministic_matrix(3, 10, "double")
    assert r.matrix.shape == (10, 20) and r.k == 3


@pytest.mark.parametrize("base", [2, 3, 5, 7, 11, 13])
@pytest.mark.parametrize("classes", [4, 10, 11, 26])
@pytest.mark.parametrize("policy", ["half", "square", "double"])
def test_deterministic_never_has_duplicate_rows(base, classes, policy):
    r = deterministic_matrix(base, classes, policy)
    assert not has_duplicate_rows(r.matrix)
    assert r.report == distance_report(r.matrix)


def test_single_column_codebook_has_no_column_distance():
    with pytest.raises(ValueError):
        deterministic_matrix(3, 3, "half")


def test_random_single_trial_is_that_candidate():
    r = random_matrix(3, 6, "square", SearchConfig(trials=1, seed=5))
    assert r.matrix == random_candidate(3, 6, 6, 5, 0)
    assert r.trial == 0 and r.seed == 5


def test_random_is_deterministic_and_jobs_independent():
    cfg = SearchConfig(trials=60, seed=11)
    a = random_matrix(5, 9, "square", cfg)
    b = random_matrix(5, 9, "square", cfg)
    c = random_matrix(5, 9, "square", cfg, jobs=4)
    assert a == b == c


@pytest.mark.parametrize("objective", ["total", "row"])
@pytest.mark.parametrize("metric", ["hamming", "absolute"])
def test_random_winner_dominates_every_trial(objective, metric):
    cfg = SearchConfig(trials=40, objective=objective, metric=metric, seed=3)
    r = random_matrix(3, 7, "double", cfg)
    scores = [
        objective_value(distance_report(random_candidate(3, 7, 14, 3, t), metric), objective)
        for t in range(40)
    ]
    best = max(scores)
    assert objective_value(r.report, objective) == best
    assert r.trial == scores.index(best)


def test_random_allows_composite_base():
    r = random_matrix(4, 5, "square", SearchConfig(trials=5, seed=0))
    assert r.matrix.base == 4


def test_random_letters_ternary_below_deterministic():
    r = random_matrix(3, 26, "square", SearchConfig(trials=1000, seed=0))
    print(f"letters N=3 random d_T={r.report.d_T}")
    assert r.report.d_T < 34


def test_meta_sidecar(tmp_path):
    r = deterministic_matrix(3, 10, "square")
    path = tmp_path / "m.txt"
    side = write_result(r, path)
    assert side == meta_path(path) == tmp_path / "m.meta"
    meta = read_meta(side)
    assert meta["strategy"] == "deterministic"
    assert meta["k"] == "3" and meta["repairs"] == "0" and meta["seed"] == "-"

    r = random_matrix(3, 10, "square", SearchConfig(trials=3, seed=9))
    write_result(r, path)
    meta = read_meta(side)
    assert meta["seed"] == "9" and meta["trial"] == str(r.trial)


def test_heuristic_length():
    assert heuristic_length(26) == 48
    assert heuristic_length(2) == 10


def test_all_row_pairs_of_square_codebooks_are_distinct():
    for base, c in itertools.product([2, 3, 5], [4, 9, 27]):
        assert not has_duplicate_rows(deterministic_matrix(base, c).matrix)
