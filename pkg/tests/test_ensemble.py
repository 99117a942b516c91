import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from naryecoc.coding import build_m1, build_mk, from_rows
from naryecoc.datasets import Dataset, make_blobs
from naryecoc.ensemble import (
    EcocEnsemble,
    column_seed,
    decode,
    evaluate_cv,
    relabel,
    train,
    train_dataset,
)
from naryecoc.factory import deterministic_matrix
from naryecoc.learners import LearnerSpec
from naryecoc.metrics import hamming


class ColumnOracle:
    """Reads the true class from feature 0 and emits that class's symbol."""

    def __init__(self, column):
        self.column = np.asarray(column)

    def predict(self, X):
        return self.column[np.asarray(X)[:, 0].astype(int)]


def oracle_ensemble(codebook):
    return EcocEnsemble(codebook, tuple(ColumnOracle(codebook.col(j)) for j in range(codebook.cols)))


def test_relabel_examples():
    assert relabel([0, 1, 2], [0, 1, 2]).tolist() == [0, 1, 2]
    assert relabel([0, 1, 2, 3], [0, 0, 1, 1]).tolist() == [0, 0, 1, 1]
    assert relabel([0, 1, 2, 2], build_m1(3).col(0)).tolist() == [0, 0, 2, 2]
    with pytest.raises(ValueError):
        relabel([3], [0, 1, 2])


def test_decode_examples():
    m1 = build_m1(3)
    # (0,0,1) against (0,0,2), (0,1,1), (2,1,2): distances 1, 1, 3
    pred = decode([[0, 0, 1]], m1)
    assert pred.labels.tolist() == [0]
    assert pred.distances.tolist() == [1]
    assert pred.margins.tolist() == [0]
    exact = decode(m1.entries, m1)
    assert exact.labels.tolist() == [0, 1, 2] and exact.distances.tolist() == [0, 0, 0]
    assert exact.margins.tolist() == [2, 2, 2]


def test_decode_tie_goes_to_smallest_class():
    book = from_rows(2, [[1, 1, 1, 1], [0, 1, 0, 1], [1, 1, 0, 0], [0, 1, 1, 1], [1, 0, 1, 0], [0, 0, 1, 0]])
    word = [0, 0, 1, 1]
    d = [hamming(word, r) for r in book.entries]
    assert d == [2, 2, 4, 1, 2, 1]
    pred = decode([word], book)
    assert pred.labels[0] == 3 and pred.margins[0] == 0


@settings(max_examples=60, deadline=None)
@given(
    base=st.integers(2, 5),
    c=st.integers(2, 6),
    n=st.integers(2, 6),
    data=st.data(),
)
def test_decoded_class_is_nearest(base, c, n, data):
    flat = data.draw(st.lists(st.integers(0, base - 1), min_size=c * n, max_size=c * n))
    book = from_rows(base, np.array(flat).reshape(c, n))
    words = np.array(data.draw(st.lists(st.lists(st.integers(0, base - 1), min_size=n, max_size=n),
                                        min_size=1, max_size=5)))
    pred = decode(words, book)
    for w, label, dist in zip(words, pred.labels, pred.distances):
        d = [hamming(w, r) for r in book.entries]
        assert dist == d[label] == min(d)
        assert label == d.index(min(d))


def test_oracle_learners_give_perfect_accuracy():
    for base, c in [(2, 10), (3, 10), (5, 26), (13, 26)]:
        book = deterministic_matrix(base, c).matrix
        model = oracle_ensemble(book)
        X = np.repeat(np.arange(c), 3)[:, None].astype(float)
        assert np.array_equal(model.predict(X).labels, X[:, 0].astype(int))


def test_alphabet_permutation_in_one_column_is_invisible():
    book = build_mk(3, 2)
    perm = np.array([2, 0, 1])
    col = 4
    entries = book.entries.copy()
    entries[:, col] = perm[entries[:, col]]
    permuted = from_rows(3, entries)
    rng = np.random.default_rng(0)
    words = rng.integers(0, 3, size=(200, 9))
    moved = words.copy()
    moved[:, col] = perm[moved[:, col]]
    assert np.array_equal(decode(words, book).labels, decode(moved, permuted).labels)


@pytest.mark.parametrize("base,c", [(2, 8), (3, 9), (5, 5)])
def test_error_correction_radius_brute_force(base, c):
    result = deterministic_matrix(base, c)
    book, d_r = result.matrix, result.report.d_r
    radius = (d_r - 1) // 2
    n = book.cols
    for t in range(c):
        row = book.row(t)
        for positions in itertools.combinations(range(n), radius):
            for values in itertools.product(range(1, base), repeat=radius):
                word = row.copy()
                for p, v in zip(positions, values):
                    word[p] = (word[p] + v) % base
                assert decode([word], book).labels[0] == t


def test_ensemble_validation():
    book = build_m1(3)
    with pytest.raises(ValueError):
        EcocEnsemble(book, (ColumnOracle(book.col(0)),))
    dup = from_rows(3, [[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        EcocEnsemble(dup, (ColumnOracle([0, 0]), ColumnOracle([1, 1])))


def test_two_class_single_column_is_direct_classifier():
    X = np.array([[0.0], [1.0], [5.0], [6.0]])
    y = np.array([0, 0, 1, 1])
    model = train(X, y, from_rows(2, [[0], [1]]))
    assert len(model.learners) == 1
    assert model.predict(np.array([[0.5], [5.5]])).labels.tolist() == [0, 1]


def test_constant_column_gets_constant_predictor():
    book = from_rows(3, [[0, 1, 2], [1, 1, 0], [2, 1, 1]])
    ds = make_blobs(3, 20, 2, seed=1)
    model = train_dataset(ds, book, LearnerSpec("dt"))
    assert model.constant_columns == (1,)
    assert set(model.codewords(ds.features)[:, 1].tolist()) == {1}


def test_class_count_mismatch():
    ds = make_blobs(4, 10, 2)
    with pytest.raises(ValueError):
        train_dataset(ds, build_m1(3))
    with pytest.raises(ValueError):
        evaluate_cv(ds, build_m1(3))


def test_training_is_deterministic():
    ds = make_blobs(9, 20, 3, separation=4.0, seed=4)
    book = build_mk(3, 2)
    rng = np.random.default_rng(9)
    held = rng.normal(scale=6.0, size=(50, 3))
    a = train_dataset(ds, book, seed=5).predict(held).labels
    b = train_dataset(ds, book, seed=5).predict(held).labels
    assert np.array_equal(a, b)
    assert column_seed(5, 0) != column_seed(5, 1)


def test_pendigits_structure(data_dir):
    from naryecoc.datasets import load_csv

    ds = load_csv(data_dir / "pendigits.csv")
    book = deterministic_matrix(3, 10).matrix
    idx = np.arange(0, ds.n_samples, 7)
    model = train(ds.features[idx], ds.labels[idx], book)
    assert len(model.learners) == 10
    assert all(set(np.unique(book.col(j))) <= {0, 1, 2} for j in range(10))


def test_cv_separable_two_class():
    X = np.concatenate([np.zeros((20, 1)), np.ones((20, 1)) * 10]) + np.linspace(0, 1, 40)[:, None]
    ds = Dataset(X, np.repeat([0, 1], 20), 2)
    res = evaluate_cv(ds, from_rows(2, [[0, 1], [1, 0]]), LearnerSpec("dt"), folds=5)
    assert res.mean == 1.0 and res.std == 0.0
    assert res.row("toy", 2, "square", "dt") == "toy\t2\tsquare\tdt\t1.0000\t0.0000"


def test_cv_blobs_nearest_centroid():
    ds = make_blobs(3, 40, 2, separation=10.0, seed=0)
    res = evaluate_cv(ds, build_m1(3), LearnerSpec("centroid"), folds=5, seed=0)
    assert res.mean >= 0.95


def test_cv_jobs_do_not_change_results():
    ds = make_blobs(9, 20, 3, separation=5.0, seed=7)
    book = build_mk(3, 2)
    a = evaluate_cv(ds, book, folds=4, seed=1)
    b = evaluate_cv(ds, book, folds=4, seed=1, jobs=2)
    assert a == b
    assert len(a.fold_accuracies) == 4
    assert a.std == pytest.approx(np.std(a.fold_accuracies))
