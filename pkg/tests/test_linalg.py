from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from folcoh.linalg import ExactMatrix
from folcoh.scalar import Scalar

from conftest import scalars


def dense_rank(rows):
    """Textbook dense elimination, kept independent of the sparse kernel."""
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


sparse_entries = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), st.fractions(-4, 4, max_denominator=3))


@st.composite
def rational_matrices(draw, max_dim=7):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(sparse_entries) for _ in range(c)] for _ in range(r)]


@given(rational_matrices())
def test_rank_matches_dense_fraction_oracle(data):
    M = ExactMatrix.from_dense(data)
    assert M.rank() == dense_rank(data)
    assert M.transpose().rank() == M.rank()


@given(rational_matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation(data, rnd):
    M = ExactMatrix.from_dense(data)
    rp = list(range(M.nrows))
    cp = list(range(M.ncols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    assert M.permuted(rp, cp).rank() == M.rank()


@given(st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(scalars(), min_size=c, max_size=c), min_size=1, max_size=5)))
def test_gaussian_kernel(data):
    M = ExactMatrix.from_dense(data)
    K = M.kernel()
    assert len(K) == M.ncols - M.rank()
    for v in K:
        assert M.apply(v) == {}
    if K:
        assert ExactMatrix.from_columns(M.ncols, K).rank() == len(K)


@given(rational_matrices(), st.lists(st.fractions(-3, 3, max_denominator=2), min_size=7, max_size=7))
def test_solve(data, xs):
    M = ExactMatrix.from_dense(data)
    x = {j: Scalar(v) for j, v in enumerate(xs[: M.ncols]) if v}
    b = M.apply(x)
    sol = M.solve(b)
    assert sol is not None and M.apply(sol) == b
    # b outside the column space: augmenting raises the rank
    for i in range(M.nrows):
        e = {i: Scalar(1)}
        aug = M.hstack(ExactMatrix.from_columns(M.nrows, [e]))
        assert (M.solve(e) is None) == (aug.rank() > M.rank())


def test_small_examples():
    D = ExactMatrix.from_dense([[-2, 0, 0], [0, 0, 0], [0, 0, 2]])
    assert D.rank() == 2
    assert D.kernel() == [{1: Scalar(1)}]
    assert D.solve({1: 1}) is None
    assert D.solve({0: 4}) == {0: Scalar(-2)}
    assert ExactMatrix(3, 0).rank() == 0
    with pytest.raises(IndexError):
        ExactMatrix(2, 2, {(2, 0): 1})
