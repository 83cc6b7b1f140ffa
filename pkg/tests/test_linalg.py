import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from trigp import linalg as la

from conftest import mat


def test_rref_examples():
    red, piv, r = la.rref(la.identity(2), 2)
    assert (red == la.identity(2)).all() and piv == [0, 1] and r == 2
    red, piv, r = la.rref(la.zeros(3, 3), 2)
    assert not red.any() and piv == [] and r == 0
    red, piv, r = la.rref(mat([[1, 1], [1, 1]]), 2)
    assert (red == mat([[1, 1], [0, 0]])).all() and r == 1


def test_kernel_examples():
    assert la.kernel_basis(la.identity(4), 5).shape == (0, 4)
    k = la.kernel_basis(la.zeros(2, 3), 2)
    assert la.rank(k, 2) == 3
    assert (la.kernel_basis(mat([[1, 1]]), 2) == mat([[1, 1]])).all()


def test_solve_examples():
    t = mat([[1, 2], [0, 1]])
    assert (la.solve(la.identity(2), t, 3) == t).all()
    assert la.solve(la.zeros(2, 2), mat([[1], [0]]), 3) is None
    assert (la.solve(mat([[1, 1], [0, 1]]), mat([[2], [1]]), 3) == mat([[1], [1]])).all()
    with pytest.raises(ValueError):
        la.solve(la.identity(2), la.zeros(3, 1), 3)


def test_quotient_basis():
    reps, proj = la.quotient_basis(la.identity(3), 3, 2)
    assert reps.shape == (0, 3)
    reps, proj = la.quotient_basis(la.zeros(0, 3), 3, 2)
    assert (proj == la.identity(3)).all()
    reps, proj = la.quotient_basis(mat([[1, 1]]), 2, 2)
    assert reps.shape == (1, 2)
    assert not (proj @ mat([1, 1]) % 2).any()
    assert (proj @ reps.T % 2 == la.identity(1)).all()


def test_kronecker():
    assert (la.kronecker(mat([[1]]), mat([[1, 2], [3, 4]]), 5) == mat([[1, 2], [3, 4]])).all()
    assert not la.kronecker(la.zeros(1, 1), la.identity(2), 5).any()
    assert (la.kronecker(la.identity(2), la.identity(2), 5) == la.identity(4)).all()


def test_check_prime():
    assert la.check_prime(65521) == 65521
    for bad in (1, 4, 65537):
        with pytest.raises(ValueError):
            la.check_prime(bad)


primes = st.sampled_from([2, 3, 5, 7])
small = st.tuples(st.integers(1, 5), st.integers(1, 5))


@st.composite
def matrices(draw):
    p = draw(primes)
    r, c = draw(small)
    m = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return m, p


@given(matrices())
def test_rank_nullity(mp):
    m, p = mp
    r = la.rank(m, p)
    ker = la.kernel_basis(m, p)
    assert ker.shape[0] + r == m.shape[1]
    assert not (m @ ker.T % p).any()


@given(matrices())
def test_rref_row_space(mp):
    m, p = mp
    red, piv, r = la.rref(m, p)
    assert la.rank(np.vstack([m, red]), p) == r
    for row, c in enumerate(piv):
        assert red[row, c] == 1 and np.count_nonzero(red[:, c]) == 1


@given(matrices(), st.integers(0, 2**31))
def test_solve_consistent(mp, seed):
    m, p = mp
    x = np.random.default_rng(seed).integers(0, p, size=(m.shape[1], 2))
    sol = la.solve(m, m @ x % p, p)
    assert sol is not None and (m @ sol % p == m @ x % p).all()


@given(st.integers(1, 4), primes, st.integers(0, 2**31))
def test_batch_invertible_matches_rank(n, p, seed):
    stack = np.random.default_rng(seed).integers(0, p, size=(12, n, n))
    ok = la.batch_invertible(stack, p)
    assert list(ok) == [la.rank(a, p) == n for a in stack]


@given(matrices())
def test_quotient_projection_kernel(mp):
    m, p = mp
    reps, proj = la.quotient_basis(m, m.shape[1], p)
    assert not (proj @ m.T % p).any()
    assert reps.shape[0] == m.shape[1] - la.rank(m, p)


def test_coefficient_vectors():
    v = la.coefficient_vectors(2, 3)
    assert v.shape == (9, 2) and len({tuple(r) for r in v}) == 9
