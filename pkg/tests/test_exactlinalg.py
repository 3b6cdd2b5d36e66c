import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from cleftlab import exactlinalg as la
from cleftlab.errors import InputError

PRIMES = [2, 3, 5, 101]


@st.composite
def matrices(draw, max_side=6):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(1, max_side))
    c = draw(st.integers(1, max_side))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(entries, dtype=np.int64).reshape(r, c)


def test_is_prime_small_values():
    assert [n for n in range(30) if la.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_prime_field_rejects_bad_moduli():
    with pytest.raises(InputError):
        la.PrimeField(15)
    with pytest.raises(InputError):
        la.PrimeField(2 ** 31 - 1)
    assert la.PrimeField(101).inv(2) == 51


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_oracle(pm):
    p, m = pm
    assert la.rank(m, p) == oracles.rank(m, p)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_is_reduced_and_row_equivalent(pm):
    p, m = pm
    r, piv = la.rref(m, p)
    k = len(piv)
    assert (r[k:] == 0).all()
    for i, c in enumerate(piv):
        col = np.zeros(m.shape[0], dtype=np.int64)
        col[i] = 1
        assert (r[:, c] == col).all()
    # same row space
    assert la.span(m, m.shape[1], p) == la.span(r[:k], m.shape[1], p)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_basis(pm):
    p, m = pm
    k = la.kernel_basis(m, p)
    assert k.dim == m.shape[1] - oracles.rank(m, p)
    if k.dim:
        assert not (m @ k.basis.T % p).any()


@settings(max_examples=100, deadline=None)
@given(matrices(max_side=5))
def test_det_matches_sympy(pm):
    p, m = pm
    n = min(m.shape)
    sq = m[:n, :n]
    assert la.det(sq, p) == int(sympy.Matrix(sq.tolist()).det()) % p
    assert la.is_invertible(sq, p) == (la.det(sq, p) != 0)
    if la.det(sq, p):
        assert (la.mul(sq, la.inverse(sq, p), p) == la.identity(n)).all()
    else:
        with pytest.raises(ZeroDivisionError):
            la.inverse(sq, p)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.integers(0, 2 ** 16))
def test_solve_consistent_and_inconsistent(pm, seed):
    p, m = pm
    rng = np.random.default_rng(seed)
    x = rng.integers(0, p, size=m.shape[1])
    b = m @ x % p
    sol = la.solve(m, b, p)
    assert sol is not None and ((m @ sol - b) % p == 0).all()
    # a right-hand side outside the column space has no solution
    span = la.column_span(m, p)
    if span.dim < m.shape[0]:
        e = la.zeros(m.shape[0], 1)
        off = [i for i in range(m.shape[0]) if not span.contains(np.eye(m.shape[0], dtype=np.int64)[i])]
        e[off[0], 0] = 1
        assert la.solve(m, e, p) is None


def test_subspace_membership_and_complement():
    p = 7
    s = la.span([[1, 2, 0], [0, 0, 1]], 3, p)
    assert s.dim == 2
    assert s.contains([2, 4, 5])
    assert not s.contains([0, 1, 0])
    pi, sec = s.complement_projection()
    assert (la.mul(pi, sec, p) == la.identity(1)).all()
    assert not la.mul(pi, s.basis.T, p).any()
    assert la.sum_spaces([s, la.span([[0, 1, 0]], 3, p)], 3, p).dim == 3


def test_empty_shapes():
    assert la.rank(np.zeros((0, 3), dtype=np.int64), 5) == 0
    assert la.kernel_basis(np.zeros((0, 3), dtype=np.int64), 5).dim == 3
    assert la.span(np.zeros((0, 2), dtype=np.int64), 2, 5).dim == 0
