from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation

from manincheck.qcomb import (
    MultiIndexError, complement, eps_index, eps_perm, is_increasing, juxtapose, mu_perm, ordered, reverse,
    sign, sorting_permutation,
)
from manincheck.scalar import QQ, assignment_from_values, make_parameter_assignment

# distinct primes above the diagonal make accidental cancellations impossible
Q4 = {(1, 2): 2, (1, 3): 3, (1, 4): 5, (2, 3): 7, (2, 4): 11, (3, 4): 13}
P4 = {(1, 2): 17, (1, 3): 19, (1, 4): 23, (2, 3): 29, (2, 4): 31, (3, 4): 37}
A = assignment_from_values(Q4, P4, 4, 4, QQ)


def q(i, j):
    return A.q(i, j)


def p(i, j):
    return A.p(i, j)


def subsets(n=4):
    for r in range(n + 1):
        yield from combinations(range(1, n + 1), r)


def test_eps_index_examples():
    assert eps_index(A, (1, 2)) == 1
    assert eps_index(A, (2, 1)) == -q(2, 1)
    assert eps_index(A, (1, 1, 2)) == 0
    assert eps_index(A, (3, 1, 2)) == q(3, 1) * q(3, 2)


def test_eps_perm_examples():
    assert eps_perm(A, (1, 2), (1, 2)) == 1
    assert eps_perm(A, (1, 2), (2, 1)) == -q(2, 1)
    assert eps_perm(A, (1, 2, 3), (3, 2, 1)) == (-q(3, 2)) * (-q(3, 1)) * (-q(2, 1))


def test_mu_perm_examples():
    assert mu_perm(A, (1, 2), (1, 2)) == 1
    assert mu_perm(A, (1, 2), (2, 1)) == p(1, 2)
    assert mu_perm(A, (1, 2, 3), (3, 2, 1)) == p(2, 3) * p(1, 3) * p(1, 2)


def test_complement_examples():
    assert complement((2,), (1, 2, 3)) == (1, 3)
    assert complement((1, 3), (1, 2, 3, 4)) == (2, 4)
    assert complement((), (1, 2)) == (1, 2)


def test_errors():
    with pytest.raises(MultiIndexError):
        eps_perm(A, (2, 1), (1, 2))
    with pytest.raises(MultiIndexError):
        eps_perm(A, (1, 2), (1, 1))
    with pytest.raises(MultiIndexError):
        mu_perm(A, (1, 2), (2, 3))
    with pytest.raises(MultiIndexError):
        complement((5,), (1, 2, 3))
    with pytest.raises(MultiIndexError):
        complement((1, 1), (1, 2, 3))
    with pytest.raises(IndexError):
        eps_index(A, (5,))


def oracle_eps(I):
    """Direct product over inversion pairs of the sequence I."""
    if len(set(I)) != len(I):
        return QQ(0)
    acc = QQ(1)
    for s, t in combinations(range(len(I)), 2):
        if I[s] > I[t]:
            acc = acc * (-q(I[s], I[t]))
    return acc


@given(st.lists(st.integers(1, 4), max_size=5))
def test_eps_index_matches_inversion_oracle(I):
    assert eps_index(A, I) == oracle_eps(I)


def test_eps_index_agrees_with_eps_perm_of_sorting_permutation():
    for r in range(1, 5):
        for I in permutations(range(1, 5), r):
            assert eps_index(A, I) == eps_perm(A, ordered(I), sorting_permutation(I))


def test_factorization_with_reversed_tail_exhaustive():
    for I in subsets():
        for K in subsets():
            lhs = eps_index(A, juxtapose(I, reverse(K)))
            assert lhs == eps_index(A, juxtapose(I, K)) * eps_index(A, reverse(K))


def test_nested_factorization_exhaustive():
    for K in subsets():
        for r in range(len(K) + 1):
            for I in combinations(K, r):
                rest = complement(I, K)
                rhs = (eps_index(A, reverse(I)) * eps_index(A, reverse(rest))
                       * eps_index(A, juxtapose(I, rest)) * eps_index(A, juxtapose(rest, I)))
                assert eps_index(A, reverse(K)) == rhs


@given(st.permutations(range(1, 6)))
def test_classical_specialization(sigma):
    C = make_parameter_assignment(5, 5, "classical")
    parity = -1 if Permutation([s - 1 for s in sigma]).is_odd else 1
    assert sign(sigma) == parity
    assert eps_perm(C, (1, 2, 3, 4, 5), sigma) == parity
    assert mu_perm(C, (1, 2, 3, 4, 5), sigma) == 1


@given(st.lists(st.integers(1, 9), unique=True, max_size=6))
def test_multi_index_helpers(I):
    assert is_increasing(ordered(I))
    assert reverse(reverse(I)) == tuple(I)
    K = tuple(range(1, 10))
    rest = complement(I, K)
    assert sorted(rest + tuple(I)) == list(K)
    assert is_increasing(rest)
