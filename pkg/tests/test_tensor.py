from __future__ import annotations

from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from manincheck.freealg import Gen, NCPoly
from manincheck.scalar import QQ, FieldError, assignment_from_values, make_parameter_assignment
from manincheck.tensor import (
    AlgMatrix, ScalarMatrix, ShapeError, alg_product_chain, embed, matmul, partial_trace, perm_action,
    permutation_op, projector, star_power, word_action,
)

KINDS4 = ("antisym-q", "sym-q", "antisym-p", "sym-p")


def to_sympy(mat: ScalarMatrix) -> sympy.Matrix:
    rows = list(product(*[range(1, d + 1) for d in mat.row_dims]))
    cols = list(product(*[range(1, d + 1) for d in mat.col_dims]))
    return sympy.Matrix(len(rows), len(cols), lambda r, c: sympy.Rational(str(mat[rows[r], cols[c]].value)))


def sympy_flip(q: dict, n: int) -> sympy.Matrix:
    """Oracle: P(e_a (x) e_b) = q_ab e_b (x) e_a, built directly."""
    basis = list(product(range(1, n + 1), repeat=2))
    P = sympy.zeros(n * n, n * n)
    for (a, b) in basis:
        P[basis.index((b, a)), basis.index((a, b))] = q[a, b]
    return P


def qdict(a, n):
    return {(i, j): sympy.Rational(str(a.q(i, j).value)) for i in range(1, n + 1) for j in range(1, n + 1)}


def test_flip_matches_oracle():
    a = assignment_from_values({(1, 2): 3, (1, 3): 5, (2, 3): 7}, {}, 3, 1, QQ)
    assert to_sympy(permutation_op(a, "q")) == sympy_flip(qdict(a, 3), 3)


def test_antisymmetrizer_k2_is_half_one_minus_flip():
    a = assignment_from_values({(1, 2): 3}, {}, 2, 1, QQ)
    A = to_sympy(projector(a, "antisym-q", 2))
    assert A == (sympy.eye(4) - sympy_flip(qdict(a, 2), 2)) / 2
    assert A.rank() == 1
    assert projector(a, "antisym-q", 2).rank() == 1


@pytest.mark.parametrize("kind", KINDS4 + ("mixed-qp",))
def test_k1_projectors_are_identity(kind):
    a = make_parameter_assignment(3, 3, "generic", 1)
    assert projector(a, kind, 1) == ScalarMatrix.identity((3,), a.field)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_braid_relation(n):
    a = make_parameter_assignment(n, n, "generic", n)
    P = permutation_op(a, "q")
    d3 = (n, n, n)
    P12, P23 = embed(P, (0, 1), d3), embed(P, (1, 2), d3)
    assert matmul(matmul(P12, P23), P12) == matmul(matmul(P23, P12), P23)
    assert matmul(P, P) == ScalarMatrix.identity((n, n), a.field)


@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 3))
def test_projector_properties(seed, n, k):
    a = make_parameter_assignment(n, n, "generic", seed)
    for kind in KINDS4:
        A = projector(a, kind, k)
        assert matmul(A, A) == A
    if k >= 2:
        assert matmul(projector(a, "sym-q", k), projector(a, "antisym-q", k)).is_zero()
    if k == 2:
        assert projector(a, "antisym-q", 2) + projector(a, "sym-q", 2) == ScalarMatrix.identity((n, n), a.field)


@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_mixed_projector_absorbs_both_sides(seed, n):
    a = make_parameter_assignment(n, n, "generic", seed)
    for k in range(1, n + 1):
        A = projector(a, "mixed-qp", k)
        assert matmul(projector(a, "antisym-q", k), A) == A
        assert matmul(A, projector(a, "antisym-p", k)) == A


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mixed_projector_idempotent_when_q_equals_p(n):
    a = make_parameter_assignment(n, n, "yangian", 3)
    same = assignment_from_values({(i, j): a.q.raw(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)},
                                  {(i, j): a.q.raw(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)},
                                  n, n, a.field)
    A = projector(same, "mixed-qp", n)
    assert matmul(A, A) == A


@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_yangian_projector_lemma(seed, n):
    a = make_parameter_assignment(n, n, "yangian", seed)
    for k in range(1, n + 1):
        A = projector(a, "yangian-antisym", k)
        Ap = projector(a, "antisym-p", k)
        assert matmul(A, A) == A
        assert matmul(Ap, A) == Ap
        assert matmul(A, Ap) == A


def test_yangian_projector_needs_u():
    with pytest.raises(FieldError):
        projector(make_parameter_assignment(2, 2, "generic", 1), "yangian-antisym", 2)


def test_perm_action_independent_of_reduced_word():
    a = make_parameter_assignment(3, 3, "generic", 9)
    # s1 s2 s1 and s2 s1 s2 are both reduced words of the longest permutation of S_3
    assert word_action(a, (1, 2, 1), 3) == word_action(a, (2, 1, 2), 3)
    assert perm_action(a, (3, 2, 1), 3) == word_action(a, (1, 2, 1), 3)


def test_chain_entries_are_words():
    M2 = alg_product_chain("M", 2, 2, 2, QQ)
    assert M2.shape == (4, 4)
    assert M2[(1, 2), (1, 2)] == NCPoly.word([Gen("M", 1, 1), Gen("M", 2, 2)], QQ)
    assert all(len(v.terms) == 1 and len(next(iter(v.terms))) == 2 for v in M2.entries.values())
    M1 = alg_product_chain("M", 2, 3, 1, QQ)
    assert M1.entries == AlgMatrix.generic("M", 2, 3, QQ).entries
    with pytest.raises(ShapeError):
        alg_product_chain("M", 2, 2, 0, QQ)


def test_partial_traces():
    a = make_parameter_assignment(3, 3, "generic", 2, "Q")
    I3 = ScalarMatrix.identity((3,), QQ)
    assert partial_trace(I3, [0])[(), ()] == 3
    assert partial_trace(permutation_op(a, "q"), [0]) == I3
    a2 = make_parameter_assignment(2, 2, "generic", 2, "Q")
    assert partial_trace(projector(a2, "antisym-q", 2), [0, 1])[(), ()] == 1


@given(st.integers(0, 10 ** 6))
def test_partial_trace_slot_order_and_linearity(seed):
    a = make_parameter_assignment(2, 2, "generic", seed)
    A = projector(a, "antisym-q", 3)
    S = projector(a, "sym-q", 3)
    assert partial_trace(partial_trace(A, [2]), [0]) == partial_trace(partial_trace(A, [0]), [1])
    assert partial_trace(A + S, [1]) == partial_trace(A, [1]) + partial_trace(S, [1])


def test_star_powers_low_order():
    a = make_parameter_assignment(2, 2, "generic", 4)
    M = AlgMatrix.generic("M", 2, 2, a.field)
    assert star_power(M, a, 0).entries == AlgMatrix.identity((2,), a.field).entries
    assert star_power(M, a, 1).entries == M.entries
    classical = make_parameter_assignment(2, 2, "classical", 0)
    M2 = star_power(M, classical, 2)
    # classically the star square is the ordinary matrix square
    assert M2.entries == matmul(M, M).entries
    assert M2[(1,), (2,)].render() == "1 * M[1,1]M[1,2] + 1 * M[1,2]M[2,2]"
