from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, strategies as st

from manincheck.det import MinorSpec, cdet, char_poly_coeffs, cper, rdet, rper, sym_function
from manincheck.freealg import Gen, NCPoly
from manincheck.ideal import is_member, manin_relations
from manincheck.qcomb import MultiIndexError, eps_index
from manincheck.scalar import QQ, assignment_from_values, make_parameter_assignment

A2 = assignment_from_values({(1, 2): 3}, {(1, 2): 5}, 2, 2, QQ)


def M(i, j):
    return NCPoly.gen("M", i, j, field=QQ)


def test_small_expansions():
    assert cdet("M", A2, (1,), (1,)) == M(1, 1)
    assert cdet("M", A2, (1, 2), (1, 2)) == M(1, 1) * M(2, 2) - M(2, 1) * M(1, 2) * A2.q(2, 1)
    assert rper("M", A2, (1, 2), (1, 2)) == M(1, 1) * M(2, 2) + M(1, 2) * M(2, 1) * A2.p(1, 2)


def test_invalid_specs():
    with pytest.raises(MultiIndexError):
        MinorSpec("column", "det", (2, 1), (1, 2))
    with pytest.raises(MultiIndexError):
        MinorSpec("column", "det", (1, 2), (1,))
    with pytest.raises(MultiIndexError):
        MinorSpec("diagonal", "det", (1,), (1,))


def test_repeated_column_index_keeps_literal_sum():
    # the literal sum with J = (1, 1) is not collapsed to zero
    assert not cdet("M", A2, (1, 2), (1, 1)).is_zero()


def numeric_values(n, seed):
    rng = sympy.Matrix(n, n, lambda i, j: sympy.Rational((7 * i + 3 * j + seed) % 11 - 5, 1 + (i + j + seed) % 3))
    vals = {Gen("M", i + 1, j + 1): QQ(Fraction(str(rng[i, j]))) for i in range(n) for j in range(n)}
    return rng, vals


@given(st.integers(1, 4), st.integers(0, 100))
def test_classical_minors_match_sympy(n, seed):
    C = make_parameter_assignment(n, n, "classical", 0, "Q")
    mat, vals = numeric_values(n, seed)
    idx = tuple(range(1, n + 1))
    det = QQ(Fraction(str(mat.det())))
    per = QQ(Fraction(str(mat.per())))
    assert cdet("M", C, idx, idx).substitute(vals, QQ(0)) == det
    assert rdet("M", C, idx, idx).substitute(vals, QQ(0)) == det
    assert rper("M", C, idx, idx).substitute(vals, QQ(0)) == per
    assert cper("M", C, idx, idx).substitute(vals, QQ(0)) == per


def test_column_permutation_proposition_n3():
    a = make_parameter_assignment(3, 3, "generic", 11)
    rels = manin_relations(3, 3, a)
    base = cdet("M", a, (1, 2, 3), (1, 2, 3))
    for I in permutations((1, 2, 3)):
        lhs = cdet("M", a, (1, 2, 3), I)
        assert is_member(lhs - base * eps_index(a, I, "p"), rels).member


def test_char_poly_coefficients():
    a1 = make_parameter_assignment(1, 1, "generic", 1, "Q")
    assert char_poly_coeffs("M", a1) == [NCPoly.one(QQ), -M(1, 1)]
    a = make_parameter_assignment(2, 2, "generic", 1, "Q")
    coeffs = char_poly_coeffs("M", a)
    assert coeffs[0] == NCPoly.one(QQ)
    assert coeffs[2] == sym_function("e", 2, "M", a)
    assert coeffs[1] == -sym_function("e", 1, "M", a)


def test_e1_is_trace_and_e0_is_one():
    a = make_parameter_assignment(3, 3, "generic", 2, "Q")
    assert sym_function("e", 0, "M", a) == NCPoly.one(QQ)
    assert sym_function("h", 0, "M", a) == NCPoly.one(QQ)
    assert sym_function("e", 1, "M", a) == M(1, 1) + M(2, 2) + M(3, 3)
    assert sym_function("h", 1, "M", a) == M(1, 1) + M(2, 2) + M(3, 3)

