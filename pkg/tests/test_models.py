from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from manincheck.det import sym_function
from manincheck.freealg import Gen
from manincheck.models import (
    INVERSE_IDENTITIES, TruncatedWeylOp, TruncationError, check_sylvester, classical_capelli_oracle,
    classical_inverse_identities_oracle, classical_macmahon_oracle, inverse_det_series, macmahon_coefficients,
    quasideterminant,
)
from manincheck.scalar import QQ, make_parameter_assignment

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def sympy_series(A, degree, sign=-1):
    """Oracle: Taylor coefficients of 1 / det(I - tA) straight from sympy."""
    t = sympy.Symbol("t")
    n = len(A)
    M = sympy.eye(n) + sign * t * sympy.Matrix(A)
    s = sympy.series(1 / M.det(), t, 0, degree + 1).removeO()
    return [Fraction(str(sympy.Poly(s, t).coeff_monomial(t ** k))) for k in range(degree + 1)]


def test_weyl_commutators_exhaustive():
    for n in (1, 2):
        assert TruncatedWeylOp(n, 3).check_commutators() == []


def test_capelli_oracle_n1_is_euler_operator():
    rep = classical_capelli_oracle(1, 4)
    assert rep.passed


@pytest.mark.parametrize("n", [2, 3])
def test_capelli_oracle_exact(n):
    rep = classical_capelli_oracle(n, n + 1)
    assert rep.passed, rep.failures[:3]
    if n == 2:
        assert rep.checks == 5  # monomials of degree <= 1 in four variables


def test_capelli_shift_is_essential():
    assert not classical_capelli_oracle(2, 3, "none").passed
    assert not classical_capelli_oracle(2, 3, "ascending").passed


def test_capelli_truncation_errors():
    with pytest.raises(TruncationError):
        classical_capelli_oracle(3, 2)
    with pytest.raises(ValueError):
        classical_capelli_oracle(2, 5)


@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=2))
def test_inverse_det_series_matches_sympy(A):
    assert inverse_det_series(A, 4) == sympy_series(A, 4)


@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_macmahon_oracle_random(n, seed):
    rng = random.Random(seed)
    A = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]
    assert classical_macmahon_oracle(n, A, 4 if n == 3 else 5).passed


def test_macmahon_examples():
    assert macmahon_coefficients([[0, 0], [0, 0]], 3) == [1, 0, 0, 0]
    assert macmahon_coefficients([[Fraction(2, 3)]], 4) == [Fraction(2, 3) ** k for k in range(5)]
    rep = classical_macmahon_oracle(2, [[1, 1], [1, 1]], 4)
    assert rep.passed
    assert rep.detail["series"] == ["1", "2", "4", "8", "16"]
    assert not classical_macmahon_oracle(2, [[1, 1], [1, 1]], 4, sign=1).passed


def test_macmahon_matches_classical_h_under_substitution():
    a = make_parameter_assignment(2, 2, "classical", 0, "Q")
    A = [[Fraction(1, 2), Fraction(-2)], [Fraction(3), Fraction(1, 3)]]
    vals = {Gen("M", i + 1, j + 1): QQ(A[i][j]) for i in range(2) for j in range(2)}
    coeffs = macmahon_coefficients(A, 4)
    for t in range(5):
        assert sym_function("h", t, "M", a).substitute(vals, QQ(0)) == coeffs[t]


@pytest.mark.parametrize("which", INVERSE_IDENTITIES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_inverse_identities(which, n):
    rep = classical_inverse_identities_oracle(n, 20, which, seed=1)
    assert rep.passed, rep.failures[:3]
    assert rep.detail["label"] == "classical specialization oracle"


@pytest.mark.parametrize("which", ["jacobi", "cayley-complementary", "quasidet"])
def test_inverse_identities_need_signs(which):
    assert not classical_inverse_identities_oracle(3, 5, which, seed=1, signed=False).passed


def test_quasidet_reading_is_reported():
    rep = classical_inverse_identities_oracle(2, 3, "quasidet", seed=2)
    assert rep.detail["reading"] == "J_n, I_n"
    assert rep.detail["printed_reading_defined_pairs"] == 0


def test_sylvester_example_and_identity_input():
    assert check_sylvester(sympy.Matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])) == []
    assert check_sylvester(sympy.eye(3)) == []
    assert quasideterminant(sympy.Matrix([[2, 1], [1, 3]]), 1, 1) == QQ(Fraction(5, 3))


def test_inverse_oracle_limits():
    with pytest.raises(ValueError):
        classical_inverse_identities_oracle(4, 1)
    with pytest.raises(ValueError):
        classical_inverse_identities_oracle(2, 1, "muir")
