"""Classical (q = p = 1) realizations used as independent oracles.

* a truncated Weyl algebra acting on polynomials in x_ij, for the Capelli identity;
* brute-force expansion for the MacMahon master theorem;
* exact rational matrices for the identities that involve an inverse.

Numeric determinants and inverses come from sympy so that the oracle does
not share code with the engine's minors; the epsilon weights and the
column determinants of the quantum side are evaluated through
:mod:`manincheck.qcomb` and :mod:`manincheck.det` with all parameters 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from .det import cdet
from .qcomb import complement, eps_index, juxtapose, permutations_of, reverse, sign
from .scalar import QQ, FieldElement, ParametricMatrix

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Fraction]

INVERSE_IDENTITIES = ("jacobi", "cayley-complementary", "sylvester", "quasidet")
BASIS_GUARD = 20000


class TruncationError(ValueError):
    """An operator pushed a polynomial above the truncation degree."""


@dataclass
class OracleReport:
    """Result of one classical oracle run."""

    oracle: str
    passed: bool
    checks: int
    failures: List[str] = dc_field(default_factory=list)
    detail: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"oracle": self.oracle, "passed": self.passed, "checks": self.checks,
                "failures": self.failures[:10], "detail": self.detail}


# --- truncated Weyl algebra ------------------------------------------------

class TruncatedWeylOp:
    """Polynomials in x_ij (1 <= i, j <= n) of total degree <= D, and operators on them.

    Variables are numbered row-major; an operator is a list of letters
    ("x" | "d", i, j) applied right to left, like a product of operators.
    """

    def __init__(self, n: int, D: int):
        if n < 1 or D < 0:
            raise ValueError("need n >= 1 and D >= 0")
        self.n, self.D = n, D
        self.nvars = n * n
        size = sympy.binomial(self.nvars + D, D)
        if size > BASIS_GUARD:
            raise ValueError(f"basis of {size} monomials exceeds the guard {BASIS_GUARD}")

    def var(self, i: int, j: int) -> int:
        return (i - 1) * self.n + (j - 1)

    def basis(self, max_degree: int = None) -> List[Monomial]:
        top = self.D if max_degree is None else max_degree
        out = []
        for deg in range(top + 1):
            for combo in _compositions(deg, self.nvars):
                out.append(combo)
        return out

    def x(self, i: int, j: int, poly: Poly) -> Poly:
        v = self.var(i, j)
        out: Poly = {}
        for mono, c in poly.items():
            if sum(mono) + 1 > self.D:
                raise TruncationError(f"x_{i}{j} raises degree above {self.D}")
            m = list(mono)
            m[v] += 1
            out[tuple(m)] = out.get(tuple(m), 0) + c
        return _clean(out)

    def d(self, i: int, j: int, poly: Poly) -> Poly:
        v = self.var(i, j)
        out: Poly = {}
        for mono, c in poly.items():
            e = mono[v]
            if e:
                m = list(mono)
                m[v] -= 1
                out[tuple(m)] = out.get(tuple(m), 0) + c * e
        return _clean(out)

    def apply(self, word: Sequence[Tuple[str, int, int]], poly: Poly) -> Poly:
        for kind, i, j in reversed(word):
            poly = self.x(i, j, poly) if kind == "x" else self.d(i, j, poly)
        return poly

    def check_commutators(self) -> List[str]:
        """[d_ij, x_kl] = delta_ik delta_jl on every monomial of degree < D."""
        bad = []
        idx = [(i, j) for i in range(1, self.n + 1) for j in range(1, self.n + 1)]
        for mono in self.basis(self.D - 1):
            p = {mono: Fraction(1)}
            for (i, j), (k, l) in product(idx, idx):
                lhs = _sub(self.d(i, j, self.x(k, l, p)), self.x(k, l, self.d(i, j, p)))
                want = p if (i, j) == (k, l) else {}
                if _sub(lhs, want):
                    bad.append(f"[d{i}{j}, x{k}{l}] on {mono}")
        return bad


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _clean(p: Poly) -> Poly:
    return {k: v for k, v in p.items() if v}


def _add(a: Poly, b: Poly, c=1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + c * v
    return _clean(out)


def _sub(a: Poly, b: Poly) -> Poly:
    return _add(a, b, -1)


CAPELLI_DIAGONALS = ("descending", "ascending", "none")


def _capelli_lhs(W: TruncatedWeylOp, poly: Poly, diag: str = "descending") -> Poly:
    """cdet(X D^t + diag(n-1, ..., 0)) applied to poly, as a column determinant.

    ``diag`` may reverse the shift to diag(0, ..., n-1) or drop it (negative controls).
    """
    n = W.n
    total: Poly = {}
    for sigma in permutations_of(n):
        # factors for columns 1..n multiply left to right, so column n acts first
        acc = poly
        for b in range(n, 0, -1):
            a = sigma[b - 1]
            new: Poly = {}
            for k in range(1, n + 1):
                new = _add(new, W.x(a, k, W.d(b, k, acc)))
            if a == b and diag != "none":
                new = _add(new, acc, n - b if diag == "descending" else b - 1)
            acc = new
        total = _add(total, acc, sign(sigma))
    return total


def _capelli_rhs(W: TruncatedWeylOp, poly: Poly) -> Poly:
    """det X det D applied to poly."""
    n = W.n
    after_d: Poly = {}
    for sigma in permutations_of(n):
        acc = poly
        for b in range(1, n + 1):
            acc = W.d(sigma[b - 1], b, acc)
        after_d = _add(after_d, acc, sign(sigma))
    total: Poly = {}
    for sigma in permutations_of(n):
        acc = after_d
        for b in range(1, n + 1):
            acc = W.x(sigma[b - 1], b, acc)
        total = _add(total, acc, sign(sigma))
    return total


def classical_capelli_oracle(n: int, D: int = None, diag: str = "descending") -> OracleReport:
    """Compare cdet(E + diag(n-1, ..., 0)) with det X det D on every monomial of degree <= D - n."""
    D = n + 1 if D is None else D
    if diag not in CAPELLI_DIAGONALS:
        raise ValueError(f"unknown diagonal {diag!r}; expected one of {CAPELLI_DIAGONALS}")
    if n > 3 or D > 4:
        raise ValueError("classical Capelli oracle is limited to n <= 3 and D <= 4")
    if D < n:
        raise TruncationError(f"truncation D = {D} is below n = {n}; det X escapes the space")
    W = TruncatedWeylOp(n, D)
    failures = W.check_commutators()
    monos = W.basis(D - n)
    for mono in monos:
        p = {mono: Fraction(1)}
        if _sub(_capelli_lhs(W, p, diag), _capelli_rhs(W, p)):
            failures.append(f"monomial {mono}")
    return OracleReport("classical-capelli", not failures, len(monos),
                        failures, {"n": n, "D": D, "diag": diag, "basis": len(W.basis())})


# --- MacMahon ----------------------------------------------------------------

def _as_rational_matrix(A) -> List[List[Fraction]]:
    return [[Fraction(v) for v in row] for row in A]


def macmahon_coefficients(A, degree: int) -> List[Fraction]:
    """sum_{|k| = t} G(k) for t = 0..degree by brute-force expansion of prod_i (sum_j a_ij x_j)^{k_i}."""
    A = _as_rational_matrix(A)
    n = len(A)
    xs = sympy.symbols(f"x1:{n + 1}")
    lin = [sum(sympy.Rational(A[i][j].numerator, A[i][j].denominator) * xs[j] for j in range(n))
           for i in range(n)]
    out = []
    for t in range(degree + 1):
        total = Fraction(0)
        for k in _compositions(t, n):
            prod_poly = sympy.Poly(sympy.Mul(*[lin[i] ** k[i] for i in range(n)]), *xs)
            c = prod_poly.coeff_monomial(sympy.Mul(*[xs[i] ** k[i] for i in range(n)]))
            total += Fraction(int(c.p), int(c.q))
        out.append(total)
    return out


def inverse_det_series(A, degree: int, sign: int = -1) -> List[Fraction]:
    """Coefficients of 1 / det(I - tA) up to t^degree (1 / det(I + tA) for sign = +1)."""
    A = _as_rational_matrix(A)
    n = len(A)
    t = sympy.Symbol("t")
    M = sympy.eye(n) + sign * t * sympy.Matrix(n, n, lambda i, j: sympy.Rational(A[i][j].numerator, A[i][j].denominator))
    det = sympy.Poly(M.det(), t)
    c = [Fraction(int(v.p), int(v.q)) for v in reversed(det.all_coeffs())]
    c += [Fraction(0)] * (degree + 1 - len(c))
    # invert the power series with constant term 1
    inv = [Fraction(1)]
    for k in range(1, degree + 1):
        inv.append(-sum(c[i] * inv[k - i] for i in range(1, k + 1)))
    return inv


def classical_macmahon_oracle(n: int, A, degree: int, sign: int = -1) -> OracleReport:
    if n > 3 or degree > 6:
        raise ValueError("classical MacMahon oracle is limited to n <= 3 and degree <= 6")
    if len(A) != n or any(len(r) != n for r in A):
        raise ValueError("A must be n x n")
    lhs = macmahon_coefficients(A, degree)
    rhs = inverse_det_series(A, degree, sign)
    failures = [f"t^{t}: {lhs[t]} != {rhs[t]}" for t in range(degree + 1) if lhs[t] != rhs[t]]
    return OracleReport("classical-macmahon", not failures, degree + 1, failures,
                        {"n": n, "degree": degree, "series": [str(v) for v in rhs]})


# --- identities with an inverse ---------------------------------------------

def random_invertible(n: int, rng: random.Random, log: List[str] = None) -> sympy.Matrix:
    while True:
        M = sympy.Matrix(n, n, lambda i, j: sympy.Rational(rng.randint(-9, 9), rng.randint(1, 5)))
        if M.det() != 0:
            return M
        if log is not None:
            log.append("singular sample resampled")


def _fe(v) -> FieldElement:
    return FieldElement(Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q)), QQ)


def _entry(M: sympy.Matrix):
    return lambda i, j: _fe(M[i - 1, j - 1])


def _cdet(M: sympy.Matrix, I, J) -> FieldElement:
    """Column determinant through the engine's code path with all parameters 1."""
    if not I:
        return FieldElement(QQ.one, QQ)
    ones = ParametricMatrix.ones(max(M.shape), QQ)
    return cdet(_entry(M), ones, tuple(I), tuple(J), strict=False)


def _eps(I, signed: bool = True) -> FieldElement:
    """Classical eps; ``signed=False`` keeps only the zero on repeats (a negative control)."""
    n = max(I) if I else 1
    e = eps_index(ParametricMatrix.ones(n, QQ), I) if I else FieldElement(QQ.one, QQ)
    if not signed and not e.is_zero():
        return FieldElement(QQ.one, QQ)
    return e


def _full(n):
    return tuple(range(1, n + 1))


def check_jacobi(M: sympy.Matrix, signed: bool = True) -> List[str]:
    """eps(I^c + I^t) cdet(M) cdet((M^-1)_IJ) = eps(J^c + J^t) cdet(M_{J^c I^c})."""
    n = M.shape[0]
    Y = M.inv()
    det = _fe(M.det())
    bad = []
    for k in range(1, n + 1):
        for I in combinations(_full(n), k):
            Ic = complement(I, _full(n))
            for J in product(_full(n), repeat=k):
                lhs = _eps(juxtapose(Ic, reverse(I)), signed) * det * _cdet(Y, I, J)
                if len(set(J)) < k:
                    rhs = FieldElement(QQ.zero, QQ)
                else:
                    Jc = complement(tuple(sorted(J)), _full(n))
                    rhs = _eps(juxtapose(Jc, reverse(J)), signed) * _cdet(M, Jc, Ic)
                if lhs != rhs:
                    bad.append(f"jacobi I={I} J={J}")
    return bad


def check_cayley_complementary(M: sympy.Matrix, signed: bool = True) -> List[str]:
    """Each 2-minor expansion cdet(M_IJ) - M_i1j1 M_i2j2 + M_i2j1 M_i1j2 = 0, pushed through the complement map.

    The complement map sends cdet(M_IJ) to eps(J^c + J^t) / eps(I^c + I^t) cdet(M)^-1 cdet(M_{J^c I^c});
    applied to the identity for M^-1 it must again give zero.
    """
    n = M.shape[0]
    if n < 2:
        return []
    Y = M.inv()
    det = _fe(M.det())
    full = _full(n)

    def comp(I, J):
        Ic, Jc = complement(I, full), complement(tuple(sorted(J)), full)
        return _eps(juxtapose(Jc, reverse(J)), signed) / _eps(juxtapose(Ic, reverse(I)), signed) / det * _cdet(M, Jc, Ic)

    bad = []
    for I in combinations(full, 2):
        for J in permutations(full, 2):
            (i1, i2), (j1, j2) = I, J
            terms = [(1, [(I, J)]), (-1, [((i1,), (j1,)), ((i2,), (j2,))]), (1, [((i2,), (j1,)), ((i1,), (j2,))])]
            original = sum((c * _prod([_cdet(Y, a, b) for a, b in fs]) for c, fs in terms), _fe(0))
            mapped = sum((c * _prod([comp(a, b) for a, b in fs]) for c, fs in terms), _fe(0))
            if original != 0 or mapped != 0:
                bad.append(f"cayley I={I} J={J}")
    return bad


def _prod(xs):
    out = _fe(1)
    for x in xs:
        out = out * x
    return out


def check_sylvester(M: sympy.Matrix) -> List[str]:
    """B_rs = cdet(M_KK)^-1 cdet(M_{(r + K)(s + K)}) has cdet(B) = cdet(M_KK)^-1 cdet(M), for each split."""
    n = M.shape[0]
    bad = []
    for m in range(1, n):
        K = tuple(range(m + 1, n + 1))
        dK = _cdet(M, K, K)
        if dK == 0:
            continue
        B = sympy.zeros(m, m)
        for r in range(1, m + 1):
            for s in range(1, m + 1):
                v = _cdet(M, (r,) + K, (s,) + K) / dK
                B[r - 1, s - 1] = sympy.Rational(v.value.numerator, v.value.denominator)
        if _cdet(B, _full(m), _full(m)) != _cdet(M, _full(n), _full(n)) / dK:
            bad.append(f"sylvester |K|={len(K)}")
    return bad


def quasideterminant(X: sympy.Matrix, i: int, j: int) -> Optional[FieldElement]:
    """|X|_ij = (Y_ji)^-1 with Y = X^-1, positions 1-based; None when undefined."""
    if X.det() == 0:
        return None
    y = X.inv()[j - 1, i - 1]
    if y == 0:
        return None
    return _fe(1 / y)


def _quasi_factor(M, J, I, k, last_full: bool):
    """|M_{J_k I_k}|_{j_k i_k}; the printed last factor uses J_{n-1}, I_{n-1} instead of J_n, I_n."""
    n = len(I)
    size = k if (k < n or last_full) else n - 1
    Jk, Ik = tuple(sorted(J[:size])), tuple(sorted(I[:size]))
    if J[k - 1] not in Jk or I[k - 1] not in Ik:
        return None
    sub = M.extract([j - 1 for j in Jk], [i - 1 for i in Ik])
    return quasideterminant(sub, Jk.index(J[k - 1]) + 1, Ik.index(I[k - 1]) + 1)


def check_quasidet(M: sympy.Matrix, last_full: bool = True, signed: bool = True) -> Tuple[List[str], int]:
    """cdet(M) = eps(J) / eps(I) prod_k |M_{J_k I_k}|_{j_k i_k} over all pairs of orderings I, J.

    Returns the failures and the number of (I, J) pairs where some factor is undefined.
    """
    n = M.shape[0]
    det = _cdet(M, _full(n), _full(n))
    bad, undefined = [], 0
    for I in permutations(_full(n)):
        for J in permutations(_full(n)):
            factors = [_quasi_factor(M, J, I, k, last_full) for k in range(1, n + 1)]
            if any(f is None for f in factors):
                undefined += 1
                continue
            rhs = _eps(J, signed) / _eps(I, signed) * _prod(factors)
            if rhs != det:
                bad.append(f"quasidet I={I} J={J}")
    return bad, undefined


def classical_inverse_identities_oracle(n: int, trials: int = 20, which: str = "jacobi",
                                        seed: int = 0, signed: bool = True) -> OracleReport:
    """Classical specialization oracle for one inverse-dependent identity.

    ``signed=False`` replaces every nonzero eps by 1; Sylvester has no eps and ignores it.
    """
    if which not in INVERSE_IDENTITIES:
        raise ValueError(f"unknown identity {which!r}; expected one of {INVERSE_IDENTITIES}")
    if n > 3:
        raise ValueError("inverse identities oracle is limited to n <= 3")
    rng = random.Random(f"manincheck-inverse|{which}|{n}|{seed}")
    log: List[str] = []
    failures: List[str] = []
    detail: dict = {"n": n, "trials": trials, "label": "classical specialization oracle"}
    undefined = 0
    printed_ok = printed_total = 0
    for _ in range(trials):
        M = random_invertible(n, rng, log)
        if which == "jacobi":
            failures += check_jacobi(M, signed)
        elif which == "cayley-complementary":
            failures += check_cayley_complementary(M, signed)
        elif which == "sylvester":
            failures += check_sylvester(M)
        else:
            bad, und = check_quasidet(M, last_full=True, signed=signed)
            failures += bad
            undefined += und
            pbad, pund = check_quasidet(M, last_full=False)
            printed_total += (len(list(permutations(range(n)))) ** 2) - pund
            printed_ok += (len(list(permutations(range(n)))) ** 2) - pund - len(pbad)
    if which == "quasidet":
        detail["reading"] = "J_n, I_n"
        detail["undefined_factor_pairs"] = undefined
        detail["printed_reading_defined_pairs"] = printed_total
        detail["printed_reading_agreeing_pairs"] = printed_ok
    detail["resampled"] = len(log)
    return OracleReport(f"classical-{which}", not failures, trials, failures, detail)
