"""Exact checks that need no ideal: sign calculus, tensor operators, Yang-Baxter and fusion."""

from __future__ import annotations

import random
from math import factorial
from itertools import combinations, permutations
from typing import List

from ..qcomb import (complement, eps_index, eps_perm, juxtapose, mu_perm, ordered, permutations_of, reverse,
                     sign, sorting_permutation)
from ..scalar import ParameterAssignment, ParameterError, ParametricMatrix, _replace
from ..tensor import ScalarMatrix, embed, matmul, permutation_op, projector
from ..yangian import check_fusion, check_ybe, fusion_passes
from .base import Context, IdentityCase, Options, equality_outcome, fmt_idx

SIGN_N = 4


def _idx_sets(n: int):
    for r in range(n + 1):
        yield from combinations(range(1, n + 1), r)


def _eps(ctx: Context, I):
    """eps(q, I); drop-sign forgets the minus signs (a negative control)."""
    e = eps_index(ctx.assign, I)
    if ctx.mutation == "drop-sign":
        inv = sum(1 for s in range(len(I)) for t in range(s + 1, len(I)) if I[s] > I[t])
        return e * ((-1) ** inv)
    return e


def _first_failure(items):
    for label, ok in items:
        if not ok:
            return label
    return None


def _sign_case(label: str, check, mutations=("drop-sign",)) -> IdentityCase:
    def evaluate(ctx: Context):
        bad = _first_failure(check(ctx))
        out = equality_outcome(bad is None)
        if bad is not None:
            out.witness = bad
        return out
    return IdentityCase("signs", label, {"n": SIGN_N}, None, evaluate, mutations)


def _factorization(ctx):
    for I in _idx_sets(SIGN_N):
        for K in _idx_sets(SIGN_N):
            lhs = _eps(ctx, juxtapose(I, reverse(K)))
            rhs = eps_index(ctx.assign, juxtapose(I, K)) * eps_index(ctx.assign, reverse(K))
            yield f"I={fmt_idx(I)} K={fmt_idx(K)}", lhs == rhs


def _nested(ctx):
    a = ctx.assign
    for K in _idx_sets(SIGN_N):
        for I in _idx_sets(len(K)):
            I = tuple(K[i - 1] for i in I)
            rest = complement(I, K)
            rhs = (eps_index(a, reverse(I)) * eps_index(a, reverse(rest)) * eps_index(a, juxtapose(I, rest))
                   * eps_index(a, juxtapose(rest, I)))
            yield f"I={fmt_idx(I)} K={fmt_idx(K)}", _eps(ctx, reverse(K)) == rhs


def _index_vs_perm(ctx):
    for r in range(1, SIGN_N + 1):
        for I in permutations(range(1, SIGN_N + 1), r):
            rhs = eps_perm(ctx.assign, ordered(I), sorting_permutation(I))
            yield f"I={fmt_idx(I)}", _eps(ctx, I) == rhs


def _classical(ctx):
    f = ctx.field
    ones = ParametricMatrix.ones(SIGN_N, f)
    for r in range(1, SIGN_N + 1):
        I = tuple(range(1, r + 1))
        for sigma in permutations_of(r):
            e = eps_perm(ones, I, sigma)
            if ctx.mutation == "drop-sign":
                e = e * sign(sigma)
            yield f"sigma={fmt_idx(sigma)}", e == sign(sigma) and mu_perm(ones, I, sigma) == 1


def signs_cases(opts: Options) -> List[IdentityCase]:
    return [_sign_case("eps(I+K^t) = eps(I+K) eps(K^t)", _factorization),
            _sign_case("nested factorization of eps(K^t)", _nested),
            _sign_case("eps(I) = eps(I^or, sigma)", _index_vs_perm),
            _sign_case("classical eps = sgn, mu = 1", _classical)]


def signs_shape(opts: Options):
    return SIGN_N, SIGN_N


# --- operators ------------------------------------------------------------

def _op_case(label: str, size: int, k: int, check, mutations=("break-constraint",)) -> IdentityCase:
    def evaluate(ctx: Context):
        a = ctx.assign.restrict(size)
        ok = check(a, ctx)
        return equality_outcome(ok)
    return IdentityCase("operators", label, {"n": size, "k": k}, None, evaluate, mutations)


def operators_cases(opts: Options) -> List[IdentityCase]:
    kmax = 4 if opts.degree is None else opts.degree
    yangian = opts.mode == "yangian"
    out: List[IdentityCase] = []
    for size in range(1, opts.n + 1):
        dims2 = (size, size)

        def p_square(a, ctx, dims2=dims2):
            P = permutation_op(a, "q")
            return matmul(P, P) == ScalarMatrix.identity(dims2, a.field)

        def braid(a, ctx, size=size):
            P = permutation_op(a, "q")
            d3 = (size,) * 3
            P12, P23 = embed(P, (0, 1), d3), embed(P, (1, 2), d3)
            return matmul(matmul(P12, P23), P12) == matmul(matmul(P23, P12), P23)

        def a_plus_s(a, ctx, dims2=dims2):
            return projector(a, "antisym-q", 2) + projector(a, "sym-q", 2) == ScalarMatrix.identity(dims2, a.field)

        out.append(_op_case("P^2 = 1", size, 2, p_square))
        out.append(_op_case("braid", size, 3, braid, ()))
        out.append(_op_case("A + S = 1 (k=2)", size, 2, a_plus_s))
        for k in range(1, kmax + 1):
            for kind in ("antisym-q", "sym-q", "antisym-p", "sym-p"):
                def idem(a, ctx, kind=kind, k=k):
                    A = projector(a, kind, k)
                    return matmul(A, A) == A
                out.append(_op_case(f"{kind}^2 = {kind} (k={k})", size, k, idem))
            if k >= 2:
                def s_a(a, ctx, k=k):
                    S = projector(a, "sym-q", k)
                    A = projector(a, "antisym-q", k)
                    if ctx.mutation == "drop-sign":
                        A = projector(a, "sym-q", k)
                    return matmul(S, A).is_zero()
                out.append(_op_case(f"S A = 0 (k={k})", size, k, s_a, ("drop-sign",)))
            if k <= size:
                def mixed(a, ctx, k=k):
                    A = projector(a, "mixed-qp", k)
                    absorb = matmul(projector(a, "antisym-q", k), A) == A and matmul(A, projector(a, "antisym-p", k)) == A
                    if a.q == a.p:
                        return absorb and matmul(A, A) == A
                    return absorb and (k < size or matmul(A, A) == A.scale(mixed_square_scalar(a, k)))
                out.append(_op_case(f"A_q mixed-qp = mixed-qp = mixed-qp A_p (k={k})", size, k, mixed))
            if yangian and k <= size:
                def yang(a, ctx, k=k):
                    A = projector(a, "yangian-antisym", k)
                    Ap = projector(a, "antisym-p", k)
                    return matmul(A, A) == A and matmul(Ap, A) == Ap and matmul(A, Ap) == A
                out.append(_op_case(f"yangian A idempotent, A_p A = A_p, A A_p = A (k={k})", size, k, yang))
    return out


def mixed_square_scalar(a: ParameterAssignment, k: int):
    """c with (A_qp^(k))^2 = c A_qp^(k) when k = n: the mean of eps(p, sigma) / eps(q, sigma)."""
    I = tuple(range(1, k + 1))
    f = a.field
    total = f(0)
    for s in permutations_of(k):
        total = total + eps_perm(a.p, I, s) / eps_perm(a.q, I, s)
    return total / f(factorial(k))


# --- Yang-Baxter and fusion ------------------------------------------------

def break_p12(assign: ParameterAssignment, rng: random.Random) -> ParameterAssignment:
    """Resample p_12 (keeping p_21 = 1/p_12) so that p_12 q_12 != u^2."""
    if assign.p.n < 2:
        raise ParameterError("no p_12 to resample")
    f = assign.field
    u2 = assign.u * assign.u
    while True:
        v = f(f.random_nonzero(rng))
        if v != assign.p(1, 2) and v * assign.q(1, 2) != u2:
            break
    upper = {(i, j): assign.p.raw(i, j) for i in range(1, assign.p.n + 1) for j in range(i + 1, assign.p.n + 1)}
    upper[1, 2] = v.value
    p = ParametricMatrix.from_upper(upper, assign.p.n, f)
    return _replace(assign, p=p, constrained=False)


def ybe_cases(opts: Options) -> List[IdentityCase]:
    n = opts.n

    def evaluate(ctx: Context):
        res = check_ybe(n, ctx.assign)
        return equality_outcome(res["equal"], res)

    return [IdentityCase("ybe", f"n={n}", {"n": n}, None, evaluate, ("break-constraint",))]


def fusion_cases(opts: Options) -> List[IdentityCase]:
    n = opts.n
    out = []
    for k in range(1, min(opts.fusion_k, 4) + 1):
        def evaluate(ctx: Context, k=k):
            res = check_fusion(n, k, ctx.assign)
            return equality_outcome(fusion_passes(res), res)
        out.append(IdentityCase("fusion", f"n={n} k={k}", {"n": n, "k": k}, None, evaluate, ("break-constraint",)))
    return out
