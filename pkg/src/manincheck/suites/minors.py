"""Minor identities of a square (q, p)-Manin matrix and the comodule checks."""

from __future__ import annotations

from itertools import product
from typing import List

from ..det import cdet
from ..freealg import NCPoly, poly_sum
from ..ideal import (RelationSet, commuting_relations, grassmann_relations, manin_relations,
                     quantum_plane_relations)
from ..qcomb import complement, eps_index, increasing_subsets, juxtapose
from ..tensor import AlgMatrix, ScalarMatrix, chain, matmul, projector
from .base import Context, IdentityCase, fmt_idx, ideal_case

ALL = ("column-perm", "laplace", "plucker", "adjugate", "comodule", "factorization")


def _manin(ctx: Context, n: int) -> RelationSet:
    return ctx.rels(("manin", n), lambda: manin_relations(n, n, ctx.assign))


def _eps(ctx: Context, I, symbol: str):
    """An eps factor, replaced by 1 under drop-sign."""
    if ctx.mutation == "drop-sign":
        return ctx.field(1)
    return eps_index(ctx.assign, I, symbol)


def _full(n: int):
    return tuple(range(1, n + 1))


def column_perm_cases(n: int) -> List[IdentityCase]:
    cases = []
    for I in product(range(1, n + 1), repeat=n):
        def build(ctx, I=I):
            a = ctx.assign
            lhs = cdet("M", a, _full(n), I)
            rhs = cdet("M", a, _full(n), _full(n)) * _eps(ctx, I, "p")
            return [lhs - rhs], _manin(ctx, n)
        cases.append(ideal_case("column-perm", f"I={fmt_idx(I)}", {"I": list(I)}, n, build, ("drop-sign",)))
    return cases


def laplace_sum(ctx: Context, n: int, I, K) -> NCPoly:
    a = ctx.assign
    terms = []
    for J in increasing_subsets(range(1, n + 1), len(I)):
        Jc = complement(J, _full(n))
        terms.append(cdet("M", a, J, I) * cdet("M", a, Jc, K) * _eps(ctx, juxtapose(J, Jc), "q"))
    return poly_sum(terms, ctx.field)


def laplace_cases(n: int) -> List[IdentityCase]:
    cases = []
    for r in range(1, n):
        for I in product(range(1, n + 1), repeat=r):
            for K in product(range(1, n + 1), repeat=n - r):
                def build(ctx, I=I, K=K):
                    lhs = laplace_sum(ctx, n, I, K)
                    rhs = cdet("M", ctx.assign, _full(n), _full(n)) * eps_index(ctx.assign, juxtapose(I, K), "p")
                    return [lhs - rhs], _manin(ctx, n)
                cases.append(ideal_case("laplace", f"r={r} I={fmt_idx(I)} K={fmt_idx(K)}",
                                        {"r": r, "I": list(I), "K": list(K)}, n, build, ("drop-sign",)))
    return cases


def plucker_cases(n: int) -> List[IdentityCase]:
    cases = []
    for r in range(1, n // 2 + 1):
        for I in increasing_subsets(range(1, n + 1), r):
            for K in increasing_subsets(range(1, n + 1), 2 * r):
                def build(ctx, I=I, K=K):
                    a = ctx.assign
                    terms = []
                    for J in increasing_subsets(K, r):
                        rest = complement(J, K)
                        terms.append(cdet("M", a, J, I) * cdet("M", a, rest, I) * _eps(ctx, juxtapose(J, rest), "q"))
                    return [poly_sum(terms, ctx.field)], _manin(ctx, n)
                cases.append(ideal_case("plucker", f"r={r} I={fmt_idx(I)} K={fmt_idx(K)}",
                                        {"r": r, "I": list(I), "K": list(K)}, 2 * r, build, ("drop-sign",)))
    return cases


def adjugate_cases(n: int) -> List[IdentityCase]:
    cases = []
    full = _full(n)
    for i in full:
        for k in full:
            def build(ctx, i=i, k=k):
                a = ctx.assign
                ic = complement((i,), full)
                terms = []
                for j in full:
                    jc = complement((j,), full)
                    terms.append(cdet("M", a, jc, ic) * cdet("M", a, (j,), (k,)) * _eps(ctx, juxtapose(jc, (j,)), "q"))
                rhs = cdet("M", a, full, full) * eps_index(a, juxtapose(ic, (k,)), "p")
                return [poly_sum(terms, ctx.field) - rhs], _manin(ctx, n)
            cases.append(ideal_case("adjugate", f"i={i} k={k}", {"i": i, "k": k}, n, build, ("drop-sign",)))
    return cases


def _vector_rels(ctx: Context, n: int, fam: str) -> RelationSet:
    def make():
        a = ctx.assign
        base = manin_relations(n, n, a)
        if fam == "X":
            vec = quantum_plane_relations(n, a.p, "X")
        else:
            vec = grassmann_relations(n, a.q, "Psi")
        cross = commuting_relations({"M": (n, n)}, {fam: (n, 0)}, ctx.field)
        return base.extend(vec).extend(cross, groups=(("M",), (fam,)), label=f"manin+{fam}")
    return ctx.rels(("vector", n, fam), make)


def comodule_cases(n: int) -> List[IdentityCase]:
    cases = []

    def y_plane(ctx):
        f = ctx.field
        Y = [poly_sum([NCPoly.gen("M", i, j, field=f) * NCPoly.gen("X", j, field=f) for j in _full(n)], f)
             for i in _full(n)]
        YY = AlgMatrix((n, n), (), {((a, b), ()): Y[a - 1] * Y[b - 1] for a in _full(n) for b in _full(n)}, f)
        out = matmul(projector(ctx.assign, "antisym-q", 2), YY)
        return list(out.entries.values()), _vector_rels(ctx, n, "X")

    def phi_grassmann(ctx):
        f = ctx.field
        Phi = [poly_sum([NCPoly.gen("Psi", i, field=f) * NCPoly.gen("M", i, j, field=f) for i in _full(n)], f)
               for j in _full(n)]
        PP = AlgMatrix((), (n, n), {((), (a, b)): Phi[a - 1] * Phi[b - 1] for a in _full(n) for b in _full(n)}, f)
        out = matmul(PP, projector(ctx.assign, "sym-p", 2))
        return list(out.entries.values()), _vector_rels(ctx, n, "Psi")

    cases.append(ideal_case("comodule", "A(Y(x)Y)", {"form": "A(YxY)"}, 2, y_plane, ("break-constraint",)))
    cases.append(ideal_case("comodule", "(Phi(x)Phi)S", {"form": "(PhixPhi)S"}, 2, phi_grassmann,
                            ("break-constraint",)))
    for k in range(2, n + 1):
        def anti(ctx, k=k):
            a, f = ctx.assign, ctx.field
            MM = chain(AlgMatrix.generic("M", n, n, f), k)
            one = ScalarMatrix.identity((n,) * k, f)
            out = matmul(matmul(projector(a, "antisym-q", k), MM), one - projector(a, "antisym-p", k))
            return list(out.entries.values()), _manin(ctx, n)

        def sym(ctx, k=k):
            a, f = ctx.assign, ctx.field
            MM = chain(AlgMatrix.generic("M", n, n, f), k)
            one = ScalarMatrix.identity((n,) * k, f)
            out = matmul(matmul(one - projector(a, "sym-q", k), MM), projector(a, "sym-p", k))
            return list(out.entries.values()), _manin(ctx, n)

        cases.append(ideal_case("comodule", f"A^({k})M..M(1-A_p^({k}))", {"form": "antisym-chain", "k": k}, k, anti,
                                ("break-constraint",)))
        cases.append(ideal_case("comodule", f"(1-S^({k}))M..MS_p^({k})", {"form": "sym-chain", "k": k}, k, sym,
                                ("break-constraint",)))
    return cases


def factorization_cases(n: int) -> List[IdentityCase]:
    def build(ctx):
        a, f = ctx.assign, ctx.field
        lhs = matmul(projector(a, "antisym-q", n), chain(AlgMatrix.generic("M", n, n, f), n))
        det = cdet("M", a, _full(n), _full(n))
        rhs = AlgMatrix.from_scalar(projector(a, "mixed-qp", n)).left_mul(det)
        return list((lhs - rhs).entries.values()), _manin(ctx, n)

    return [ideal_case("factorization", f"k={n}", {"k": n}, n, build, ("break-constraint",))]


BUILDERS = {
    "column-perm": column_perm_cases,
    "laplace": laplace_cases,
    "plucker": plucker_cases,
    "adjugate": adjugate_cases,
    "comodule": comodule_cases,
    "factorization": factorization_cases,
}
