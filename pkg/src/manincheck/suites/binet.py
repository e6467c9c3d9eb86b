"""Cauchy-Binet formulas for quantum determinants and normalized permanents."""

from __future__ import annotations

from itertools import product
from typing import List

from ..det import cdet, rper
from ..freealg import NCPoly, poly_sum
from ..ideal import RelationSet, commuting_relations, free_relations, manin_relations
from ..qcomb import increasing_subsets, nondecreasing_indices
from ..scalar import ParametricMatrix
from .base import Context, IdentityCase, Options, fmt_idx, ideal_case


def product_entry(ctx: Context, mid: int):
    """(i, k) -> (MN)_ik = sum_j M_ij N_jk."""
    f = ctx.field

    def X(i, k):
        return poly_sum([NCPoly.gen("M", i, j, field=f) * NCPoly.gen("N", j, k, field=f)
                         for j in range(1, mid + 1)], f)
    return X


def _params(ctx: Context, symbol: str) -> ParametricMatrix:
    P = ctx.assign.params(symbol)
    if ctx.mutation == "drop-sign":
        return ParametricMatrix.ones(P.n, ctx.field)
    return P


def det_relations(ctx: Context, n: int, m: int, s: int) -> RelationSet:
    def make():
        M = manin_relations(n, m, ctx.assign)
        N = free_relations({"N": (m, s)}, ctx.field)
        cross = commuting_relations({"M": (n, m)}, {"N": (m, s)}, ctx.field)
        return M.extend(N).extend(cross, groups=(("M",), ("N",)), label=f"binet-det({n},{m},{s})")
    return ctx.rels(("binet-det", n, m, s), make)


def per_relations(ctx: Context, n: int, m: int, s: int) -> RelationSet:
    def make():
        N = manin_relations(m, s, ctx.assign, family="N")
        M = free_relations({"M": (n, m)}, ctx.field)
        cross = commuting_relations({"M": (n, m)}, {"N": (m, s)}, ctx.field)
        return N.extend(M).extend(cross, groups=(("M",), ("N",)), label=f"binet-per({n},{m},{s})")
    return ctx.rels(("binet-per", n, m, s), make)


def det_cases(opts: Options) -> List[IdentityCase]:
    """cdet_q((MN)_IK) = sum_J cdet_q(M_IJ) cdet_p(N_JK), zero when r > m."""
    n, m, s = opts.dims
    cases = []
    for r in range(1, min(n, s) + 1):
        for I in increasing_subsets(range(1, n + 1), r):
            for K in product(range(1, s + 1), repeat=r):
                def build(ctx, I=I, K=K, r=r):
                    a = ctx.assign
                    lhs = cdet(product_entry(ctx, m), a.q, I, K)
                    q, p = _params(ctx, "q"), _params(ctx, "p")
                    rhs = poly_sum([cdet("M", q, I, J) * cdet("N", p, J, K, strict=False)
                                    for J in increasing_subsets(range(1, m + 1), r)], ctx.field)
                    return [lhs - rhs], det_relations(ctx, n, m, s)
                tag = " (r>m)" if r > m else ""
                cases.append(ideal_case("binet-det", f"I={fmt_idx(I)} K={fmt_idx(K)}{tag}",
                                        {"r": r, "I": list(I), "K": list(K)}, 2 * r, build, ("drop-sign",)))
    return cases


def per_cases(opts: Options) -> List[IdentityCase]:
    """rper^_p((MN)_IK) = sum_{J nondecreasing} rper^_q(M_IJ) rper^_p(N_JK)."""
    n, m, s = opts.dims
    cases = []
    for r in range(1, min(n, s) + 1):
        for I in product(range(1, n + 1), repeat=r):
            for K in nondecreasing_indices(s, r):
                def build(ctx, I=I, K=K, r=r):
                    a = ctx.assign
                    lhs = rper(product_entry(ctx, m), a.p, I, K, normalized=True)
                    q, p = _params(ctx, "q"), _params(ctx, "p")
                    rhs = poly_sum([rper("M", q, I, J, normalized=True) * rper("N", p, J, K, normalized=True)
                                    for J in nondecreasing_indices(m, r)], ctx.field)
                    return [lhs - rhs], per_relations(ctx, n, m, s)
                cases.append(ideal_case("binet-per", f"I={fmt_idx(I)} K={fmt_idx(K)}",
                                        {"r": r, "I": list(I), "K": list(K)}, 2 * r, build, ("drop-sign",)))
    return cases
