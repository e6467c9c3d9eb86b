"""Capelli-type identities for MN with [M_ij, N_kl] = -delta_jk H_il."""

from __future__ import annotations

from itertools import product
from typing import Callable, List

from ..det import cdet, cper, rdet, rper
from ..freealg import NCPoly, poly_sum
from ..ideal import CAPELLI_VARIANTS, RelationSet, capelli_relations
from ..qcomb import (eps_perm, increasing_subsets, mu_perm, multiplicity_factorial, nondecreasing_indices,
                     permutations_of)
from ..scalar import ParametricMatrix
from .base import Context, IdentityCase, Options, fmt_idx, ideal_case

# (orientation of the diagonal shift, sign of the H term)
SHIFT = {"det-col": ("col", 1), "det-row": ("row", 1), "per": ("row", -1), "per-col": ("col", -1)}


def shape(opts: Options):
    d = max(opts.dims)
    return d, d


def shifted_entry(ctx: Context, m: int, I, K, variant: str) -> Callable:
    """X_ab = (MN)_{i_a k_b} + sign c H_{i_a k_b}, c from the diagonal shift of the variant.

    The column variants multiply H on the right by diag(r-1, ..., 0) and the row
    variants on the left by diag(0, ..., r-1); swap-diag reverses the diagonal.
    """
    f = ctx.field
    r = len(I)
    where, sgn = SHIFT[variant]
    swapped = ctx.mutation == "swap-diag"

    def X(a, b):
        i, k = I[a - 1], K[b - 1]
        if where == "col":
            c = (b - 1) if swapped else (r - b)
        else:
            c = (r - a) if swapped else (a - 1)
        mn = poly_sum([NCPoly.gen("M", i, j, field=f) * NCPoly.gen("N", j, k, field=f) for j in range(1, m + 1)], f)
        return mn + NCPoly.gen("H", i, k, field=f).scale(sgn * c)
    return X


def local_minor(X: Callable, P: ParametricMatrix, idx, orientation: str, kind: str) -> NCPoly:
    """An r x r minor of the local matrix X with weights read off the index idx."""
    r = len(idx)
    f = P.field
    terms = []
    for sigma in permutations_of(r):
        if kind == "det":
            coef = eps_perm(P, idx, sigma, require_increasing=False)
        else:
            coef = mu_perm(P, idx, sigma)
        if orientation == "col":
            factors = [X(sigma[t], t + 1) for t in range(r)]
        else:
            factors = [X(t + 1, sigma[t]) for t in range(r)]
        term = factors[0]
        for x in factors[1:]:
            term = term * x
        terms.append(term * coef)
    total = poly_sum(terms, f)
    if kind == "per":
        total = total.scale(f.inv(multiplicity_factorial(idx)))
    return total


def index_pairs(variant: str, n: int, s: int, r: int):
    if variant == "det-col":
        return [(I, K) for I in increasing_subsets(range(1, n + 1), r) for K in product(range(1, s + 1), repeat=r)]
    if variant == "det-row":
        return [(I, K) for I in increasing_subsets(range(1, n + 1), r) for K in product(range(1, s + 1), repeat=r)]
    return [(I, K) for I in product(range(1, n + 1), repeat=r) for K in nondecreasing_indices(s, r)]


def capelli_difference(ctx: Context, dims, variant: str, I, K) -> NCPoly:
    n, m, s = dims
    r = len(I)
    a = ctx.assign
    f = ctx.field
    ones = ParametricMatrix.ones(max(dims), f)
    X = shifted_entry(ctx, m, I, K, variant)
    if variant == "det-col":
        lhs = local_minor(X, a.q, I, "col", "det")
        rhs = [cdet("M", a.q, I, J) * cdet("N", ones, J, K, strict=False)
               for J in increasing_subsets(range(1, m + 1), r)]
    elif variant == "det-row":
        lhs = local_minor(X, a.q, K, "row", "det")
        rhs = [rdet("M", ones, I, J, strict=False) * rdet("N", a.q, J, K, strict=False)
               for J in increasing_subsets(range(1, m + 1), r)]
    elif variant == "per":
        lhs = local_minor(X, a.p, K, "row", "per")
        rhs = [rper("M", ones, I, J, normalized=True) * rper("N", a.p, J, K, normalized=True)
               for J in nondecreasing_indices(m, r)]
    else:
        lhs = local_minor(X, a.p, I, "col", "per")
        rhs = [cper("M", a.p, I, J, normalized=True, strict=False) * cper("N", ones, J, K, normalized=True,
                                                                         strict=False)
               for J in nondecreasing_indices(m, r)]
    return lhs - poly_sum(rhs, f)


def relations(ctx: Context, dims, variant: str) -> RelationSet:
    return ctx.rels(("capelli", variant, dims), lambda: capelli_relations(*dims, ctx.assign, variant))


def variant_cases(variant: str) -> Callable[[Options], List[IdentityCase]]:
    if variant not in CAPELLI_VARIANTS:
        raise ValueError(f"unknown Capelli variant {variant!r}")

    def cases(opts: Options) -> List[IdentityCase]:
        n, m, s = dims = opts.dims
        out = []
        for r in range(1, min(n, s, opts.capelli_r) + 1):
            for I, K in index_pairs(variant, n, s, r):
                def build(ctx, I=I, K=K):
                    return [capelli_difference(ctx, dims, variant, I, K)], relations(ctx, dims, variant)
                out.append(ideal_case(f"capelli-{variant}", f"r={r} I={fmt_idx(I)} K={fmt_idx(K)}",
                                      {"r": r, "I": list(I), "K": list(K)}, 2 * r, build, ("swap-diag",)))
        return out
    return cases
