"""MacMahon, trace replacement, Newton, Cayley-Hamilton and char(MN) vs char(NM).

All but char-mn-nm live on a q-Manin matrix (p = q), checked degree by degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List

from ..det import sym_function
from ..freealg import NCPoly, poly_sum
from ..ideal import RelationSet, commuting_relations, manin_relations
from ..tensor import AlgMatrix, antisymmetrizer, chain, matmul, partial_trace, star_power, symmetrizer
from .base import Context, IdentityCase, Options, ideal_case

DEFAULT_CAPS = {"macmahon": None, "trace-replacement": 4, "newton": 4, "newton-lemma": 3,
                "cayley-hamilton": None, "char-mn-nm": None}


def cap(suite: str, opts: Options) -> int:
    if opts.degree is not None:
        return opts.degree
    if suite == "macmahon":
        return 5 if opts.n <= 2 else 4
    return DEFAULT_CAPS[suite]


def q_manin(ctx: Context, n: int) -> RelationSet:
    a = ctx.assign
    return ctx.rels(("q-manin", n), lambda: manin_relations(n, n, a, q=a.q, p=a.q))


def generic(ctx: Context, n: int) -> AlgMatrix:
    return AlgMatrix.generic("M", n, n, ctx.field)


def e(ctx, k, n):
    return sym_function("e", k, generic(ctx, n), ctx.assign, n, "q")


def h(ctx, k, n):
    return sym_function("h", k, generic(ctx, n), ctx.assign, n, "q")


def tr_star(ctx, k, n) -> NCPoly:
    return star_power(generic(ctx, n), ctx.assign, k, "q").trace()


def _c(ctx, x: Fraction):
    f = ctx.field
    return f.norm(f.coerce(x.numerator) * f.inv(f.coerce(x.denominator)))


def macmahon_cases(opts: Options) -> List[IdentityCase]:
    """sum_{a+b=d} Bos_a Ferm_b = 0 for d >= 1, Bos_a = h_a, Ferm_b = (-1)^b e_b."""
    n = opts.n
    out = []
    for d in range(1, cap("macmahon", opts) + 1):
        def build(ctx, d=d):
            terms = [h(ctx, a, n) * e(ctx, d - a, n).scale((-1) ** (d - a)) for a in range(d + 1)]
            return [poly_sum(terms, ctx.field)], q_manin(ctx, n)
        out.append(ideal_case("macmahon", f"d={d}", {"d": d}, d, build, ("break-constraint",)))
    return out


def _trace_sa(ctx, n, k, s_len, a_from) -> NCPoly:
    """tr S^(s_len) A^{a_from..k} M_1...M_k with 1-based slot ranges."""
    a = ctx.assign
    S = symmetrizer(a, k, "q", range(s_len)) if s_len > 1 else None
    A = antisymmetrizer(a, k, "q", range(a_from - 1, k)) if k - a_from >= 1 else None
    op = chain(generic(ctx, n), k)
    if A is not None:
        op = matmul(A, op)
    if S is not None:
        op = matmul(S, op)
    return partial_trace(op, range(k))[(), ()]


def trace_replacement_cases(opts: Options) -> List[IdentityCase]:
    n = opts.n
    out = []
    for k in range(2, cap("trace-replacement", opts) + 1):
        for r in range(1, k):
            def build(ctx, k=k, r=r):
                lhs = _trace_sa(ctx, n, k, r, r + 1)
                c1 = _c(ctx, Fraction(r * (k - r + 1), k))
                c2 = _c(ctx, Fraction((r + 1) * (k - r), k))
                rhs = _trace_sa(ctx, n, k, r, r).scale(c1) + _trace_sa(ctx, n, k, r + 1, r + 1).scale(c2)
                return [lhs - rhs], q_manin(ctx, n)
            out.append(ideal_case("trace-replacement", f"k={k} r={r}", {"k": k, "r": r}, k, build,
                                  ("break-constraint",)))
    return out


def newton_cases(opts: Options) -> List[IdentityCase]:
    """k e_k = sum_i (-1)^{k+i+1} e_i tr M^[k-i] and k h_k = sum_{i>=1} tr M^[i] h_{k-i}."""
    n = opts.n
    out = []
    for k in range(1, cap("newton", opts) + 1):
        def build_e(ctx, k=k):
            rhs = poly_sum([e(ctx, i, n) * tr_star(ctx, k - i, n) * ((-1) ** (k + i + 1)) for i in range(k)],
                           ctx.field)
            return [e(ctx, k, n).scale(k) - rhs], q_manin(ctx, n)

        def build_h(ctx, k=k):
            rhs = poly_sum([tr_star(ctx, i, n) * h(ctx, k - i, n) for i in range(1, k + 1)], ctx.field)
            return [h(ctx, k, n).scale(k) - rhs], q_manin(ctx, n)

        out.append(ideal_case("newton", f"e k={k}", {"side": "e", "k": k}, k, build_e, ("break-constraint",)))
        out.append(ideal_case("newton", f"h k={k}", {"side": "h", "k": k}, k, build_h, ("break-constraint",)))
    return out


def newton_lemma_cases(opts: Options) -> List[IdentityCase]:
    """k tr_{1..k-1} A^(k) M_1...M_k = sum_i (-1)^{k+i+1} e_i M^[k-i], entrywise."""
    n = opts.n
    out = []
    for k in range(1, cap("newton-lemma", opts) + 1):
        def build(ctx, k=k):
            a = ctx.assign
            M = generic(ctx, n)
            lhs = partial_trace(matmul(antisymmetrizer(a, k, "q"), chain(M, k)), range(k - 1))
            lhs = lhs.scale(k)
            rhs = None
            for i in range(k):
                term = star_power(M, a, k - i, "q").left_mul(e(ctx, i, n)).scale((-1) ** (k + i + 1))
                rhs = term if rhs is None else rhs + term
            return [p for _, _, p in (lhs - rhs).entry_list()], q_manin(ctx, n)
        out.append(ideal_case("newton-lemma", f"k={k}", {"k": k}, k, build, ("break-constraint",)))
    return out


def cayley_hamilton_cases(opts: Options) -> List[IdentityCase]:
    """sum_k (-1)^k e_k M^[n-k] = 0, entrywise."""
    n = opts.n

    def build(ctx):
        M = generic(ctx, n)
        total = None
        for k in range(n + 1):
            term = star_power(M, ctx.assign, n - k, "q").left_mul(e(ctx, k, n)).scale((-1) ** k)
            total = term if total is None else total + term
        return [p for _, _, p in total.entry_list()], q_manin(ctx, n)

    return [ideal_case("cayley-hamilton", f"n={n}", {"n": n}, n, build, ("break-constraint",))]


def char_shape(opts: Options):
    return opts.n, opts.m


def char_relations(ctx: Context, n: int, m: int) -> RelationSet:
    def make():
        a = ctx.assign
        M = manin_relations(n, m, a)
        N = manin_relations(m, n, a, family="N", q=a.p, p=a.q)
        cross = commuting_relations({"M": (n, m)}, {"N": (m, n)}, ctx.field)
        return M.extend(N).extend(cross, groups=(("M",), ("N",)), label=f"char-mn-nm({n},{m})")
    return ctx.rels(("char", n, m), make)


def char_mn_nm_cases(opts: Options) -> List[IdentityCase]:
    """e_k(MN) with q on n equals e_k(NM) with p on m; the larger side vanishes above min(n, m)."""
    n, m = opts.n, opts.m
    top = max(n, m) if opts.degree is None else min(max(n, m), opts.degree)
    out = []
    for k in range(1, top + 1):
        def build(ctx, k=k):
            f = ctx.field
            M = AlgMatrix.generic("M", n, m, f)
            N = AlgMatrix.generic("N", m, n, f)
            lhs = sym_function("e", k, matmul(M, N), ctx.assign, n, "q")
            rhs = sym_function("e", k, matmul(N, M), ctx.assign, m, "p")
            return [lhs - rhs], char_relations(ctx, n, m)
        out.append(ideal_case("char-mn-nm", f"k={k}", {"k": k}, 2 * k, build, ("break-constraint",)))
    return out
