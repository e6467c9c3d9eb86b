"""Classical specialization oracles wrapped as catalogue cases."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from .. import models
from .base import Context, IdentityCase, Options, equality_outcome

ALL_ONES = [[1, 1], [1, 1]]


def _outcome(rep: models.OracleReport):
    out = equality_outcome(rep.passed, rep.to_dict(), yes="agree", no="disagree")
    if rep.failures:
        out.witness = rep.failures[0]
    return out


def capelli_cases(opts: Options) -> List[IdentityCase]:
    n = min(opts.n, 3)

    def evaluate(ctx: Context):
        diag = "ascending" if ctx.mutation == "swap-diag" else "descending"
        return _outcome(models.classical_capelli_oracle(n, n + 1, diag))

    muts = ("swap-diag",) if n >= 2 else ()
    return [IdentityCase("oracle-capelli", f"n={n} D={n + 1}", {"n": n, "D": n + 1}, None, evaluate, muts)]


def _random_matrix(n: int, seed: int):
    rng = random.Random(f"manincheck-macmahon|{n}|{seed}")
    return [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]


def macmahon_cases(opts: Options) -> List[IdentityCase]:
    n = min(opts.n, 3)
    degree = 4 if opts.degree is None else min(opts.degree, 6)
    out = []

    def random_case(ctx: Context):
        A = _random_matrix(n, ctx.seed)
        sign = 1 if ctx.mutation == "drop-sign" else -1
        return _outcome(models.classical_macmahon_oracle(n, A, degree, sign))

    out.append(IdentityCase("oracle-macmahon", f"n={n} random A", {"n": n, "degree": degree}, degree,
                            random_case, ("drop-sign",)))
    if n == 2:
        def ones_case(ctx: Context):
            sign = 1 if ctx.mutation == "drop-sign" else -1
            return _outcome(models.classical_macmahon_oracle(2, ALL_ONES, degree, sign))
        out.append(IdentityCase("oracle-macmahon", "n=2 all-ones A", {"n": 2, "degree": degree}, degree,
                                ones_case, ("drop-sign",)))
    return out


def inverse_cases(opts: Options) -> List[IdentityCase]:
    n = min(opts.n, 3)
    out = []
    for which in models.INVERSE_IDENTITIES:
        def evaluate(ctx: Context, which=which):
            rep = models.classical_inverse_identities_oracle(n, opts.oracle_trials, which, ctx.seed,
                                                             signed=ctx.mutation != "drop-sign")
            return _outcome(rep)
        # sign-free identities and n = 1 have nothing to drop
        muts = ("drop-sign",) if n >= 2 and which != "sylvester" else ()
        out.append(IdentityCase("oracle-inverse", f"{which} n={n}", {"which": which, "n": n,
                                                                      "trials": opts.oracle_trials},
                                None, evaluate, muts))
    return out
