from __future__ import annotations

import pytest

from manincheck.freealg import NCPoly
from manincheck.scalar import make_parameter_assignment
from manincheck.suites import (
    CATALOGUE, InapplicableMutation, Options, UnknownSuite, check_binet, check_capelli, check_minor_identities,
    check_series, known_ids, mutate, resolve, run_suite,
)
from manincheck.suites.base import Context, mutated_context
from manincheck.suites.report import dumps, sz_bound
from manincheck.suites.runner import check_with, summarize_controls
from manincheck.scalar import QQ, PrimeField


def case(suite, opts, label):
    return next(c for c in CATALOGUE[suite].cases(opts) if c.label == label)


def run_case(suite, opts, label, assign, mutation=None):
    c = case(suite, opts, label)
    ctx = Context(assign, seed=1)
    if mutation is None:
        return c.run(ctx)
    return mutate(c, mutation).run(mutated_context(ctx, mutation, CATALOGUE[suite].breaker))


A2 = make_parameter_assignment(2, 2, "generic", 1)


def test_laplace_member_and_drop_sign_control():
    assert run_case("laplace", Options(2), "r=1 I=(1) K=(2)", A2).verdict == "member"
    out = run_case("laplace", Options(2), "r=1 I=(1) K=(1)", A2, "drop-sign")
    assert out.verdict == "non-member" and out.witness


def test_plucker_n1_is_vacuous():
    rep = check_minor_identities(1, make_parameter_assignment(1, 1), ["plucker"])
    assert rep["passed"] and rep["suites"][0]["cases"] == []


@pytest.mark.parametrize("n", [1, 2])
def test_all_minor_identities(n):
    rep = check_minor_identities(n, make_parameter_assignment(n, n, "generic", 3), controls=True)
    assert rep["passed"]
    if n == 2:
        assert all(s["controls"][m]["status"] == "caught" for s in rep["suites"] for m in s["controls"])


def test_binet_examples():
    assert check_binet((1, 1, 1), make_parameter_assignment(1, 1, "generic", 2))["passed"]
    rep = check_binet((2, 1, 2), make_parameter_assignment(2, 1, "generic", 2))
    assert rep["passed"]
    assert any("(r>m)" in c["label"] for c in rep["cases"])
    per = check_binet((2, 2, 2), make_parameter_assignment(2, 2, "generic", 2), "per")
    assert next(c for c in per["cases"] if c["label"] == "I=(1,2) K=(1,2)")["verdict"] == "member"


def test_capelli_examples():
    a = make_parameter_assignment(2, 2, "generic", 4)
    rep = check_capelli((2, 2, 2), a, "det-col", controls=True)
    assert rep["passed"]
    assert all(c["verdict"] == "member" for c in rep["cases"] if c["indices"]["r"] == 1)
    assert rep["controls"]["swap-diag"]["status"] == "caught"
    out = run_case("capelli-det-col", Options(2), "r=2 I=(1,2) K=(1,2)", a, "swap-diag")
    assert out.verdict == "non-member"


def test_series_examples():
    a1 = make_parameter_assignment(1, 1, "generic", 5)
    mm = check_series(1, a1, "macmahon", 3)
    assert mm["passed"] and [c["degree"] for c in mm["cases"]] == [1, 2, 3]
    assert check_series(2, make_parameter_assignment(2, 2, "generic", 5), "cayley-hamilton")["passed"]
    nw = check_series(2, make_parameter_assignment(2, 2, "generic", 5), "newton")
    assert nw["passed"]


def test_newton_k1_is_exact_in_the_free_algebra():
    from manincheck.det import sym_function
    from manincheck.tensor import AlgMatrix, partial_trace, star_power
    a = make_parameter_assignment(3, 3, "generic", 5)
    M = AlgMatrix.generic("M", 3, 3, a.field)
    tr = partial_trace(star_power(M, a, 1), [0])[(), ()]
    assert sym_function("e", 1, "M", a) - tr == NCPoly.zero(a.field)


def test_mutation_errors():
    c = case("laplace", Options(2), "r=1 I=(1) K=(2)")
    with pytest.raises(InapplicableMutation):
        mutate(c, "swap-diag")
    with pytest.raises(InapplicableMutation):
        mutate(c, "nonsense")
    classical = Context(make_parameter_assignment(2, 2, "classical", 1))
    with pytest.raises(InapplicableMutation):
        mutated_context(classical, "break-constraint")


def test_catalogue_resolution():
    assert resolve(["all"]) == known_ids()
    assert resolve(["capelli", "laplace"]) == ["laplace", "capelli-det-col", "capelli-det-row", "capelli-per",
                                               "capelli-per-col"]
    with pytest.raises(UnknownSuite):
        resolve(["nosuch"])


def test_control_summary_rule():
    blocks = [{"controls": {"drop-sign": {"status": s}}} for s in ("caught",) * 4 + ("missed",)]
    assert summarize_controls(blocks, ["drop-sign"])[0]["verdict"] == "non-member"
    blocks[0]["controls"]["drop-sign"]["status"] = "missed"
    assert summarize_controls(blocks, ["drop-sign"])[0]["verdict"] == "vacuous"
    none = [{"controls": {"drop-sign": {"status": "inapplicable"}}}] * 5
    assert summarize_controls(none, ["drop-sign"])[0]["verdict"] == "inapplicable"


def test_run_suite_report_shape_and_determinism():
    r1 = run_suite("adjugate", Options(2), seeds=(1, 2))
    r2 = run_suite("adjugate", Options(2), seeds=(1, 2))
    assert dumps(r1) == dumps(r2)
    assert r1["passed"] and r1["nonvacuous"] and r1["millis"] is None
    assert {"id", "dims", "mode", "prime", "seeds", "controls", "sz_bound", "millis"} <= set(r1)
    assert [b["seed"] for b in r1["seeds"]] == [1, 2]
    assert all({"indices", "degree", "verdict"} <= set(c) for b in r1["seeds"] for c in b["cases"])


def test_forced_modes_are_recorded():
    r = run_suite("ybe", Options(2), "generic", seeds=(1,))
    assert r["mode"] == "yangian" and r["requested_mode"] == "generic"
    o = run_suite("oracle-macmahon", Options(2), "generic", seeds=(1,))
    assert o["mode"] == "classical" and o["note"] == "classical specialization oracle"


def test_sz_bound():
    assert sz_bound(PrimeField(2 ** 61 - 1), 4, "generic") == f"{12 / (2 ** 61 - 2):.3e}"
    assert sz_bound(QQ, 4, "classical") is None


def test_check_with_caller_assignment():
    block = check_with("signs", Options(2), make_parameter_assignment(4, 4, "generic", 3), seed=3)
    assert block["passed"] and block["controls"]["drop-sign"]["status"] == "caught"
