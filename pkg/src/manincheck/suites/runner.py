"""Run catalogue entries over seeds, with degeneracy resampling and negative controls."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import List, Optional, Sequence

from ..ideal import GuardExceeded
from ..scalar import Field, field_from_tag, make_parameter_assignment
from .base import Context, IdentityCase, InapplicableMutation, Options, mutate, mutated_context
from .catalogue import CATALOGUE
from .report import field_tag, sz_bound

log = logging.getLogger("manincheck")

RESAMPLE_STRIDE = 10 ** 6
MAX_ATTEMPTS = 4
CONTROL_QUORUM = (4, 5)   # caught on at least 4 of every 5 applicable seeds


def effective_mode(suite_id: str, mode: str) -> str:
    modes = CATALOGUE[suite_id].modes
    return mode if mode in modes else modes[0]


def _case_record(case: IdentityCase, outcome) -> dict:
    rec = {"label": case.label, "indices": case.indices, "degree": case.degree, "verdict": outcome.verdict}
    if outcome.witness is not None:
        rec["witness"] = outcome.witness
    return rec


def _run_cases(cases: Sequence[IdentityCase], ctx: Context):
    records, passed, guard = [], True, False
    for case in cases:
        try:
            out = case.run(ctx)
        except GuardExceeded as exc:
            records.append({"label": case.label, "indices": case.indices, "degree": case.degree,
                            "verdict": "guard-exceeded", "witness": str(exc)})
            passed, guard = False, True
            continue
        records.append(_case_record(case, out))
        passed = passed and out.passed
    return records, passed, guard


def _assignment(sdef, opts: Options, mode: str, field: Field, seed: int):
    n, m = sdef.shape(opts)
    return make_parameter_assignment(n, m, mode, seed, field)


def run_seed(suite_id: str, opts: Options, mode: str, field_spec, seed: int) -> dict:
    """Positive cases and every control for one seed of one suite."""
    sdef = CATALOGUE[suite_id]
    field = field_from_tag(field_spec)
    mode = effective_mode(suite_id, mode)
    opts = Options(**{**asdict(opts), "mode": mode})
    cases = sdef.cases(opts)
    resamples = []
    for attempt in range(MAX_ATTEMPTS):
        draw = seed + RESAMPLE_STRIDE * attempt
        assign = _assignment(sdef, opts, mode, field, draw)
        ctx = Context(assign, guard=opts.guard, seed=draw)
        records, passed, guard = _run_cases(cases, ctx)
        degenerate = ctx.degenerate()
        if not degenerate or guard:
            break
        msg = f"{suite_id} seed {seed}: degenerate draw {draw} for {', '.join(degenerate)}; resampling"
        log.info(msg)
        resamples.append({"draw": draw, "degenerate": degenerate})
    block = {"seed": seed, "draw": ctx.seed, "assignment": assign.summary(), "cases": records,
             "passed": passed, "nonvacuous": ctx.nonvacuous(), "resampled": resamples,
             "guard_exceeded": guard, "controls": {}}
    if guard:
        return block
    for mutation in sdef.controls:
        block["controls"][mutation] = run_control(sdef, cases, ctx, mutation)
    return block


def run_control(sdef, cases: Sequence[IdentityCase], ctx: Context, mutation: str) -> dict:
    applicable = [c for c in cases if mutation in c.mutations]
    if not applicable:
        return {"status": "inapplicable", "reason": "no case admits this mutation"}
    try:
        mctx = mutated_context(ctx, mutation, sdef.breaker)
    except InapplicableMutation as exc:
        return {"status": "inapplicable", "reason": str(exc)}
    mutated = [mutate(c, mutation) for c in applicable]
    effective = [c for c in mutated if c.perturbed(ctx, mctx)]
    if not effective:
        return {"status": "inapplicable", "reason": "the mutation changes no case"}
    failing = []
    for case in effective:
        try:
            out = case.run(mctx)
        except GuardExceeded:
            continue
        if not out.passed:
            failing.append(case.label)
    status = "caught" if failing else "missed"
    rec = {"status": status, "mutated_cases": len(effective), "failing_cases": len(failing)}
    if failing:
        rec["first_failing"] = failing[0]
    return rec


def summarize_controls(blocks: List[dict], controls: Sequence[str]) -> List[dict]:
    out = []
    for mutation in controls:
        stats = [b["controls"].get(mutation) for b in blocks if mutation in b["controls"]]
        applicable = [s for s in stats if s["status"] != "inapplicable"]
        caught = sum(1 for s in applicable if s["status"] == "caught")
        need_num, need_den = CONTROL_QUORUM
        if not applicable:
            verdict = "inapplicable"
        elif caught * need_den >= need_num * len(applicable):
            verdict = "non-member"
        else:
            verdict = "vacuous"
        out.append({"mutation": mutation, "applicable_seeds": len(applicable), "caught_seeds": caught,
                    "verdict": verdict})
    return out


def run_suite(suite_id: str, opts: Options, mode: str = "generic", field_spec=None,
              seeds: Sequence[int] = (1, 2, 3, 4, 5), workers: int = 1, timing: bool = False,
              executor=None) -> dict:
    sdef = CATALOGUE[suite_id]
    eff = effective_mode(suite_id, mode)
    start = time.perf_counter()
    if executor is not None:
        futures = [executor.submit(run_seed, suite_id, opts, mode, field_spec, s) for s in seeds]
        blocks = [f.result() for f in futures]
    else:
        blocks = [run_seed(suite_id, opts, mode, field_spec, s) for s in seeds]
    millis = int((time.perf_counter() - start) * 1000) if timing else None
    controls = summarize_controls(blocks, sdef.controls)
    field = field_from_tag(field_spec)
    degrees = [c["degree"] for b in blocks for c in b["cases"] if c["degree"]]
    all_pass = all(b["passed"] for b in blocks)
    nonvacuous = all(b["nonvacuous"] for b in blocks)
    controls_ok = all(c["verdict"] != "vacuous" for c in controls)
    n, m = sdef.shape(Options(**{**asdict(opts), "mode": eff}))
    report = {
        "id": suite_id,
        "group": sdef.group,
        "dims": {"n": opts.n, "m": opts.m, "s": opts.s, "assignment": [n, m]},
        "mode": eff,
        "requested_mode": mode,
        "prime": field_tag(field),
        "seeds": blocks,
        "controls": controls,
        "sz_bound": sz_bound(field, max(degrees) if degrees else None, eff),
        "millis": millis,
        "nonvacuous": nonvacuous,
        "guard_exceeded": any(b["guard_exceeded"] for b in blocks),
        "passed": all_pass and nonvacuous and controls_ok,
    }
    if sdef.note:
        report["note"] = sdef.note
    return report


def run_many(suite_ids: Sequence[str], opts: Options, mode: str = "generic", field_spec=None,
             seeds: Sequence[int] = (1, 2, 3, 4, 5), workers: int = 1, timing: bool = False) -> List[dict]:
    """Run suites in catalogue order; with workers > 1 seeds run in a process pool."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return [run_suite(s, opts, mode, field_spec, seeds, workers, timing, pool) for s in suite_ids]
    return [run_suite(s, opts, mode, field_spec, seeds, workers, timing) for s in suite_ids]


def check_with(suite_id: str, opts: Options, assign, seed: int = 0, controls: bool = True) -> dict:
    """One seed block for a caller-supplied assignment (no resampling)."""
    sdef = CATALOGUE[suite_id]
    cases = sdef.cases(opts)
    ctx = Context(assign, guard=opts.guard, seed=seed)
    records, passed, guard = _run_cases(cases, ctx)
    block = {"id": suite_id, "dims": {"n": opts.n, "m": opts.m, "s": opts.s}, "mode": assign.mode,
             "prime": field_tag(assign.field), "seed": seed, "cases": records, "passed": passed,
             "nonvacuous": ctx.nonvacuous(), "degenerate": ctx.degenerate(), "guard_exceeded": guard,
             "controls": {}}
    if controls and not guard:
        for mutation in sdef.controls:
            block["controls"][mutation] = run_control(sdef, cases, ctx, mutation)
    return block
