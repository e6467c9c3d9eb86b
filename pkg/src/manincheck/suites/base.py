"""Building blocks shared by every catalogue entry."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..freealg import NCPoly
from ..ideal import DEFAULT_GUARD, Membership, RelationSet
from ..scalar import ParameterAssignment, ParameterError

MUTATIONS = ("drop-sign", "swap-diag", "break-constraint")

WITNESS_CHARS = 600


class InapplicableMutation(ValueError):
    pass


@dataclass
class Options:
    """Dimensions and caps shared by all suites of one run."""

    n: int = 2
    m: Optional[int] = None
    s: Optional[int] = None
    degree: Optional[int] = None
    capelli_r: int = 2
    fusion_k: int = 3
    oracle_trials: int = 20
    guard: int = DEFAULT_GUARD
    mode: str = "generic"

    def __post_init__(self):
        if self.m is None:
            self.m = self.n
        if self.s is None:
            self.s = self.n
        for name in ("n", "m", "s"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @property
    def dims(self) -> Tuple[int, int, int]:
        return self.n, self.m, self.s


class Context:
    """Per-assignment evaluation state: the parameters, an optional mutation and cached relation sets."""

    def __init__(self, assign: ParameterAssignment, mutation: str = None, guard: int = DEFAULT_GUARD,
                 seed: int = 0):
        self.assign = assign
        self.mutation = mutation
        self.guard = guard
        self.seed = seed
        self.field = assign.field
        self._rels: Dict[object, RelationSet] = {}
        self.usage: Dict[str, Membership] = {}

    def rels(self, key, factory: Callable[[], RelationSet]) -> RelationSet:
        r = self._rels.get(key)
        if r is None:
            r = factory()
            self._rels[key] = r
        return r

    def record(self, rels: RelationSet, stats: Membership) -> None:
        label = rels.label or "relations"
        prev = self.usage.get(label)
        self.usage[label] = stats if prev is None else prev.merge(stats)

    def degenerate(self) -> List[str]:
        """Relation sets whose touched blocks all lie inside the ideal."""
        return sorted(lbl for lbl, st in self.usage.items() if st.blocks and not st.proper_blocks)

    def nonvacuous(self) -> bool:
        return all(st.proper_blocks > 0 for st in self.usage.values() if st.blocks)


@dataclass
class Outcome:
    passed: bool
    verdict: str
    witness: Optional[str] = None
    detail: Optional[dict] = None


@dataclass
class IdentityCase:
    """One instance of an identity: a label, its index data and an evaluator."""

    suite: str
    label: str
    indices: dict
    degree: Optional[int]
    evaluate: Callable[[Context], Outcome]
    mutations: Tuple[str, ...] = ()
    mutation: Optional[str] = None
    build: Optional[Callable] = None

    def run(self, ctx: Context) -> Outcome:
        return self.evaluate(ctx)

    def perturbed(self, ctx: Context, mctx: Context) -> bool:
        """False when the mutation leaves this case's polynomials and relations unchanged."""
        if self.build is None:
            return True
        polys, rels = self.build(ctx)
        mpolys, mrels = self.build(mctx)
        return list(polys) != list(mpolys) or rels.relations != mrels.relations


def mutate(case: IdentityCase, mutation: str) -> IdentityCase:
    """The same case with a perturbation that should break it."""
    if mutation not in MUTATIONS:
        raise InapplicableMutation(f"unknown mutation {mutation!r}; expected one of {MUTATIONS}")
    if mutation not in case.mutations:
        raise InapplicableMutation(f"{mutation} does not apply to {case.suite}")
    return IdentityCase(case.suite, case.label, case.indices, case.degree, case.evaluate, case.mutations, mutation,
                        case.build)


def mutated_context(ctx: Context, mutation: str, breaker: Callable = None) -> Context:
    """Context for a control run; break-constraint swaps in a broken assignment."""
    if mutation == "break-constraint":
        if ctx.assign.mode == "classical":
            raise InapplicableMutation("classical parameters are forced; the constraint cannot be broken")
        rng = random.Random(f"manincheck-break|{ctx.seed}")
        try:
            broken = breaker(ctx.assign, rng) if breaker else ctx.assign.broken("q", 2, 1, rng)
        except (ParameterError, IndexError, KeyError) as exc:
            raise InapplicableMutation(str(exc)) from None
        return Context(broken, mutation, ctx.guard, ctx.seed)
    return Context(ctx.assign, mutation, ctx.guard, ctx.seed)


def _render(poly: NCPoly) -> str:
    text = poly.render()
    if len(text) > WITNESS_CHARS:
        text = text[:WITNESS_CHARS] + f" ... ({len(poly)} terms)"
    return text


def membership_outcome(ctx: Context, polys: Iterable[NCPoly], rels: RelationSet) -> Outcome:
    """Member iff every polynomial lies in the ideal; the first normal form is the witness."""
    engine = rels.engine(ctx.guard)
    total = Membership(True)
    for poly in polys:
        total = total.merge(engine.is_member(poly))
    ctx.record(rels, total)
    if total.member:
        return Outcome(True, "member")
    return Outcome(False, "non-member", _render(total.witness))


def equality_outcome(ok: bool, detail: dict = None, yes: str = "equal", no: str = "unequal") -> Outcome:
    return Outcome(bool(ok), yes if ok else no, None, detail)


def ideal_case(suite: str, label: str, indices: dict, degree: int,
               build: Callable[[Context], Tuple[Sequence[NCPoly], RelationSet]],
               mutations: Tuple[str, ...] = ()) -> IdentityCase:
    def evaluate(ctx: Context) -> Outcome:
        polys, rels = build(ctx)
        return membership_outcome(ctx, polys, rels)

    return IdentityCase(suite, label, indices, degree, evaluate, mutations, build=build)


@dataclass(frozen=True)
class SuiteDef:
    """A catalogue entry: how to size the assignment, enumerate cases and break them."""

    name: str
    cases: Callable[[Options], List[IdentityCase]]
    shape: Callable[[Options], Tuple[int, int]]
    controls: Tuple[str, ...] = ()
    group: str = ""
    breaker: Optional[Callable] = None
    modes: Tuple[str, ...] = ("generic", "one-parameter", "classical", "yangian")
    note: str = ""


def square(opts: Options) -> Tuple[int, int]:
    return opts.n, opts.n


def fmt_idx(I) -> str:
    return "(" + ",".join(str(i) for i in I) + ")"
