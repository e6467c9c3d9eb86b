"""The catalogue: every identity family with its cases, assignment shape and controls."""

from __future__ import annotations

from typing import Dict, Iterable, List

from . import binet, capelli, minors, oracles, series, structural
from .base import Options, SuiteDef, square


def _minor(name):
    return lambda opts: minors.BUILDERS[name](opts.n)


def _binet_per_shape(opts: Options):
    return opts.m, opts.s


CATALOGUE: Dict[str, SuiteDef] = {}


def _add(d: SuiteDef) -> None:
    CATALOGUE[d.name] = d


_add(SuiteDef("signs", structural.signs_cases, structural.signs_shape, ("drop-sign",), "structural"))
_add(SuiteDef("operators", structural.operators_cases, square, ("drop-sign", "break-constraint"), "structural"))
for _name in minors.ALL:
    _ctl = ("break-constraint",) if _name in ("comodule", "factorization") else ("drop-sign",)
    _add(SuiteDef(_name, _minor(_name), square, _ctl, "minors"))
_add(SuiteDef("binet-det", binet.det_cases, lambda o: (o.n, o.m), ("drop-sign",), "binet"))
_add(SuiteDef("binet-per", binet.per_cases, _binet_per_shape, ("drop-sign",), "binet"))
for _v in capelli.CAPELLI_VARIANTS:
    _add(SuiteDef(f"capelli-{_v}", capelli.variant_cases(_v), capelli.shape, ("swap-diag",), "capelli"))
_add(SuiteDef("macmahon", series.macmahon_cases, square, ("break-constraint",), "series"))
_add(SuiteDef("trace-replacement", series.trace_replacement_cases, square, ("break-constraint",), "series"))
_add(SuiteDef("newton-lemma", series.newton_lemma_cases, square, ("break-constraint",), "series"))
_add(SuiteDef("newton", series.newton_cases, square, ("break-constraint",), "series"))
_add(SuiteDef("cayley-hamilton", series.cayley_hamilton_cases, square, ("break-constraint",), "series"))
_add(SuiteDef("char-mn-nm", series.char_mn_nm_cases, series.char_shape, ("break-constraint",), "series"))
_add(SuiteDef("ybe", structural.ybe_cases, square, ("break-constraint",), "yangian", structural.break_p12,
              ("yangian",), "needs p_ij q_ij = u^2; runs in yangian mode"))
_add(SuiteDef("fusion", structural.fusion_cases, square, ("break-constraint",), "yangian", structural.break_p12,
              ("yangian",), "needs p_ij q_ij = u^2; runs in yangian mode"))
_add(SuiteDef("oracle-capelli", oracles.capelli_cases, square, ("swap-diag",), "oracle", modes=("classical",),
              note="classical specialization oracle"))
_add(SuiteDef("oracle-macmahon", oracles.macmahon_cases, square, ("drop-sign",), "oracle", modes=("classical",),
              note="classical specialization oracle"))
_add(SuiteDef("oracle-inverse", oracles.inverse_cases, square, ("drop-sign",), "oracle", modes=("classical",),
              note="classical specialization oracle"))

GROUPS = {
    "minors": minors.ALL,
    "capelli": tuple(f"capelli-{v}" for v in capelli.CAPELLI_VARIANTS),
    "series": ("macmahon", "trace-replacement", "newton-lemma", "newton", "cayley-hamilton", "char-mn-nm"),
    "yangian": ("ybe", "fusion"),
    "oracles": ("oracle-capelli", "oracle-macmahon", "oracle-inverse"),
}


class UnknownSuite(KeyError):
    pass


def known_ids() -> List[str]:
    return list(CATALOGUE)


def resolve(names: Iterable[str]) -> List[str]:
    """Expand "all" and group names; reject unknown ids.  Catalogue order, no duplicates."""
    wanted = set()
    for name in names:
        if name == "all":
            wanted.update(CATALOGUE)
        elif name in GROUPS:
            wanted.update(GROUPS[name])
        elif name in CATALOGUE:
            wanted.add(name)
        else:
            raise UnknownSuite(name)
    return [k for k in CATALOGUE if k in wanted]
