"""Identity catalogue: cases, negative controls, runner and report."""

from __future__ import annotations

from typing import Iterable, Optional, Tuple

from ..scalar import ParameterAssignment
from .base import IdentityCase, InapplicableMutation, Options, mutate
from .catalogue import CATALOGUE, GROUPS, UnknownSuite, known_ids, resolve
from .runner import check_with, run_many, run_suite

__all__ = [
    "CATALOGUE", "GROUPS", "IdentityCase", "InapplicableMutation", "Options", "UnknownSuite",
    "check_binet", "check_capelli", "check_minor_identities", "check_series", "known_ids", "mutate",
    "resolve", "run_many", "run_suite",
]


def _combined(name: str, blocks) -> dict:
    return {"id": name, "suites": blocks, "passed": all(b["passed"] and b["nonvacuous"] for b in blocks)}


def _pick(which: Optional[Iterable[str]], allowed: Tuple[str, ...]):
    chosen = tuple(allowed if which is None else which)
    bad = [w for w in chosen if w not in allowed]
    if bad:
        raise UnknownSuite(", ".join(bad))
    return chosen


def check_minor_identities(n: int, assign: ParameterAssignment, which: Optional[Iterable[str]] = None,
                           controls: bool = False, seed: int = 0) -> dict:
    chosen = _pick(which, GROUPS["minors"])
    opts = Options(n, mode=assign.mode)
    return _combined("minors", [check_with(w, opts, assign, seed, controls) for w in chosen])


def check_binet(nms: Tuple[int, int, int], assign: ParameterAssignment, kind: str = "det",
                controls: bool = False, seed: int = 0) -> dict:
    """``assign`` has shape (n, m) for det and (m, s) for per."""
    _pick([kind], ("det", "per"))
    n, m, s = nms
    return check_with(f"binet-{kind}", Options(n, m, s, mode=assign.mode), assign, seed, controls)


def check_capelli(nms: Tuple[int, int, int], assign: ParameterAssignment, variant: str = "det-col",
                  r_max: int = 2, controls: bool = False, seed: int = 0) -> dict:
    """``assign`` has shape (max dim, max dim)."""
    _pick([variant], ("det-col", "det-row", "per", "per-col"))
    n, m, s = nms
    opts = Options(n, m, s, capelli_r=r_max, mode=assign.mode)
    return check_with(f"capelli-{variant}", opts, assign, seed, controls)


def check_series(n: int, assign: ParameterAssignment, which: str, degree: Optional[int] = None,
                 m: Optional[int] = None, controls: bool = False, seed: int = 0) -> dict:
    """``m`` only matters for char-mn-nm, whose assignment has shape (n, m)."""
    _pick([which], GROUPS["series"])
    opts = Options(n, m, degree=degree, mode=assign.mode)
    return check_with(which, opts, assign, seed, controls)
