"""Report assembly and deterministic JSON serialization."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Optional

from ..scalar import Field, PrimeField

SCHEMA_VERSION = "1.0"


def field_tag(field: Field):
    return field.p if isinstance(field, PrimeField) else "Q"


def sample_size(field: Field) -> int:
    """How many distinct nonzero values the parameter sampler can produce."""
    if isinstance(field, PrimeField):
        return field.p - 1
    return len({Fraction(a, b) for a in range(-9, 10) if a for b in range(1, 10)})


def sz_bound(field: Field, degree: Optional[int], mode: str) -> Optional[str]:
    """Heuristic Schwartz-Zippel false-pass figure D / |S| per seed, with D = d(d - 1).

    A membership verdict over random parameters is a polynomial condition in
    them; d(d - 1) bounds the parameter degree of the weights produced at word
    weight d by the minors and projectors used here.
    """
    if mode == "classical" or not degree:
        return None
    D = max(degree * (degree - 1), 1)
    return f"{D / sample_size(field):.3e}"


def document(config: dict, suites: List[dict]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "manincheck",
        "config": config,
        "suites": suites,
        "passed": all(s["passed"] for s in suites),
        "guard_exceeded": any(s.get("guard_exceeded") for s in suites),
    }


def dumps(doc: dict) -> str:
    """Stable formatting: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def write(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
