"""Sparse noncommutative polynomials over an exact field.

A letter is a :class:`Gen` ``(family, row, col)``; a word is a tuple of
letters; an :class:`NCPoly` maps words to nonzero raw field values.  The
free algebra is generated by every possible letter, so two polynomials can
always be multiplied as long as they share a field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Tuple

from .scalar import Field, FieldElement, FieldError

FAMILIES = ("M", "N", "H", "X", "Y", "Psi", "Phi")

# H enters the Capelli cross relation in place of a product M N
FAMILY_WEIGHTS = {"M": 1, "N": 1, "H": 2, "X": 1, "Y": 1, "Psi": 1, "Phi": 1}

VECTOR_FAMILIES = ("X", "Y", "Psi", "Phi")


class Gen(NamedTuple):
    family: str
    row: int
    col: int = 0

    @property
    def weight(self) -> int:
        return FAMILY_WEIGHTS[self.family]

    def __str__(self) -> str:
        if self.family in VECTOR_FAMILIES:
            return f"{self.family}[{self.row}]"
        return f"{self.family}[{self.row},{self.col}]"


Word = Tuple[Gen, ...]


def word_weight(word: Word) -> int:
    return sum(FAMILY_WEIGHTS[g[0]] for g in word)


def word_str(word: Word) -> str:
    return "".join(str(g) for g in word) if word else "1"


class NCPoly:
    """Element of the free associative algebra; treat as immutable."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: Dict[Word, object], field: Field, normalized: bool = False):
        if not normalized:
            norm = field.norm
            clean = {}
            for w, c in terms.items():
                c = norm(c)
                if c != 0:
                    clean[w] = c
            terms = clean
        self.terms = terms
        self.field = field

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> "NCPoly":
        return cls({}, field, True)

    @classmethod
    def one(cls, field: Field) -> "NCPoly":
        return cls({(): field.one}, field, True)

    @classmethod
    def const(cls, c, field: Field) -> "NCPoly":
        return cls({(): field.coerce(c)}, field)

    @classmethod
    def gen(cls, family: str, row: int, col: int = 0, field: Field = None) -> "NCPoly":
        if family not in FAMILY_WEIGHTS:
            raise ValueError(f"unknown generator family {family!r}")
        return cls({(Gen(family, row, col),): field.one}, field, True)

    @classmethod
    def word(cls, word: Iterable[Gen], field: Field, coeff=None) -> "NCPoly":
        c = field.one if coeff is None else field.coerce(coeff)
        return cls({tuple(word): c}, field)

    # arithmetic -------------------------------------------------------
    def _check(self, other: "NCPoly") -> None:
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field.tag} vs {other.field.tag}")

    def _lift(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return NCPoly.const(other, self.field)
        raise TypeError(f"cannot combine NCPoly with {type(other).__name__}")

    def __add__(self, other) -> "NCPoly":
        other = self._lift(other)
        if not other.terms:
            return self
        norm = self.field.norm
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = norm(out.get(w, 0) + c)
            if v != 0:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly(out, self.field, True)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        norm = self.field.norm
        return NCPoly({w: norm(-c) for w, c in self.terms.items()}, self.field, True)

    def __sub__(self, other) -> "NCPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "NCPoly":
        return self._lift(other) - self

    def scale(self, c) -> "NCPoly":
        c = self.field.coerce(c)
        if c == 0:
            return NCPoly.zero(self.field)
        norm = self.field.norm
        return NCPoly({w: norm(v * c) for w, v in self.terms.items()}, self.field, True)

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return nc_mul(self, other)

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        return NotImplemented

    # structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == NCPoly.const(other, self.field)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def weights(self) -> set:
        return {word_weight(w) for w in self.terms}

    def components(self) -> Dict[int, "NCPoly"]:
        comps: Dict[int, dict] = {}
        for w, c in self.terms.items():
            comps.setdefault(word_weight(w), {})[w] = c
        return {d: NCPoly(t, self.field, True) for d, t in sorted(comps.items())}

    def families(self) -> set:
        return {g.family for w in self.terms for g in w}

    def letters(self) -> set:
        return {g for w in self.terms for g in w}

    def coefficient(self, word: Iterable[Gen]) -> FieldElement:
        return FieldElement(self.terms.get(tuple(word), self.field.zero), self.field)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (t[0], len(t[0])))

    def substitute(self, values: dict, zero=0):
        """Evaluate under a commutative substitution ``Gen -> value``."""
        total = zero
        for w, c in self.terms.items():
            term = FieldElement(c, self.field)
            for g in w:
                term = term * values[g]
            total = total + term
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            parts.append(f"{self.field.fmt(c)} * {word_str(w)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NCPoly({self.render()})"


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Concatenation product, extended bilinearly."""
    a._check(b)
    if not a.terms or not b.terms:
        return NCPoly.zero(a.field)
    norm = a.field.norm
    out: dict = {}
    get = out.get
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            w = wa + wb
            out[w] = get(w, 0) + ca * cb
    return NCPoly(out, a.field)


def weighted_component(a: NCPoly, d: int) -> NCPoly:
    """Sum of the terms of ``a`` whose word has weight exactly ``d``."""
    return NCPoly({w: c for w, c in a.terms.items() if word_weight(w) == d}, a.field, True)


def poly_sum(polys: Iterable[NCPoly], field: Field) -> NCPoly:
    norm = field.norm
    out: dict = {}
    for p in polys:
        for w, c in p.terms.items():
            out[w] = out.get(w, 0) + c
    return NCPoly(out, field)
