"""Quantum minors, permanents, symmetric functions and characteristic coefficients.

Entries may be free-algebra polynomials or field elements: every routine
only multiplies entries in order and scales by parameter weights from
:mod:`manincheck.qcomb`, so the same code evaluates classical numeric
matrices for the oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, List, Sequence, Union

from .freealg import NCPoly
from .qcomb import (MultiIndexError, eps_perm, is_increasing, is_nondecreasing, mu_perm,
                    multiplicity_factorial, permutations_of)
from .scalar import FieldElement, ParameterAssignment, ParametricMatrix
from .tensor import AlgMatrix, chain, matmul, partial_trace, projector

ORIENTATIONS = ("column", "row")
KINDS = ("det", "per", "per-normalized")

Entry = Union[NCPoly, FieldElement]
EntryFn = Callable[[int, int], Entry]


@dataclass(frozen=True)
class MinorSpec:
    """Which minor to expand: orientation, kind and the row/column indices."""

    orientation: str
    kind: str
    I: tuple
    J: tuple
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))
        object.__setattr__(self, "J", tuple(self.J))
        self.validate()

    @property
    def permuted(self) -> tuple:
        """The index whose entries the permutation sum rearranges."""
        return self.I if self.orientation == "column" else self.J

    def validate(self) -> None:
        if self.orientation not in ORIENTATIONS:
            raise MultiIndexError(f"unknown orientation {self.orientation!r}")
        if self.kind not in KINDS:
            raise MultiIndexError(f"unknown minor kind {self.kind!r}")
        if len(self.I) != len(self.J):
            raise MultiIndexError(f"index lengths differ: {self.I} vs {self.J}")
        if not self.strict:
            return
        if self.kind == "det" and not is_increasing(self.permuted):
            side = "row" if self.orientation == "column" else "column"
            raise MultiIndexError(f"{self.orientation} determinant needs an increasing {side} index")
        if self.kind == "per-normalized" and not is_nondecreasing(self.permuted):
            raise MultiIndexError("normalized permanent needs a non-decreasing permuted index")


def entry_fn(family, field=None) -> EntryFn:
    """Normalize a generator family name, an AlgMatrix or a callable to ``(i, j) -> entry``."""
    if callable(family) and not isinstance(family, AlgMatrix):
        return family
    if isinstance(family, AlgMatrix):
        return lambda i, j: family[(i,), (j,)]
    if isinstance(family, str):
        if field is None:
            raise ValueError("a field is needed to build generators")
        return lambda i, j: NCPoly.gen(family, i, j, field=field)
    raise TypeError(f"cannot use {type(family).__name__} as a matrix")


def _params(assign, symbol):
    if isinstance(symbol, ParametricMatrix):
        return symbol
    if isinstance(assign, ParametricMatrix):
        return assign
    return assign.params(symbol)


def _field(assign, symbol):
    return _params(assign, symbol).field


def _product(xs: Sequence[Entry]) -> Entry:
    return reduce(lambda a, b: a * b, xs)


def _accumulate(total, term):
    return term if total is None else total + term


def _zero(field, sample):
    if isinstance(sample, FieldElement):
        return FieldElement(field.zero, field)
    return NCPoly.zero(field)


def minor(spec: MinorSpec, family, assign, symbol=None) -> Entry:
    """Expand the r!-term sum of ``spec`` for the matrix ``family``.

    ``symbol`` picks the parameters: defaults to q for determinants and p
    for permanents; a :class:`ParametricMatrix` may be passed directly.
    """
    if symbol is None:
        symbol = "q" if spec.kind == "det" else "p"
    P = _params(assign, symbol)
    field = P.field
    X = entry_fn(family, field)
    I, J = spec.I, spec.J
    r = len(I)
    if r == 0:
        return NCPoly.one(field)
    total = None
    for sigma in permutations_of(r):
        if spec.orientation == "column":
            rows = [I[s - 1] for s in sigma]
            cols = list(J)
        else:
            rows = list(I)
            cols = [J[s - 1] for s in sigma]
        if spec.kind == "det":
            coef = eps_perm(P, spec.permuted, sigma, require_increasing=spec.strict)
        else:
            coef = mu_perm(P, spec.permuted, sigma)
        term = _product([X(a, b) for a, b in zip(rows, cols)]) * coef
        total = _accumulate(total, term)
    if spec.kind == "per-normalized":
        v = multiplicity_factorial(spec.permuted)
        total = total * FieldElement(field.inv(v), field)
    return total


def cdet(family, assign, I, J, symbol="q", strict: bool = True) -> Entry:
    """Column determinant: sum_sigma eps(q, I, sigma) M_{i_sigma(1) j_1} ... M_{i_sigma(r) j_r}."""
    return minor(MinorSpec("column", "det", I, J, strict), family, assign, symbol)


def rdet(family, assign, I, J, symbol="q", strict: bool = True) -> Entry:
    """Row determinant: sum_sigma eps(q, J, sigma) M_{i_1 j_sigma(1)} ... ."""
    return minor(MinorSpec("row", "det", I, J, strict), family, assign, symbol)


def rper(family, assign, I, J, symbol="p", normalized: bool = False, strict: bool = True) -> Entry:
    """Row permanent with weights mu(p, J, sigma); normalized divides by v(alpha_J)."""
    kind = "per-normalized" if normalized else "per"
    return minor(MinorSpec("row", kind, I, J, strict), family, assign, symbol)


def cper(family, assign, I, J, symbol="p", normalized: bool = False, strict: bool = True) -> Entry:
    """Column permanent with weights mu(p, I, sigma); normalized divides by v(alpha_I)."""
    kind = "per-normalized" if normalized else "per"
    return minor(MinorSpec("column", kind, I, J, strict), family, assign, symbol)


def full_cdet(family, assign, n: int, symbol="q") -> Entry:
    idx = tuple(range(1, n + 1))
    return cdet(family, assign, idx, idx, symbol)


def submatrix(family, rows: int, cols: int, field, transform: Callable[[int, int, Entry], Entry] = None) -> AlgMatrix:
    """Materialize a single-slot AlgMatrix from any matrix descriptor."""
    X = entry_fn(family, field)
    out = {}
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            e = X(i, j)
            out[(i,), (j,)] = transform(i, j, e) if transform else e
    return AlgMatrix((rows,), (cols,), out, field)


def sym_function(kind: str, k: int, family, assign: ParameterAssignment, n: int = None,
                 symbol: str = None) -> NCPoly:
    """e_k = tr A^(k) M_1...M_k and h_k = tr S^(k) M_1...M_k.

    The antisymmetrizer uses q and the symmetrizer p unless ``symbol``
    overrides it.  e_0 = h_0 = 1.
    """
    if kind not in ("e", "h"):
        raise ValueError(f"unknown symmetric function {kind!r}")
    if k < 0:
        raise ValueError("k must be non-negative")
    field = assign.field
    if symbol is None:
        symbol = "q" if kind == "e" else "p"
    if n is None:
        n = family.row_dims[0] if isinstance(family, AlgMatrix) else assign.params(symbol).n
    if k == 0:
        return NCPoly.one(field)
    M = family if isinstance(family, AlgMatrix) else submatrix(family, n, n, field)
    pkind = ("antisym-" if kind == "e" else "sym-") + symbol
    proj = projector(assign, pkind, k)
    return partial_trace(matmul(proj, chain(M, k)), range(k))[(), ()]


def char_poly_coeffs(family, assign: ParameterAssignment, n: int = None, symbol: str = "q") -> List[NCPoly]:
    """((-1)^k e_k for k = 0..n): the coefficient of t^(n-k) in the characteristic polynomial."""
    if n is None:
        n = family.row_dims[0] if isinstance(family, AlgMatrix) else assign.params(symbol).n
    return [sym_function("e", k, family, assign, n, symbol).scale((-1) ** k) for k in range(n + 1)]
