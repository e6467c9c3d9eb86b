"""Coefficient fields and constrained parameter assignments.

Two fields are supported: the rationals (exact, used for hand-picked
parameter values and the classical oracles) and prime fields F_p (the
default, with p = 2**61 - 1, used for randomized verification).

Inside the engine coefficients are stored as *raw* values (``int`` in
``[0, p)`` or :class:`fractions.Fraction`) and combined with ordinary Python
operators followed by :meth:`Field.norm`.  :class:`FieldElement` wraps a raw
value together with its field for the public API.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

MERSENNE_61 = 2**61 - 1

MODES = ("generic", "one-parameter", "classical", "yangian")


class FieldError(ArithmeticError):
    """Division by zero or an element that does not belong to the field."""


class ParameterError(ValueError):
    """A parameter assignment that violates its constraints or its domain."""


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Interface shared by :class:`PrimeField` and :class:`RationalField`."""

    zero: object
    one: object
    tag: str

    def norm(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def coerce(self, v):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    def fmt(self, x) -> str:
        return str(x)

    def __call__(self, v) -> "FieldElement":
        return FieldElement(self.coerce(v), self)


@dataclass(frozen=True)
class PrimeField(Field):
    p: int = MERSENNE_61

    def __post_init__(self):
        if not _is_probable_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    zero = 0
    one = 1

    @property
    def tag(self) -> str:
        return f"F_{self.p}"

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise FieldError("division by zero in F_p")
        return pow(x, -1, self.p)

    def coerce(self, v):
        if isinstance(v, FieldElement):
            if v.field != self:
                raise FieldError(f"element of {v.field.tag} used in {self.tag}")
            return v.value
        if isinstance(v, bool):
            v = int(v)
        if isinstance(v, int):
            return v % self.p
        if isinstance(v, Fraction):
            return v.numerator * self.inv(v.denominator) % self.p
        raise FieldError(f"cannot coerce {v!r} into {self.tag}")

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.p)

    def sqrt_minus_one_free(self, x) -> bool:
        return (x * x + 1) % self.p != 0


@dataclass(frozen=True)
class RationalField(Field):
    zero = Fraction(0)
    one = Fraction(1)
    tag = "Q"

    def norm(self, x):
        return x

    def inv(self, x):
        if x == 0:
            raise FieldError("division by zero in Q")
        return 1 / Fraction(x)

    def coerce(self, v):
        if isinstance(v, FieldElement):
            if v.field != self:
                raise FieldError(f"element of {v.field.tag} used in Q")
            return v.value
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v)
        raise FieldError(f"cannot coerce {v!r} into Q")

    def random_nonzero(self, rng: random.Random) -> Fraction:
        # small-height rationals keep exact runs fast; zero excluded
        while True:
            num = rng.randint(-9, 9)
            if num:
                return Fraction(num, rng.randint(1, 9))

    def fmt(self, x) -> str:
        return str(Fraction(x))


QQ = RationalField()
DEFAULT_FIELD = PrimeField(MERSENNE_61)


def field_from_tag(tag: Union[str, int, None]) -> Field:
    """``"Q"`` gives the rationals, an integer (or its string) a prime field."""
    if tag is None:
        return DEFAULT_FIELD
    if isinstance(tag, Field):
        return tag
    if isinstance(tag, str) and tag.strip().upper() in ("Q", "QQ"):
        return QQ
    return PrimeField(int(tag))


_Scalar = Union["FieldElement", int, Fraction]


@dataclass(frozen=True)
class FieldElement:
    value: object
    field: Field

    def _other(self, other) -> object:
        return self.field.coerce(other)

    def __add__(self, other: _Scalar) -> "FieldElement":
        return FieldElement(self.field.norm(self.value + self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other: _Scalar) -> "FieldElement":
        return FieldElement(self.field.norm(self.value - self._other(other)), self.field)

    def __rsub__(self, other: _Scalar) -> "FieldElement":
        return FieldElement(self.field.norm(self._other(other) - self.value), self.field)

    def __mul__(self, other):
        if not isinstance(other, (FieldElement, int, Fraction)):
            return NotImplemented
        return FieldElement(self.field.norm(self.value * self._other(other)), self.field)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field.norm(-self.value), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other: _Scalar) -> "FieldElement":
        return self * FieldElement(self._other(other), self.field).inverse()

    def __rtruediv__(self, other: _Scalar) -> "FieldElement":
        return FieldElement(self._other(other), self.field) * self.inverse()

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.field.one
        for _ in range(k):
            acc = self.field.norm(acc * self.value)
        return FieldElement(acc, self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.coerce(other)
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __repr__(self) -> str:
        return f"{self.field.fmt(self.value)}"


class ParametricMatrix:
    """An n x n matrix of parameters, 1-based, with q_ii = 1 and q_ij q_ji = 1.

    ``strict=False`` allows deliberately broken matrices (negative controls).
    """

    def __init__(self, values: dict, n: int, field: Field, strict: bool = True):
        self.n = n
        self.field = field
        self._v = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                self._v[i, j] = field.coerce(values[i, j])
        self.strict = strict
        if strict:
            self.validate()

    @classmethod
    def from_upper(cls, upper: dict, n: int, field: Field) -> "ParametricMatrix":
        """Complete {(i, j): value for i < j} using the parametric constraints."""
        vals = {}
        for i in range(1, n + 1):
            vals[i, i] = field.one
            for j in range(i + 1, n + 1):
                x = field.coerce(upper[i, j])
                vals[i, j] = x
                vals[j, i] = field.inv(x)
        return cls(vals, n, field)

    @classmethod
    def ones(cls, n: int, field: Field) -> "ParametricMatrix":
        return cls({(i, j): field.one for i in range(1, n + 1) for j in range(1, n + 1)}, n, field)

    def validate(self) -> None:
        f = self.field
        for i in range(1, self.n + 1):
            if self._v[i, i] != f.one:
                raise ParameterError(f"diagonal entry ({i},{i}) is not 1")
            for j in range(1, self.n + 1):
                if f.norm(self._v[i, j] * self._v[j, i]) != f.one:
                    raise ParameterError(f"entries ({i},{j}) and ({j},{i}) are not mutually inverse")

    def raw(self, i: int, j: int):
        try:
            return self._v[i, j]
        except KeyError:
            raise IndexError(f"parameter index ({i},{j}) outside 1..{self.n}") from None

    def __call__(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.raw(i, j), self.field)

    def transpose(self) -> "ParametricMatrix":
        return ParametricMatrix({(i, j): self._v[j, i] for (i, j) in self._v}, self.n, self.field, self.strict)

    def inverse_entries(self) -> "ParametricMatrix":
        """Entrywise inverse; for a parametric matrix this equals the transpose."""
        return ParametricMatrix({k: self.field.inv(v) for k, v in self._v.items()}, self.n, self.field, self.strict)

    def restrict(self, n: int) -> "ParametricMatrix":
        if n > self.n:
            raise IndexError(f"cannot restrict a {self.n}x{self.n} parameter matrix to {n}")
        return ParametricMatrix({(i, j): self._v[i, j] for i in range(1, n + 1) for j in range(1, n + 1)},
                                n, self.field, self.strict)

    def with_entry(self, i: int, j: int, value) -> "ParametricMatrix":
        vals = dict(self._v)
        vals[i, j] = self.field.coerce(value)
        return ParametricMatrix(vals, self.n, self.field, strict=False)

    def is_classical(self) -> bool:
        return all(v == self.field.one for v in self._v.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, ParametricMatrix) and self.field == other.field and self._v == other._v

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self._v.items()))))

    def summary(self) -> dict:
        return {f"{i}{j}": self.field.fmt(v) for (i, j), v in sorted(self._v.items()) if i < j}


@dataclass(frozen=True)
class ParameterAssignment:
    n: int
    m: int
    q: ParametricMatrix
    p: ParametricMatrix
    field: Field
    mode: str = "generic"
    u: FieldElement | None = None
    z: FieldElement | None = None
    w: FieldElement | None = None
    seed: int | None = None
    constrained: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if not self.constrained:
            return
        if self.mode == "classical" and not (self.q.is_classical() and self.p.is_classical()):
            raise ParameterError("classical mode requires all q_ij = p_ij = 1")
        if self.mode == "yangian":
            self.check_yangian()

    def check_yangian(self) -> None:
        if self.u is None or self.u.is_zero():
            raise ParameterError("yangian mode needs a nonzero u")
        u2 = self.u * self.u
        if (u2 + 1).is_zero():
            raise ParameterError("yangian mode needs u^2 != -1")
        for i in range(1, min(self.n, self.m) + 1):
            for j in range(i + 1, min(self.n, self.m) + 1):
                if self.p(i, j) * self.q(i, j) != u2:
                    raise ParameterError(f"p_{i}{j} q_{i}{j} != u^2")

    def lookup(self, symbol: str, i: int, j: int) -> FieldElement:
        return lookup(self, symbol, i, j)

    def params(self, symbol: str) -> ParametricMatrix:
        if symbol == "q":
            return self.q
        if symbol == "p":
            return self.p
        raise ParameterError(f"unknown parameter symbol {symbol!r}")

    def element(self, v) -> FieldElement:
        return self.field(v)

    def broken(self, symbol: str, i: int, j: int, rng: random.Random) -> "ParameterAssignment":
        """Copy with entry (i, j) of q or p resampled independently of (j, i)."""
        if self.mode == "classical":
            raise ParameterError("classical parameters are forced; the constraint cannot be broken")
        mat = self.params(symbol)
        while True:
            v = self.field.random_nonzero(rng)
            if v != mat.raw(i, j) and self.field.norm(v * mat.raw(j, i)) != self.field.one:
                break
        new = mat.with_entry(i, j, v)
        kw = dict(q=new) if symbol == "q" else dict(p=new)
        return _replace(self, constrained=False, **kw)

    def restrict(self, n: int, m: int = None) -> "ParameterAssignment":
        """The assignment seen by an n x m submatrix on the leading indices."""
        m = n if m is None else m
        return _replace(self, n=n, m=m, q=self.q.restrict(n), p=self.p.restrict(m))

    def summary(self) -> dict:
        out = {"mode": self.mode, "field": self.field.tag, "seed": self.seed,
               "q": self.q.summary(), "p": self.p.summary()}
        for name in ("u", "z", "w"):
            v = getattr(self, name)
            if v is not None:
                out[name] = self.field.fmt(v.value)
        return out


def _replace(a: ParameterAssignment, **kw) -> ParameterAssignment:
    fields = dict(n=a.n, m=a.m, q=a.q, p=a.p, field=a.field, mode=a.mode, u=a.u, z=a.z, w=a.w,
                  seed=a.seed, constrained=a.constrained)
    fields.update(kw)
    return ParameterAssignment(**fields)


def make_parameter_assignment(n: int, m: int, mode: str = "generic", seed: int = 0,
                              field: Union[Field, str, int, None] = None) -> ParameterAssignment:
    """Sample q_ij, p_ij (i < j) uniformly from the nonzero field elements.

    The remaining entries are forced by q_ii = 1, q_ij q_ji = 1.  In yangian
    mode u is sampled first and p_ij = u^2 / q_ij.  z and w are always drawn
    (nonzero, z != w) so that spectral-parameter checks can use them.
    """
    if n < 1 or m < 1:
        raise ParameterError("dimensions must be positive")
    if mode not in MODES:
        raise ParameterError(f"unknown mode {mode!r}; expected one of {MODES}")
    fld = field_from_tag(field)
    if isinstance(fld, PrimeField) and fld.p <= 2**31:
        raise ParameterError("prime fields must have p > 2^31")
    rng = random.Random(f"manincheck|{seed}|{n}|{m}|{mode}|{fld.tag}")

    def nz():
        return fld.random_nonzero(rng)

    u = None
    if mode == "classical":
        q = ParametricMatrix.ones(n, fld)
        p = ParametricMatrix.ones(m, fld)
    elif mode == "one-parameter":
        t = nz()
        q = ParametricMatrix.from_upper({(i, j): t for i in range(1, n + 1) for j in range(i + 1, n + 1)}, n, fld)
        p = ParametricMatrix.from_upper({(i, j): t for i in range(1, m + 1) for j in range(i + 1, m + 1)}, m, fld)
    else:
        if mode == "yangian":
            if n != m:
                raise ParameterError("yangian mode requires n == m")
            while True:
                u = nz()
                if not fld.is_zero(fld.norm(u * u + 1)):
                    break
        qu = {(i, j): nz() for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        q = ParametricMatrix.from_upper(qu, n, fld)
        if mode == "yangian":
            u2 = fld.norm(u * u)
            p = ParametricMatrix.from_upper({k: fld.norm(u2 * fld.inv(v)) for k, v in qu.items()}, m, fld)
        else:
            p = ParametricMatrix.from_upper(
                {(i, j): nz() for i in range(1, m + 1) for j in range(i + 1, m + 1)}, m, fld)
    z = nz()
    while True:
        w = nz()
        if w != z:
            break
    return ParameterAssignment(n=n, m=m, q=q, p=p, field=fld, mode=mode,
                               u=None if u is None else FieldElement(u, fld),
                               z=FieldElement(z, fld), w=FieldElement(w, fld), seed=seed)


def assignment_from_values(q_upper: dict, p_upper: dict, n: int, m: int, field: Field = QQ,
                           mode: str = "generic", u=None, z=None, w=None) -> ParameterAssignment:
    """Build an assignment from explicit values for the entries above the diagonal."""
    q = ParametricMatrix.from_upper(q_upper, n, field)
    p = ParametricMatrix.from_upper(p_upper, m, field)
    el = lambda v: None if v is None else field(v)
    return ParameterAssignment(n=n, m=m, q=q, p=p, field=field, mode=mode, u=el(u), z=el(z), w=el(w))


def lookup(assign: ParameterAssignment, symbol: str, i: int, j: int) -> FieldElement:
    mat = assign.params(symbol)
    if not (1 <= i <= mat.n and 1 <= j <= mat.n):
        raise IndexError(f"{symbol}_{i}{j} outside 1..{mat.n}")
    return mat(i, j)
