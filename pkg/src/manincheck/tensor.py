"""Operators on tensor powers with field or free-algebra entries.

Rows and columns are addressed by tuples of 1-based slot values, so a
matrix on ``C^n (x) C^n`` has row index ``(a, b)``.  Both
:class:`ScalarMatrix` (raw field values) and :class:`AlgMatrix`
(:class:`~manincheck.freealg.NCPoly` entries) are sparse.
"""

from __future__ import annotations

from itertools import product
from math import factorial
from typing import Dict, Iterable, Sequence, Tuple

from .freealg import NCPoly, nc_mul
from .qcomb import eps_perm, increasing_subsets, permutations_of, sign
from .scalar import Field, FieldElement, FieldError, ParameterAssignment, ParametricMatrix

Index = Tuple[int, ...]


class ShapeError(ValueError):
    pass


def basis(dims: Sequence[int]) -> Iterable[Index]:
    return product(*(range(1, d + 1) for d in dims))


class _TensorMatrix:
    scalar = True

    def __init__(self, row_dims: Sequence[int], col_dims: Sequence[int], entries: dict, field: Field):
        self.row_dims = tuple(row_dims)
        self.col_dims = tuple(col_dims)
        self.entries = entries
        self.field = field

    @property
    def slots(self) -> int:
        return len(self.row_dims)

    @property
    def shape(self) -> Tuple[int, int]:
        r = c = 1
        for d in self.row_dims:
            r *= d
        for d in self.col_dims:
            c *= d
        return r, c

    def _zero_entry(self, v) -> bool:
        return v == 0 if self.scalar else v.is_zero()

    def __getitem__(self, key):
        r, c = key
        if self.scalar:
            return FieldElement(self.entries.get((tuple(r), tuple(c)), self.field.zero), self.field)
        return self.entries.get((tuple(r), tuple(c)), NCPoly.zero(self.field))

    def rows(self) -> Dict[Index, Dict[Index, object]]:
        out: Dict[Index, Dict[Index, object]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries


class ScalarMatrix(_TensorMatrix):
    """Field-valued operator on a tensor product of coordinate spaces."""

    scalar = True

    def __init__(self, row_dims, col_dims, entries: dict, field: Field, normalized: bool = False):
        if not normalized:
            entries = {k: field.norm(v) for k, v in entries.items()}
            entries = {k: v for k, v in entries.items() if v != 0}
        super().__init__(row_dims, col_dims, entries, field)

    @classmethod
    def identity(cls, dims: Sequence[int], field: Field) -> "ScalarMatrix":
        return cls(dims, dims, {(a, a): field.one for a in basis(dims)}, field, True)

    @classmethod
    def zero(cls, row_dims, col_dims, field: Field) -> "ScalarMatrix":
        return cls(row_dims, col_dims, {}, field, True)

    def __add__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        _same_shape(self, other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return ScalarMatrix(self.row_dims, self.col_dims, out, self.field)

    def __neg__(self) -> "ScalarMatrix":
        return self.scale(-1)

    def __sub__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        return self + (-other)

    def scale(self, c) -> "ScalarMatrix":
        c = self.field.coerce(c)
        return ScalarMatrix(self.row_dims, self.col_dims, {k: v * c for k, v in self.entries.items()}, self.field)

    def __matmul__(self, other):
        return matmul(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ScalarMatrix) and self.row_dims == other.row_dims
                and self.col_dims == other.col_dims and self.entries == other.entries)

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(self.col_dims, self.row_dims, {(c, r): v for (r, c), v in self.entries.items()},
                            self.field, True)

    def trace(self) -> FieldElement:
        t = partial_trace(self, range(self.slots))
        return t[(), ()]

    def rank(self) -> int:
        from .ideal import row_reduce
        rows = self.rows()
        cols = sorted({c for (_, c) in self.entries})
        pos = {c: i for i, c in enumerate(cols)}
        vecs = [{pos[c]: v for c, v in row.items()} for row in rows.values()]
        return len(row_reduce(vecs, self.field))

    def apply(self, vec: Index) -> Dict[Index, FieldElement]:
        """Image of the basis vector e_vec as {row index: coefficient}."""
        out = {}
        for (r, c), v in self.entries.items():
            if c == tuple(vec):
                out[r] = FieldElement(v, self.field)
        return out

    def __repr__(self) -> str:
        return f"ScalarMatrix({self.row_dims}x{self.col_dims}, nnz={len(self.entries)})"


class AlgMatrix(_TensorMatrix):
    """Matrix whose entries are noncommutative polynomials."""

    scalar = False

    def __init__(self, row_dims, col_dims, entries: dict, field: Field):
        entries = {k: v for k, v in entries.items() if not v.is_zero()}
        for v in entries.values():
            if v.field != field:
                raise FieldError("AlgMatrix entries must share one field")
        super().__init__(row_dims, col_dims, entries, field)

    @classmethod
    def generic(cls, family: str, rows: int, cols: int, field: Field) -> "AlgMatrix":
        """The rows x cols matrix of generators family[i, j]."""
        return cls((rows,), (cols,), {((i,), (j,)): NCPoly.gen(family, i, j, field=field)
                                     for i in range(1, rows + 1) for j in range(1, cols + 1)}, field)

    @classmethod
    def from_nested(cls, entries, field: Field) -> "AlgMatrix":
        """From a list of rows of NCPoly (single-slot matrix)."""
        r, c = len(entries), len(entries[0]) if entries else 0
        return cls((r,), (c,), {((i + 1,), (j + 1,)): entries[i][j] for i in range(r) for j in range(c)}, field)

    @classmethod
    def from_scalar(cls, S: ScalarMatrix) -> "AlgMatrix":
        return cls(S.row_dims, S.col_dims, {k: NCPoly.const(v, S.field) for k, v in S.entries.items()}, S.field)

    @classmethod
    def identity(cls, dims: Sequence[int], field: Field) -> "AlgMatrix":
        return cls.from_scalar(ScalarMatrix.identity(dims, field))

    def __add__(self, other) -> "AlgMatrix":
        if isinstance(other, ScalarMatrix):
            other = AlgMatrix.from_scalar(other)
        _same_shape(self, other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return AlgMatrix(self.row_dims, self.col_dims, out, self.field)

    def __neg__(self) -> "AlgMatrix":
        return AlgMatrix(self.row_dims, self.col_dims, {k: -v for k, v in self.entries.items()}, self.field)

    def __sub__(self, other) -> "AlgMatrix":
        if isinstance(other, ScalarMatrix):
            other = AlgMatrix.from_scalar(other)
        return self + (-other)

    def scale(self, c) -> "AlgMatrix":
        return AlgMatrix(self.row_dims, self.col_dims, {k: v.scale(c) for k, v in self.entries.items()}, self.field)

    def left_mul(self, poly: NCPoly) -> "AlgMatrix":
        """Entrywise poly * entry."""
        return AlgMatrix(self.row_dims, self.col_dims, {k: nc_mul(poly, v) for k, v in self.entries.items()},
                         self.field)

    def __matmul__(self, other):
        return matmul(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgMatrix) and self.row_dims == other.row_dims
                and self.col_dims == other.col_dims and self.entries == other.entries)

    def entry_list(self):
        """All (row, col, poly) triples in deterministic order, zeros included."""
        for r in basis(self.row_dims):
            for c in basis(self.col_dims):
                yield r, c, self[r, c]

    def trace(self) -> NCPoly:
        return partial_trace(self, range(self.slots))[(), ()]

    def __repr__(self) -> str:
        return f"AlgMatrix({self.row_dims}x{self.col_dims}, nnz={len(self.entries)})"


def _same_shape(a: _TensorMatrix, b: _TensorMatrix) -> None:
    if a.row_dims != b.row_dims or a.col_dims != b.col_dims:
        raise ShapeError(f"shape mismatch {a.row_dims}x{a.col_dims} vs {b.row_dims}x{b.col_dims}")
    if a.field != b.field:
        raise FieldError("field mismatch")


def matmul(a: _TensorMatrix, b: _TensorMatrix) -> _TensorMatrix:
    if a.col_dims != b.row_dims:
        raise ShapeError(f"cannot multiply {a.row_dims}x{a.col_dims} by {b.row_dims}x{b.col_dims}")
    if a.field != b.field:
        raise FieldError("field mismatch")
    field = a.field
    brows = b.rows()
    if a.scalar and b.scalar:
        out: dict = {}
        for (r, k), va in a.entries.items():
            for c, vb in brows.get(k, {}).items():
                out[r, c] = out.get((r, c), 0) + va * vb
        return ScalarMatrix(a.row_dims, b.col_dims, out, field)
    acc: Dict[tuple, dict] = {}
    for (r, k), va in a.entries.items():
        for c, vb in brows.get(k, {}).items():
            terms = acc.setdefault((r, c), {})
            if a.scalar:
                for w, cb in vb.terms.items():
                    terms[w] = terms.get(w, 0) + va * cb
            elif b.scalar:
                for w, ca in va.terms.items():
                    terms[w] = terms.get(w, 0) + ca * vb
            else:
                for wa, ca in va.terms.items():
                    for wb, cb in vb.terms.items():
                        w = wa + wb
                        terms[w] = terms.get(w, 0) + ca * cb
    return AlgMatrix(a.row_dims, b.col_dims, {k: NCPoly(t, field) for k, t in acc.items()}, field)


def kron(a: _TensorMatrix, b: _TensorMatrix) -> _TensorMatrix:
    """a (x) b with entry products taken in the order a-entry then b-entry."""
    if a.field != b.field:
        raise FieldError("field mismatch")
    rd, cd = a.row_dims + b.row_dims, a.col_dims + b.col_dims
    if a.scalar and b.scalar:
        return ScalarMatrix(rd, cd, {(ra + rb, ca + cb): va * vb for (ra, ca), va in a.entries.items()
                                     for (rb, cb), vb in b.entries.items()}, a.field)

    def mul(x, y):
        if a.scalar:
            return y.scale(x)
        if b.scalar:
            return x.scale(y)
        return nc_mul(x, y)

    return AlgMatrix(rd, cd, {(ra + rb, ca + cb): mul(va, vb) for (ra, ca), va in a.entries.items()
                              for (rb, cb), vb in b.entries.items()}, a.field)


def embed(op: _TensorMatrix, positions: Sequence[int], dims: Sequence[int]) -> _TensorMatrix:
    """Act with ``op`` on the given 0-based slots of a space with slot ``dims``."""
    positions = tuple(positions)
    k = len(dims)
    if len(positions) != op.slots or len(set(positions)) != len(positions):
        raise ShapeError("positions do not match the operator's slot count")
    for p, d_r, d_c in zip(positions, op.row_dims, op.col_dims):
        if not 0 <= p < k:
            raise ShapeError(f"slot {p} outside 0..{k - 1}")
        if d_r != d_c or d_r != dims[p]:
            raise ShapeError("embedded operator must be square on its slots")
    rest = [i for i in range(k) if i not in positions]
    out = {}
    for other in basis([dims[i] for i in rest]):
        for (r, c), v in op.entries.items():
            row = [0] * k
            col = [0] * k
            for i, x in zip(rest, other):
                row[i] = col[i] = x
            for i, x, y in zip(positions, r, c):
                row[i] = x
                col[i] = y
            out[tuple(row), tuple(col)] = v
    if op.scalar:
        return ScalarMatrix(dims, dims, out, op.field, True)
    return AlgMatrix(dims, dims, out, op.field)


def partial_trace(mat: _TensorMatrix, positions: Iterable[int]) -> _TensorMatrix:
    """Contract the given 0-based slots; a full trace leaves a 1x1 matrix."""
    positions = sorted(set(positions))
    for p in positions:
        if not 0 <= p < mat.slots:
            raise ShapeError(f"slot {p} outside 0..{mat.slots - 1}")
        if mat.row_dims[p] != mat.col_dims[p]:
            raise ShapeError(f"slot {p} is not square and cannot be traced")
    keep = [i for i in range(mat.slots) if i not in positions]
    rd = tuple(mat.row_dims[i] for i in keep)
    cd = tuple(mat.col_dims[i] for i in keep)
    acc: dict = {}
    for (r, c), v in mat.entries.items():
        if any(r[p] != c[p] for p in positions):
            continue
        key = (tuple(r[i] for i in keep), tuple(c[i] for i in keep))
        if mat.scalar:
            acc[key] = acc.get(key, 0) + v
        else:
            terms = acc.setdefault(key, {})
            for w, cw in v.terms.items():
                terms[w] = terms.get(w, 0) + cw
    if mat.scalar:
        return ScalarMatrix(rd, cd, acc, mat.field)
    return AlgMatrix(rd, cd, {k: NCPoly(t, mat.field) for k, t in acc.items()}, mat.field)


# --- the parametric flip and its symmetric-group action ------------------

def _params(assign, which: str) -> ParametricMatrix:
    if isinstance(assign, ParametricMatrix):
        return assign
    return assign.params(which)


def permutation_op(assign, which: str = "q") -> ScalarMatrix:
    """P = sum_ij q_ji E_ij (x) E_ji, i.e. P(e_a (x) e_b) = q_ab e_b (x) e_a."""
    P = _params(assign, which)
    n = P.n
    return ScalarMatrix((n, n), (n, n), {((b, a), (a, b)): P.raw(a, b)
                                         for a in range(1, n + 1) for b in range(1, n + 1)}, P.field, True)


def reduced_word(sigma: Sequence[int]) -> Tuple[int, ...]:
    """Adjacent transpositions (1-based s_i) with sigma = s_{i1} s_{i2} ... (bubble sort)."""
    arr = list(sigma)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                swaps.append(i + 1)
                changed = True
    return tuple(reversed(swaps))


def _act(P: ParametricMatrix, word: Sequence[int], vec: Index, offset: int = 0):
    """Apply P^{s_{i1}} ... P^{s_{il}} (rightmost first) to e_vec; returns (coef, image)."""
    f = P.field
    v = list(vec)
    coef = f.one
    for i in reversed(word):
        a, b = offset + i - 1, offset + i
        coef = f.norm(coef * P.raw(v[a], v[b]))
        v[a], v[b] = v[b], v[a]
    return coef, tuple(v)


def perm_action(assign, sigma: Sequence[int], k: int = None, which: str = "q",
                offset: int = 0) -> ScalarMatrix:
    """P^sigma on (C^n)^{(x) k}, acting on slots offset+1..offset+len(sigma)."""
    P = _params(assign, which)
    k = len(sigma) + offset if k is None else k
    word = reduced_word(sigma)
    out = {}
    for vec in basis([P.n] * k):
        c, img = _act(P, word, vec, offset)
        out[img, vec] = c
    return ScalarMatrix((P.n,) * k, (P.n,) * k, out, P.field, True)


def word_action(assign, word: Sequence[int], k: int, which: str = "q") -> ScalarMatrix:
    """P^{s_{i1}} ... P^{s_{il}} for an arbitrary (not necessarily reduced) word."""
    P = _params(assign, which)
    out = {}
    for vec in basis([P.n] * k):
        c, img = _act(P, word, vec)
        out[img, vec] = c
    return ScalarMatrix((P.n,) * k, (P.n,) * k, out, P.field, True)


def q_factorial(u2, k: int, field: Field, convention: str):
    """[k]! for the spectral parameter u^2 under a named convention.

    ``"u2"``: [i] = 1 + u^2 + ... + u^{2(i-1)};
    ``"u-2"``: [i] = 1 + u^-2 + ... + u^{-2(i-1)};
    ``"symmetric"``: [i] = (u^{2i} - u^{-2i}) / (u^2 - u^{-2}).
    """
    norm = field.norm
    inv_u2 = field.inv(u2)
    acc = field.one
    for i in range(1, k + 1):
        if convention == "u2":
            term = norm(sum(_pow(field, u2, e) for e in range(i)))
        elif convention == "u-2":
            term = norm(sum(_pow(field, inv_u2, e) for e in range(i)))
        elif convention == "symmetric":
            num = norm(_pow(field, u2, i) - _pow(field, inv_u2, i))
            den = norm(u2 - inv_u2)
            term = norm(num * field.inv(den))
        else:
            raise ValueError(f"unknown q-factorial convention {convention!r}")
        acc = norm(acc * term)
    return acc


def _pow(field: Field, x, e: int):
    acc = field.one
    for _ in range(e):
        acc = field.norm(acc * x)
    return acc


PROJECTOR_KINDS = ("antisym-q", "sym-q", "antisym-p", "sym-p", "mixed-qp", "yangian-antisym")
YANGIAN_CONVENTIONS = ("u2", "u-2", "symmetric")


def _group_sum(P: ParametricMatrix, k: int, signed: bool, slots: Sequence[int] = None) -> ScalarMatrix:
    """(1/|G|) sum_{sigma in G} (sgn) P^sigma, G permuting the contiguous 0-based ``slots``."""
    f = P.field
    slots = tuple(range(k)) if slots is None else tuple(slots)
    r = len(slots)
    if r and slots != tuple(range(slots[0], slots[0] + r)):
        raise ShapeError("symmetrizer slots must be contiguous")
    offset = slots[0] if r else 0
    norm_c = factorial(r)
    if norm_c % getattr(f, "p", norm_c + 1) == 0:
        raise FieldError("k! vanishes in the field")
    inv = f.inv(norm_c)
    words = [(reduced_word(s), sign(s) if signed else 1) for s in permutations_of(r)]
    out: dict = {}
    for vec in basis([P.n] * k):
        for word, sg in words:
            c, img = _act(P, word, vec, offset)
            key = (img, vec)
            out[key] = out.get(key, 0) + (c if sg == 1 else -c)
    return ScalarMatrix((P.n,) * k, (P.n,) * k, {kk: v * inv for kk, v in out.items()}, f)


def symmetrizer(assign, k: int, which: str = "q", slots: Sequence[int] = None) -> ScalarMatrix:
    return _group_sum(_params(assign, which), k, False, slots)


def antisymmetrizer(assign, k: int, which: str = "q", slots: Sequence[int] = None) -> ScalarMatrix:
    return _group_sum(_params(assign, which), k, True, slots)


def mixed_antisymmetrizer(assign: ParameterAssignment, k: int, unnormalized: bool = False,
                          yangian: bool = False) -> ScalarMatrix:
    """Sum over increasing I and sigma, rho of weight * e_{i_sigma(1) i_rho(1)} (x) ...

    Weight is eps(p,I,rho)/eps(q,I,sigma) for the mixed operator and
    eps(p,I,rho) eps(q,I,sigma) for the Yangian one.  Normalization is left to
    the caller when ``unnormalized`` is set.
    """
    q, p = assign.q, assign.p
    f = assign.field
    n = q.n
    if p.n != n:
        raise ShapeError("mixed antisymmetrizer needs square parameters of equal size")
    out: dict = {}
    perms = list(permutations_of(k))
    for I in increasing_subsets(range(1, n + 1), k):
        eq = {s: eps_perm(q, I, s).value for s in perms}
        ep = {s: eps_perm(p, I, s).value for s in perms}
        for s in perms:
            row = tuple(I[x - 1] for x in s)
            wq = eq[s] if yangian else f.inv(eq[s])
            for rho in perms:
                col = tuple(I[x - 1] for x in rho)
                out[row, col] = out.get((row, col), 0) + ep[rho] * wq
    M = ScalarMatrix((n,) * k, (n,) * k, out, f)
    if unnormalized:
        return M
    return M.scale(FieldElement(f.inv(factorial(k)), f))


def projector(assign, kind: str, k: int, convention: str = "u-2") -> ScalarMatrix:
    """Normalized (anti)symmetrizers on the k-th tensor power.

    ``convention`` selects the q-factorial used by ``yangian-antisym``.
    """
    if k < 1:
        raise ShapeError("tensor power must be positive")
    if kind == "antisym-q":
        return antisymmetrizer(assign, k, "q")
    if kind == "sym-q":
        return symmetrizer(assign, k, "q")
    if kind == "antisym-p":
        return antisymmetrizer(assign, k, "p")
    if kind == "sym-p":
        return symmetrizer(assign, k, "p")
    if kind == "mixed-qp":
        return mixed_antisymmetrizer(assign, k)
    if kind == "yangian-antisym":
        if assign.u is None:
            raise FieldError("yangian projector needs u")
        f = assign.field
        u2 = f.norm(assign.u.value * assign.u.value)
        fact = q_factorial(u2, k, f, convention)
        if fact == 0:
            raise FieldError(f"[{k}]! vanishes for this u")
        raw = mixed_antisymmetrizer(assign, k, unnormalized=True, yangian=True)
        return raw.scale(FieldElement(f.inv(fact), f))
    raise ValueError(f"unknown projector kind {kind!r}; expected one of {PROJECTOR_KINDS}")


# --- chains, star products ----------------------------------------------

def chain(mat: AlgMatrix, k: int) -> AlgMatrix:
    """mat_1 mat_2 ... mat_k: entry ((a),(b)) = mat[a1,b1] mat[a2,b2] ... ."""
    if mat.slots != 1:
        raise ShapeError("chain expects a single-slot matrix")
    result = None
    for _ in range(k):
        result = mat if result is None else kron(result, mat)
    if result is None:
        return AlgMatrix((), (), {((), ()): NCPoly.one(mat.field)}, mat.field)
    return result


def alg_product_chain(family: str, rows: int, cols: int, k: int, field: Field) -> AlgMatrix:
    """Generic generator matrix raised to the chain M_1 ... M_k."""
    if k < 1:
        raise ShapeError("k must be positive")
    return chain(AlgMatrix.generic(family, rows, cols, field), k)


def star(B: AlgMatrix, C: AlgMatrix, P: ScalarMatrix) -> AlgMatrix:
    """B * C = tr_1 P B_1 C_2."""
    return partial_trace(matmul(P, kron(B, C)), [0])


def star_power(M: AlgMatrix, assign, k: int, which: str = "q") -> AlgMatrix:
    """M^[0] = 1, M^[1] = M, M^[k] = M^[k-1] * M with the flip P_q."""
    n = M.row_dims[0]
    if M.row_dims != M.col_dims:
        raise ShapeError("star powers need a square matrix")
    if k == 0:
        return AlgMatrix.identity((n,), M.field)
    P = permutation_op(assign, which)
    out = M
    for _ in range(k - 1):
        out = star(out, M, P)
    return out
