"""Relation presentations and bounded two-sided ideal membership.

Membership of a polynomial p in the two-sided ideal generated by a set of
weighted-homogeneous relations is decided by linear algebra on the span of
all ``w r w'`` at the weight of p.  That span splits into independent blocks:
two words belong to the same block when some ``w r w'`` has both in its
support.  Only the blocks touched by p are built (breadth-first search from
p's words), each block is put in echelon form with pivot = least word, and p
is reduced to its unique normal form.

When the alphabet splits into groups of families that commute with each
other and have no other cross relation, the quotient is a tensor product of
the group quotients; words are then sorted into group order and each group
part is reduced separately.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .freealg import FAMILY_WEIGHTS, VECTOR_FAMILIES, Gen, NCPoly, Word, word_weight
from .scalar import Field, ParameterAssignment, ParametricMatrix

log = logging.getLogger(__name__)

DEFAULT_GUARD = 10**6

PROVENANCE = ("manin-column", "manin-cross", "commuting", "capelli-cross", "capelli-extra",
              "comodule", "h-central", "custom")

CAPELLI_VARIANTS = ("det-col", "det-row", "per", "per-col")


class RelationError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    """A block grew past the configured word cap."""

    def __init__(self, words: int, cap: int):
        super().__init__(f"ideal block exceeds the size guard ({words} > {cap} words)")
        self.words = words
        self.cap = cap


# --- sparse echelon forms --------------------------------------------------

class Echelon:
    """Rows with distinct pivots; each pivot is the least key of its row.

    Reduction processes keys in increasing order, so subtracting a row only
    introduces keys larger than the one eliminated and always terminates.
    """

    def __init__(self, field: Field):
        self.field = field
        self.pivots: Dict[object, Dict[object, object]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Dict[object, object]) -> Dict[object, object]:
        norm = self.field.norm
        vec = dict(vec)
        if not self.pivots:
            return vec
        heap = list(vec)
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            key = heapq.heappop(heap)
            row = self.pivots.get(key)
            c = vec.get(key)
            if row is None or not c:
                continue
            for k2, v in row.items():
                nv = norm(vec.get(k2, 0) - c * v)
                if nv:
                    vec[k2] = nv
                    if k2 not in seen:
                        seen.add(k2)
                        heapq.heappush(heap, k2)
                else:
                    vec.pop(k2, None)
        return vec

    def add(self, vec: Dict[object, object]) -> bool:
        """Insert a vector; returns True when it raised the rank."""
        red = self.reduce(vec)
        if not red:
            return False
        piv = min(red)
        inv = self.field.inv(red[piv])
        norm = self.field.norm
        self.pivots[piv] = {k: norm(v * inv) for k, v in red.items()}
        return True


def row_reduce(vecs: Iterable[Dict[object, object]], field: Field) -> List[Dict[object, object]]:
    """Echelon basis of the span of sparse vectors (keys must be mutually comparable)."""
    ech = Echelon(field)
    for v in vecs:
        ech.add({k: field.norm(c) for k, c in v.items() if field.norm(c)})
    return list(ech.pivots.values())


# --- relation sets -------------------------------------------------------

@dataclass
class RelationSet:
    """A two-sided ideal presented by weighted-homogeneous relations.

    ``alphabet`` maps a family to its (rows, cols); vector families use
    cols = 0.  ``groups``, when given, lists families that commute fully
    across groups with no other cross relation (checked on construction).
    """

    alphabet: Dict[str, Tuple[int, int]]
    field: Field
    relations: List[NCPoly] = dc_field(default_factory=list)
    provenance: List[str] = dc_field(default_factory=list)
    groups: Optional[Tuple[Tuple[str, ...], ...]] = None
    label: str = ""

    def __post_init__(self):
        for fam in self.alphabet:
            if fam not in FAMILY_WEIGHTS:
                raise RelationError(f"unknown family {fam!r}")
        rels, prov = [], []
        for r, tag in zip(self.relations, self.provenance):
            self._check(r, tag)
            if not r.is_zero():
                rels.append(r)
                prov.append(tag)
        if len(self.relations) != len(self.provenance):
            raise RelationError("every relation needs a provenance tag")
        self.relations, self.provenance = rels, prov
        self._engine = None
        if self.groups is not None:
            self._check_groups()

    def _check(self, r: NCPoly, tag: str) -> None:
        if tag not in PROVENANCE:
            raise RelationError(f"unknown provenance {tag!r}")
        if r.field != self.field:
            raise RelationError("relation over a different field")
        if len(r.weights()) > 1:
            raise RelationError(f"relation is not weighted-homogeneous: {r.render()}")
        if () in r.terms:
            raise RelationError("relations must not have a constant term")
        for g in r.letters():
            if g.family not in self.alphabet:
                raise RelationError(f"letter {g} outside the declared alphabet")

    def letters(self) -> List[Gen]:
        out = []
        for fam, (rows, cols) in sorted(self.alphabet.items()):
            for i in range(1, rows + 1):
                if fam in VECTOR_FAMILIES:
                    out.append(Gen(fam, i, 0))
                else:
                    out.extend(Gen(fam, i, j) for j in range(1, cols + 1))
        return out

    def extend(self, other: "RelationSet", groups=None, label: str = None) -> "RelationSet":
        if other.field != self.field:
            raise RelationError("cannot merge relation sets over different fields")
        alphabet = dict(self.alphabet)
        for fam, dims in other.alphabet.items():
            if fam in alphabet and alphabet[fam] != dims:
                raise RelationError(f"family {fam} declared with dimensions {alphabet[fam]} and {dims}")
            alphabet[fam] = dims
        return RelationSet(alphabet, self.field, self.relations + other.relations,
                           self.provenance + other.provenance, groups,
                           label if label is not None else "+".join(x for x in (self.label, other.label) if x))

    def __len__(self) -> int:
        return len(self.relations)

    def weights(self) -> set:
        return {next(iter(r.weights())) for r in self.relations}

    def _check_groups(self) -> None:
        where = {}
        for gi, grp in enumerate(self.groups):
            for fam in grp:
                if fam in where:
                    raise RelationError(f"family {fam} in two groups")
                where[fam] = gi
        if set(where) != set(self.alphabet):
            raise RelationError("groups must cover the alphabet exactly")
        pairs = set()
        for r in self.relations:
            gs = {where[f] for f in r.families()}
            if len(gs) == 1:
                continue
            pair = _commutator_pair(r)
            if pair is None or where[pair[0].family] == where[pair[1].family]:
                raise RelationError("cross-group relation is not a commutator; groups do not factor")
            pairs.add(frozenset(pair))
        letters = self.letters()
        for a in letters:
            for b in letters:
                if where[a.family] < where[b.family] and frozenset((a, b)) not in pairs:
                    raise RelationError(f"{a} and {b} lie in different groups but do not commute")

    def engine(self, guard: int = DEFAULT_GUARD) -> "IdealEngine":
        if self._engine is None or self._engine.guard != guard:
            self._engine = IdealEngine(self, guard)
        return self._engine

    def summary(self) -> dict:
        counts: Dict[str, int] = {}
        for t in self.provenance:
            counts[t] = counts.get(t, 0) + 1
        return {"label": self.label, "alphabet": {k: list(v) for k, v in sorted(self.alphabet.items())},
                "relations": len(self.relations), "provenance": dict(sorted(counts.items()))}


def _commutator_pair(r: NCPoly) -> Optional[Tuple[Gen, Gen]]:
    if len(r.terms) != 2:
        return None
    (w1, c1), (w2, c2) = r.terms.items()
    if len(w1) != 2 or w2 != (w1[1], w1[0]) or r.field.norm(c1 + c2) != 0:
        return None
    return w1[0], w1[1]


# --- builders ------------------------------------------------------------

def _g(fam: str, i: int, j: int, field: Field) -> NCPoly:
    return NCPoly.gen(fam, i, j, field=field)


def _manin(rows: int, cols: int, q: ParametricMatrix, p: ParametricMatrix, entry, field: Field):
    """Column and cross relations of a (q, p)-Manin matrix whose (i, k) letter is ``entry(i, k)``."""
    rels, prov = [], []
    X = lambda i, k: NCPoly({(entry(i, k),): field.one}, field, True)
    for i in range(1, rows + 1):
        for j in range(i + 1, rows + 1):
            for k in range(1, cols + 1):
                rels.append(X(i, k) * X(j, k) - (X(j, k) * X(i, k)).scale(q.raw(j, i)))
                prov.append("manin-column")
    for i in range(1, rows + 1):
        for j in range(i + 1, rows + 1):
            for k in range(1, cols + 1):
                for l in range(k + 1, cols + 1):
                    qji, pkl = q.raw(j, i), p.raw(k, l)
                    rels.append(X(i, k) * X(j, l) - (X(j, l) * X(i, k)).scale(qji * pkl)
                                + (X(i, l) * X(j, k)).scale(pkl) - (X(j, k) * X(i, l)).scale(qji))
                    prov.append("manin-cross")
    return rels, prov


def _pick(assign, which: str, size: int) -> ParametricMatrix:
    if isinstance(assign, ParametricMatrix):
        mat = assign
    elif which == "1":
        return ParametricMatrix.ones(size, assign.field)
    else:
        mat = assign.params(which)
    if mat.n < size:
        raise RelationError(f"parameter matrix of size {mat.n} cannot cover dimension {size}")
    return mat if mat.n == size else mat.restrict(size)


def manin_relations(n: int, m: int, assign: ParameterAssignment, family: str = "M",
                    q: ParametricMatrix = None, p: ParametricMatrix = None) -> RelationSet:
    """Relations of an n x m (q, p)-Manin matrix of generators ``family``.

    The parameters default to the assignment's q and p, which must have
    sizes n and m.
    """
    if q is None:
        if assign.q.n != n or assign.p.n != m:
            raise RelationError(f"assignment has sizes ({assign.q.n},{assign.p.n}), expected ({n},{m})")
        q, p = assign.q, assign.p
    elif q.n != n or p.n != m:
        raise RelationError("parameter sizes do not match the matrix")
    field = q.field
    rels, prov = _manin(n, m, q, p, lambda i, k: Gen(family, i, k), field)
    return RelationSet({family: (n, m)}, field, rels, prov, label=f"manin({n},{m})")


def relations_from_idempotent(A, B, family: str = "M") -> RelationSet:
    """Entries of A M_1 M_2 (1 - B) for idempotent A on C^n (x) C^n and B on C^m (x) C^m."""
    from .tensor import AlgMatrix, ScalarMatrix, chain, matmul

    for X, name in ((A, "A"), (B, "B")):
        if matmul(X, X) != X:
            raise RelationError(f"{name} is not idempotent")
        if X.slots != 2 or X.row_dims != X.col_dims or X.row_dims[0] != X.row_dims[1]:
            raise RelationError(f"{name} must act on a square tensor square")
    field = A.field
    n, m = A.row_dims[0], B.row_dims[0]
    MM = chain(AlgMatrix.generic(family, n, m, field), 2)
    E = ScalarMatrix.identity((m, m), field) - B
    prod = matmul(matmul(A, MM), E)
    rels = [v for _, v in sorted(prod.entries.items())]
    return RelationSet({family: (n, m)}, field, rels, ["custom"] * len(rels), label="idempotent")


def commuting_relations(alphabet_a: Dict[str, Tuple[int, int]], alphabet_b: Dict[str, Tuple[int, int]],
                        field: Field) -> RelationSet:
    """ab - ba for every letter a of the first alphabet and b of the second."""
    A = RelationSet(alphabet_a, field)
    B = RelationSet(alphabet_b, field)
    rels = []
    for a in A.letters():
        for b in B.letters():
            wa = NCPoly({(a, b): field.one}, field, True)
            rels.append(wa - NCPoly({(b, a): field.one}, field, True))
    alphabet = dict(alphabet_a)
    alphabet.update(alphabet_b)
    return RelationSet(alphabet, field, rels, ["commuting"] * len(rels), label="commuting")


def quantum_plane_relations(n: int, p: ParametricMatrix, family: str = "X") -> RelationSet:
    """x_j x_i = p_ij x_i x_j for i < j."""
    f = p.field
    rels = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(_g(family, j, 0, f) * _g(family, i, 0, f) - (_g(family, i, 0, f) * _g(family, j, 0, f)).scale(p.raw(i, j)))
    return RelationSet({family: (n, 0)}, f, rels, ["comodule"] * len(rels), label=f"plane({family})")


def grassmann_relations(n: int, q: ParametricMatrix, family: str = "Psi") -> RelationSet:
    """psi_i^2 = 0 and psi_j psi_i = -q_ji psi_i psi_j for i < j."""
    f = q.field
    rels = []
    for i in range(1, n + 1):
        rels.append(_g(family, i, 0, f) * _g(family, i, 0, f))
        for j in range(i + 1, n + 1):
            rels.append(_g(family, j, 0, f) * _g(family, i, 0, f) + (_g(family, i, 0, f) * _g(family, j, 0, f)).scale(q.raw(j, i)))
    return RelationSet({family: (n, 0)}, f, rels, ["comodule"] * len(rels), label=f"grassmann({family})")


def capelli_relations(n: int, m: int, s: int, assign: ParameterAssignment, variant: str,
                      h_central: bool = False) -> RelationSet:
    """Manin relations of the variant plus [M_ij, N_kl] = -delta_jk h_il.

    M is n x m, N is m x s, H is n x s.  The Manin part is

    * ``det-col``: M is (q, 1)-Manin with q on n;
    * ``det-row``: N^t is (q, 1)-Manin with q on s;
    * ``per``: N is (1, p)-Manin with p on s;
    * ``per-col``: M^t is (1, p)-Manin with p on n, together with the
      weight-3 relation tying M and H that the column permanent needs.

    ``h_central`` adds [h, x] = 0 for every letter x (an extra assumption).
    """
    if variant not in CAPELLI_VARIANTS:
        raise RelationError(f"unknown Capelli variant {variant!r}; expected one of {CAPELLI_VARIANTS}")
    field = assign.field
    ones_m = ParametricMatrix.ones(m, field)
    if variant == "det-col":
        rels, prov = _manin(n, m, _pick(assign, "q", n), ones_m, lambda i, k: Gen("M", i, k), field)
    elif variant == "det-row":
        rels, prov = _manin(s, m, _pick(assign, "q", s), ones_m, lambda l, k: Gen("N", k, l), field)
    elif variant == "per":
        rels, prov = _manin(m, s, ones_m, _pick(assign, "p", s), lambda k, l: Gen("N", k, l), field)
    else:
        rels, prov = _manin(m, n, ones_m, _pick(assign, "p", n), lambda k, i: Gen("M", i, k), field)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            for k in range(1, m + 1):
                for l in range(1, s + 1):
                    r = _g("M", i, j, field) * _g("N", k, l, field) - _g("N", k, l, field) * _g("M", i, j, field)
                    if j == k:
                        r = r + _g("H", i, l, field)
                    rels.append(r)
                    prov.append("capelli-cross")
    if variant == "per-col":
        pm = _pick(assign, "p", n)
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                for c in range(1, m + 1):
                    for d in range(1, s + 1):
                        r = (_g("M", a, c, field) * _g("H", b, d, field) - _g("H", a, d, field) * _g("M", b, c, field)
                             + (_g("M", b, c, field) * _g("H", a, d, field)
                                - _g("H", b, d, field) * _g("M", a, c, field)).scale(pm.raw(a, b)))
                        rels.append(r)
                        prov.append("capelli-extra")
    alphabet = {"M": (n, m), "N": (m, s), "H": (n, s)}
    out = RelationSet(alphabet, field, rels, prov, label=f"capelli-{variant}({n},{m},{s})")
    if h_central:
        out = out.extend(h_central_relations(alphabet, field), label=out.label + "+h-central")
    return out


def h_central_relations(alphabet: Dict[str, Tuple[int, int]], field: Field) -> RelationSet:
    """[h, x] = 0 for every H letter h and every other letter x of the alphabet."""
    full = RelationSet(alphabet, field)
    hs = [g for g in full.letters() if g.family == "H"]
    rels = []
    done = set()
    for h in hs:
        for x in full.letters():
            key = frozenset((h, x))
            if x == h or key in done:
                continue
            done.add(key)
            rels.append(NCPoly({(h, x): field.one, (x, h): field.norm(-1)}, field))
    return RelationSet(dict(alphabet), field, rels, ["h-central"] * len(rels), label="h-central")


def free_relations(alphabet: Dict[str, Tuple[int, int]], field: Field) -> RelationSet:
    return RelationSet(dict(alphabet), field, label="free")


# --- membership ------------------------------------------------------------

@dataclass
class DegreeComponent:
    """Echelon basis of the ideal at one weight (or of one block of it)."""

    degree: int
    words: int
    basis: Dict[Word, Dict[Word, object]]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> List[Word]:
        return sorted(self.basis)


@dataclass
class Block:
    words: frozenset
    echelon: Echelon

    @property
    def rank(self) -> int:
        return len(self.echelon)

    @property
    def size(self) -> int:
        return len(self.words)


@dataclass
class Membership:
    member: bool
    witness: Optional[NCPoly] = None
    blocks: int = 0
    words: int = 0
    rank: int = 0
    proper_blocks: int = 0
    full_blocks: int = 0

    def __bool__(self) -> bool:
        return self.member

    @property
    def nonvacuous(self) -> bool:
        """Some touched block is not entirely inside the ideal."""
        return self.proper_blocks > 0

    def merge(self, other: "Membership") -> "Membership":
        return Membership(self.member and other.member, self.witness if self.witness is not None else other.witness,
                          self.blocks + other.blocks, self.words + other.words, self.rank + other.rank,
                          self.proper_blocks + other.proper_blocks, self.full_blocks + other.full_blocks)


class _GroupEngine:
    """Block-wise normal forms for one commuting group (or the whole alphabet)."""

    def __init__(self, relations: Sequence[NCPoly], field: Field, guard: int):
        self.field = field
        self.guard = guard
        self.relations = list(relations)
        self.by_word: Dict[Word, List[int]] = {}
        for idx, r in enumerate(self.relations):
            for w in r.terms:
                self.by_word.setdefault(w, []).append(idx)
        self.lengths = sorted({len(w) for w in self.by_word})
        self.block_of: Dict[Word, Block] = {}
        self.nf_cache: Dict[Word, Dict[Word, object]] = {}

    def block(self, word: Word) -> Block:
        blk = self.block_of.get(word)
        if blk is not None:
            return blk
        norm = self.field.norm
        seen = {word}
        queue = [word]
        vectors = []
        used = set()
        while queue:
            u = queue.pop()
            L = len(u)
            for ln in self.lengths:
                for i in range(L - ln + 1):
                    x = u[i:i + ln]
                    for ridx in self.by_word.get(x, ()):
                        pre, post = u[:i], u[i + ln:]
                        key = (pre, ridx, post)
                        if key in used:
                            continue
                        used.add(key)
                        vec = {}
                        for t, c in self.relations[ridx].terms.items():
                            w = pre + t + post
                            vec[w] = norm(vec.get(w, 0) + c)
                            if w not in seen:
                                seen.add(w)
                                queue.append(w)
                                if len(seen) > self.guard:
                                    raise GuardExceeded(len(seen), self.guard)
                        vectors.append(vec)
        ech = Echelon(self.field)
        for v in sorted(vectors, key=lambda v: min(v)):
            ech.add({k: c for k, c in v.items() if c})
        blk = Block(frozenset(seen), ech)
        for w in seen:
            self.block_of[w] = blk
        return blk

    def normal_form(self, terms: Dict[Word, object], stats: Membership = None) -> Dict[Word, object]:
        """Unique normal form; blocks are reduced independently."""
        by_block: Dict[int, Tuple[Block, dict]] = {}
        for w, c in terms.items():
            blk = self.block(w)
            by_block.setdefault(id(blk), (blk, {}))[1][w] = c
        out = {}
        for blk, part in by_block.values():
            if stats is not None:
                stats.blocks += 1
                stats.words += blk.size
                stats.rank += blk.rank
                if blk.rank < blk.size:
                    stats.proper_blocks += 1
                else:
                    stats.full_blocks += 1
            out.update(blk.echelon.reduce(part))
        return out

    def word_nf(self, word: Word) -> Dict[Word, object]:
        nf = self.nf_cache.get(word)
        if nf is None:
            nf = self.normal_form({word: self.field.one})
            self.nf_cache[word] = nf
        return nf


class IdealEngine:
    """Membership and normal forms for one :class:`RelationSet`; caches blocks."""

    def __init__(self, rels: RelationSet, guard: int = DEFAULT_GUARD):
        self.rels = rels
        self.field = rels.field
        self.guard = guard
        if rels.groups:
            self.group_of = {fam: gi for gi, grp in enumerate(rels.groups) for fam in grp}
            inner = [[] for _ in rels.groups]
            for r in rels.relations:
                gs = {self.group_of[f] for f in r.families()}
                if len(gs) == 1:
                    inner[gs.pop()].append(r)
            self.engines = [_GroupEngine(rs, self.field, guard) for rs in inner]
        else:
            self.group_of = None
            self.engines = [_GroupEngine(rels.relations, self.field, guard)]

    def _check_alphabet(self, poly: NCPoly) -> None:
        if poly.field != self.field:
            raise RelationError(f"polynomial over {poly.field.tag}, relations over {self.field.tag}")
        for g in poly.letters():
            dims = self.rels.alphabet.get(g.family)
            if dims is None:
                raise RelationError(f"letter {g} outside the alphabet {sorted(self.rels.alphabet)}")

    def normal_form(self, poly: NCPoly, stats: Membership = None) -> NCPoly:
        self._check_alphabet(poly)
        if self.group_of is None:
            return NCPoly(self.engines[0].normal_form(poly.terms, stats), self.field)
        return NCPoly(self._grouped_nf(poly, stats), self.field)

    def _grouped_nf(self, poly: NCPoly, stats: Membership = None) -> Dict[Word, object]:
        norm = self.field.norm
        k = len(self.engines)
        # commuting groups: a word equals its group-sorted rearrangement
        sorted_terms: Dict[Tuple[Word, ...], object] = {}
        for w, c in poly.terms.items():
            parts = [[] for _ in range(k)]
            for g in w:
                parts[self.group_of[g.family]].append(g)
            key = tuple(tuple(p) for p in parts)
            sorted_terms[key] = norm(sorted_terms.get(key, 0) + c)
        out: Dict[Word, object] = {}
        touched: Dict[int, Block] = {}
        for parts, c in sorted_terms.items():
            if not c:
                continue
            acc = {(): c}
            for gi, part in enumerate(parts):
                eng = self.engines[gi]
                nf = eng.word_nf(part)
                blk = eng.block_of[part]
                touched[id(blk)] = blk
                nxt = {}
                for w1, c1 in acc.items():
                    for w2, c2 in nf.items():
                        w = w1 + w2
                        nxt[w] = nxt.get(w, 0) + c1 * c2
                acc = nxt
                if not acc:
                    break
            for w, v in acc.items():
                out[w] = norm(out.get(w, 0) + v)
        if stats is not None:
            for blk in touched.values():
                stats.blocks += 1
                stats.words += blk.size
                stats.rank += blk.rank
                if blk.rank < blk.size:
                    stats.proper_blocks += 1
                else:
                    stats.full_blocks += 1
        return {w: v for w, v in out.items() if v}

    def is_member(self, poly: NCPoly) -> Membership:
        stats = Membership(True)
        for d, comp in poly.components().items():
            nf = self.normal_form(comp, stats)
            if not nf.is_zero():
                if stats.member:
                    stats.witness = nf
                stats.member = False
        return stats


def is_member(poly: NCPoly, rels: RelationSet, guard: int = DEFAULT_GUARD) -> Membership:
    return rels.engine(guard).is_member(poly)


def normal_form(poly: NCPoly, rels: RelationSet, guard: int = DEFAULT_GUARD) -> NCPoly:
    return rels.engine(guard).normal_form(poly)


def words_of_weight(letters: Sequence[Gen], d: int) -> Iterable[Word]:
    """All words of the given weight over ``letters``, in lexicographic order."""
    letters = sorted(letters)
    if d == 0:
        yield ()
        return
    for g in letters:
        wg = FAMILY_WEIGHTS[g.family]
        if wg <= d:
            for rest in words_of_weight(letters, d - wg):
                yield (g,) + rest


def count_words(letters: Sequence[Gen], d: int) -> int:
    counts = [0] * (d + 1)
    counts[0] = 1
    ws = [FAMILY_WEIGHTS[g.family] for g in letters]
    for t in range(1, d + 1):
        counts[t] = sum(counts[t - w] for w in ws if w <= t)
    return counts[d]


def degree_component(rels: RelationSet, d: int, guard: int = DEFAULT_GUARD) -> DegreeComponent:
    """Echelon basis of span{w r w'} at weight d over the full alphabet."""
    letters = rels.letters()
    total = count_words(letters, d)
    if total > guard:
        raise GuardExceeded(total, guard)
    norm = rels.field.norm
    ech = Echelon(rels.field)
    rweights = [word_weight(next(iter(r.terms))) for r in rels.relations]
    for r, wr in zip(rels.relations, rweights):
        if wr > d:
            continue
        for left in range(d - wr + 1):
            for pre in words_of_weight(letters, left):
                for post in words_of_weight(letters, d - wr - left):
                    vec = {}
                    for t, c in r.terms.items():
                        w = pre + t + post
                        vec[w] = norm(vec.get(w, 0) + c)
                    ech.add({k: v for k, v in vec.items() if v})
    return DegreeComponent(d, total, dict(ech.pivots))
