"""The multiparameter R-matrix: Yang-Baxter, the value at u^-2, and fusion.

All checks are numeric in (z, w, u) over the assignment's field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .scalar import FieldElement, FieldError, ParameterAssignment, ParameterError
from .tensor import (YANGIAN_CONVENTIONS, ScalarMatrix, embed, matmul, mixed_antisymmetrizer, projector,
                     q_factorial)


@dataclass(frozen=True)
class RMatrixSpec:
    n: int
    assign: ParameterAssignment
    z: FieldElement

    def __post_init__(self):
        a = self.assign
        if a.u is None or a.u.is_zero():
            raise ParameterError("the R-matrix needs a nonzero u")
        if a.constrained:
            if (a.u * a.u + 1).is_zero():
                raise ParameterError("u^2 = -1 is excluded")
            a.check_yangian()


def _raw(spec_or_assign):
    return spec_or_assign.field


def r_matrix(spec: RMatrixSpec) -> ScalarMatrix:
    """R(z) on C^n (x) C^n, summand by summand as displayed."""
    a, n = spec.assign, spec.n
    f = a.field
    norm, inv = f.norm, f.inv
    u, z = a.u.value, spec.z.value
    ui = inv(u)
    p, q = a.p, a.q
    out: Dict[tuple, object] = {}
    for i in range(1, n + 1):
        out[(i, i), (i, i)] = norm(z * u - ui)
        for j in range(1, n + 1):
            if i < j:
                out[(i, j), (i, j)] = norm(z * ui * p.raw(i, j) - u * inv(q.raw(i, j)))
                # e_ij (x) e_ji sends e_j (x) e_i to e_i (x) e_j
                out[(i, j), (j, i)] = norm(z * (u - ui))
            elif i > j:
                out[(i, j), (i, j)] = norm(z * ui * q.raw(j, i) - u * inv(p.raw(j, i)))
                out[(i, j), (j, i)] = norm(u - ui)
    return ScalarMatrix((n, n), (n, n), out, f)


def flip(n: int, field) -> ScalarMatrix:
    """The ordinary flip P(e_a (x) e_b) = e_b (x) e_a."""
    return ScalarMatrix((n, n), (n, n), {((b, a), (a, b)): field.one
                                         for a in range(1, n + 1) for b in range(1, n + 1)}, field, True)


def r_hat(n: int, assign: ParameterAssignment, z) -> ScalarMatrix:
    """R^(z) = P R(z)."""
    z = assign.field(z) if not isinstance(z, FieldElement) else z
    return matmul(flip(n, assign.field), r_matrix(RMatrixSpec(n, assign, z)))


def r_hat_closed_form(n: int, assign: ParameterAssignment) -> ScalarMatrix:
    """(u - u^-1)[sum_{i<j}(E_ii(x)E_jj - q_ij^-1 E_ji(x)E_ij) - p_ij^-1 sum_{i<j}(E_ij(x)E_ji - q_ij^-1 E_jj(x)E_ii)]."""
    f = assign.field
    norm, inv = f.norm, f.inv
    u = assign.u.value
    c = norm(u - inv(u))
    q, p = assign.q, assign.p
    out: Dict[tuple, object] = {}

    def put(r, col, v):
        out[r, col] = norm(out.get((r, col), 0) + c * v)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            qi, pi = inv(q.raw(i, j)), inv(p.raw(i, j))
            put((i, j), (i, j), 1)                       # E_ii (x) E_jj
            put((j, i), (i, j), -qi)                     # E_ji (x) E_ij
            put((i, j), (j, i), -pi)                     # E_ij (x) E_ji
            put((j, i), (j, i), norm(pi * qi))           # E_jj (x) E_ii
    return ScalarMatrix((n, n), (n, n), out, f)


def _three(op: ScalarMatrix, slots, n: int) -> ScalarMatrix:
    return embed(op, slots, (n, n, n))


def check_ybe(n: int, assign: ParameterAssignment, z=None, w=None) -> dict:
    """R12(z/w) R13(z) R23(w) == R23(w) R13(z) R12(z/w), entrywise."""
    f = assign.field
    z = assign.z if z is None else (z if isinstance(z, FieldElement) else f(z))
    w = assign.w if w is None else (w if isinstance(w, FieldElement) else f(w))
    if z.is_zero() or w.is_zero():
        raise FieldError("spectral parameters must be nonzero")
    zw = z / w
    R = lambda x: r_matrix(RMatrixSpec(n, assign, x)) if assign.constrained else _r_unchecked(n, assign, x)
    R12 = _three(R(zw), (0, 1), n)
    R13 = _three(R(z), (0, 2), n)
    R23 = _three(R(w), (1, 2), n)
    lhs = matmul(matmul(R12, R13), R23)
    rhs = matmul(matmul(R23, R13), R12)
    diff = lhs - rhs
    return {"equal": diff.is_zero(), "mismatched_entries": len(diff.entries)}


def _r_unchecked(n, assign, z):
    spec = object.__new__(RMatrixSpec)
    object.__setattr__(spec, "n", n)
    object.__setattr__(spec, "assign", assign)
    object.__setattr__(spec, "z", z)
    return r_matrix(spec)


def crossing_schedule(k: int, reading: str = "strands") -> List[tuple]:
    """Factors of R(lambda_1..lambda_k) in left-to-right order as (slot i, a, b).

    The product shape is (R12...R_{k-1,k}) ... (R12 R23) R12; each factor
    acts on slots (i, i+1) with spectral value lambda_b / lambda_a.
    ``strands`` follows the strands through the crossings (a is the strand
    on the left of the crossing before it happens); ``literal`` uses
    a = i, b = i + 1 for every factor.
    """
    word: List[int] = []
    for top in range(k - 1, 0, -1):
        word.extend(range(1, top + 1))
    if reading == "literal":
        return [(i, i, i + 1) for i in word]
    if reading != "strands":
        raise ValueError(f"unknown fusion reading {reading!r}")
    pos = list(range(1, k + 1))  # strand at each position, before applying factors right to left
    out = []
    for i in reversed(word):
        a, b = pos[i - 1], pos[i]
        out.append((i, a, b))
        pos[i - 1], pos[i] = b, a
    return list(reversed(out))


def fusion_product(n: int, k: int, assign: ParameterAssignment, reading: str = "strands") -> ScalarMatrix:
    """R(1, u^-2, ..., u^{-2k+2})."""
    f = assign.field
    u2 = f.norm(assign.u.value * assign.u.value)
    lam = [f.one]
    for _ in range(1, k):
        lam.append(f.norm(lam[-1] * f.inv(u2)))
    dims = (n,) * k
    out = ScalarMatrix.identity(dims, f)
    for i, a, b in crossing_schedule(k, reading):
        R = r_hat(n, assign, FieldElement(f.norm(lam[b - 1] * f.inv(lam[a - 1])), f))
        out = matmul(out, embed(R, (i - 1, i), dims))
    return out


def fusion_scalar(k: int, assign: ParameterAssignment, convention: str) -> FieldElement:
    """u^{k(k-1)/2} prod_{0<=i<j<=k-1} (1 - u^{2(i-j)}) [k]!, evaluated literally."""
    f = assign.field
    u = assign.u
    u2 = u * u
    c = u ** (k * (k - 1) // 2)
    for i in range(k):
        for j in range(i + 1, k):
            c = c * (1 - u2 ** (i - j))
    return c * FieldElement(q_factorial(u2.value, k, f, convention), f)


def ratio(a: ScalarMatrix, b: ScalarMatrix) -> Optional[FieldElement]:
    """The scalar c with a = c b, or None when no such scalar exists."""
    f = a.field
    if set(a.entries) != set(b.entries):
        return None
    if not a.entries:
        return FieldElement(f.one, f)
    key = min(a.entries)
    c = f.norm(a.entries[key] * f.inv(b.entries[key]))
    for kk, v in a.entries.items():
        if f.norm(c * b.entries[kk]) != v:
            return None
    return FieldElement(c, f)


def idempotent_conventions(n: int, k: int, assign: ParameterAssignment) -> List[str]:
    """Conventions for [k]! under which the Yangian antisymmetrizer is idempotent."""
    ok = []
    for conv in YANGIAN_CONVENTIONS:
        try:
            A = projector(assign, "yangian-antisym", k, conv)
        except FieldError:
            continue
        if matmul(A, A) == A:
            ok.append(conv)
    return ok


def check_fusion(n: int, k: int, assign: ParameterAssignment) -> dict:
    """Closed form at u^-2, the fused product against c A^(k), and the two lemma identities."""
    f = assign.field
    if k > 4:
        raise ValueError("fusion is checked for k <= 4")
    result: dict = {"n": n, "k": k}
    result["closed_form"] = r_hat(n, assign, assign.u ** -2) == r_hat_closed_form(n, assign)
    idem = idempotent_conventions(n, k, assign) if k <= n else []
    # above the rank the operator vanishes and every convention is idempotent
    result["idempotent_conventions"] = idem
    unnorm = mixed_antisymmetrizer(assign, k, unnormalized=True, yangian=True)
    readings = {}
    for reading in ("strands", "literal"):
        prod = fusion_product(n, k, assign, reading)
        entry = {"zero": prod.is_zero()}
        conv_match = {}
        for conv in YANGIAN_CONVENTIONS:
            fact = q_factorial(f.norm(assign.u.value * assign.u.value), k, f, conv)
            if fact == 0:
                conv_match[conv] = None
                continue
            A = unnorm.scale(FieldElement(f.inv(fact), f))
            c = fusion_scalar(k, assign, conv)
            target = A.scale(c)
            if prod == target:
                conv_match[conv] = {"equal": True, "discrepancy": "1"}
            else:
                r = ratio(prod, target)
                conv_match[conv] = {"equal": False,
                                    "discrepancy": None if r is None else f.fmt(r.value)}
        entry["conventions"] = conv_match
        readings[reading] = entry
    result["fusion"] = readings
    lemma = {}
    for conv in (idem or ["u-2"]):
        A = projector(assign, "yangian-antisym", k, conv)
        Ap = projector(assign, "antisym-p", k)
        lemma[conv] = {"ApA=Ap": matmul(Ap, A) == Ap, "AAp=A": matmul(A, Ap) == A}
    result["lemma"] = lemma
    return result


def fusion_passes(res: dict) -> bool:
    """Closed form holds, the strand-ordered product equals c A^(k) under a convention
    that also makes A^(k) idempotent (any convention when k > n), and the lemma holds."""
    if not res["closed_form"]:
        return False
    fus = res["fusion"]["strands"]["conventions"]
    idem = res["idempotent_conventions"] or [c for c in YANGIAN_CONVENTIONS if fus.get(c)]
    good = [c for c in idem if fus.get(c) and fus[c]["equal"]]
    lemma_ok = all(all(v.values()) for v in res["lemma"].values())
    return bool(good) and lemma_ok
