"""Multi-index calculus and the parametric sign factors.

Multi-indices are plain tuples of positive integers; permutations are
one-line tuples ``(sigma_1, ..., sigma_r)`` with 1-based images.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import factorial
from typing import Iterator, Sequence, Tuple, Union

from .scalar import FieldElement, ParameterAssignment, ParametricMatrix

MultiIndex = Tuple[int, ...]
Params = Union[ParameterAssignment, ParametricMatrix]


class MultiIndexError(ValueError):
    pass


def _params(assign: Params, symbol: str) -> ParametricMatrix:
    if isinstance(assign, ParametricMatrix):
        return assign
    return assign.params(symbol)


def is_increasing(I: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(I, I[1:]))


def is_nondecreasing(I: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(I, I[1:]))


def reverse(I: Sequence[int]) -> MultiIndex:
    return tuple(reversed(I))


def ordered(I: Sequence[int]) -> MultiIndex:
    return tuple(sorted(I))


def juxtapose(I: Sequence[int], J: Sequence[int]) -> MultiIndex:
    return tuple(I) + tuple(J)


def complement(I: Sequence[int], K: Sequence[int]) -> MultiIndex:
    """Delete the entries of I from the increasing multi-index K."""
    if not is_increasing(K):
        raise MultiIndexError(f"ambient multi-index {tuple(K)} is not increasing")
    if len(set(I)) != len(I):
        raise MultiIndexError(f"multi-index {tuple(I)} has repeated entries")
    missing = set(I) - set(K)
    if missing:
        raise MultiIndexError(f"{tuple(I)} is not contained in {tuple(K)}")
    drop = set(I)
    return tuple(k for k in K if k not in drop)


def is_permutation(sigma: Sequence[int]) -> bool:
    return sorted(sigma) == list(range(1, len(sigma) + 1))


def _check_perm(sigma: Sequence[int]) -> None:
    if not is_permutation(sigma):
        raise MultiIndexError(f"{tuple(sigma)} is not a permutation")


def _check_range(P: ParametricMatrix, I: Sequence[int]) -> None:
    for i in I:
        if not 1 <= i <= P.n:
            raise IndexError(f"index {i} outside 1..{P.n}")


def inversions(sigma: Sequence[int]) -> Iterator[Tuple[int, int]]:
    """Pairs (s, t), 0-based, with s < t and sigma_s > sigma_t."""
    r = len(sigma)
    for s in range(r):
        for t in range(s + 1, r):
            if sigma[s] > sigma[t]:
                yield s, t


def permutations_of(r: int) -> Iterator[Tuple[int, ...]]:
    return permutations(range(1, r + 1))


def sign(sigma: Sequence[int]) -> int:
    return -1 if sum(1 for _ in inversions(sigma)) % 2 else 1


def eps_index(assign: Params, I: Sequence[int], symbol: str = "q") -> FieldElement:
    """Zero on repeated entries, else the product of (-q_{i_s i_t}) over inversions."""
    P = _params(assign, symbol)
    _check_range(P, I)
    f = P.field
    if len(set(I)) != len(I):
        return FieldElement(f.zero, f)
    acc = f.one
    for s in range(len(I)):
        for t in range(s + 1, len(I)):
            if I[s] > I[t]:
                acc = f.norm(-acc * P.raw(I[s], I[t]))
    return FieldElement(acc, f)


def eps_perm(assign: Params, I: Sequence[int], sigma: Sequence[int], symbol: str = "q",
             require_increasing: bool = True) -> FieldElement:
    """Product of (-q_{i_{sigma_s} i_{sigma_t}}) over the inversions of sigma; I increasing.

    ``require_increasing=False`` evaluates the same product for any I.
    """
    P = _params(assign, symbol)
    if require_increasing and not is_increasing(I):
        raise MultiIndexError(f"eps_perm needs an increasing multi-index, got {tuple(I)}")
    _check_perm(sigma)
    if len(sigma) != len(I):
        raise MultiIndexError("permutation length differs from the multi-index length")
    _check_range(P, I)
    f = P.field
    acc = f.one
    for s, t in inversions(sigma):
        acc = f.norm(-acc * P.raw(I[sigma[s] - 1], I[sigma[t] - 1]))
    return FieldElement(acc, f)


def mu_perm(assign: Params, J: Sequence[int], sigma: Sequence[int], symbol: str = "p") -> FieldElement:
    """Product of p_{j_{sigma_t} j_{sigma_s}} over the inversions of sigma (no signs)."""
    P = _params(assign, symbol)
    _check_perm(sigma)
    if len(sigma) != len(J):
        raise MultiIndexError("permutation length differs from the multi-index length")
    _check_range(P, J)
    f = P.field
    acc = f.one
    for s, t in inversions(sigma):
        acc = f.norm(acc * P.raw(J[sigma[t] - 1], J[sigma[s] - 1]))
    return FieldElement(acc, f)


def sorting_permutation(I: Sequence[int]) -> Tuple[int, ...]:
    """sigma with I = (I^or_{sigma_1}, ..., I^or_{sigma_r}) for repeat-free I."""
    o = ordered(I)
    pos = {v: k + 1 for k, v in enumerate(o)}
    return tuple(pos[i] for i in I)


def multiplicity_factorial(J: Sequence[int]) -> int:
    """v(alpha_J): product of factorials of the multiplicities of the entries of J."""
    out = 1
    for v in set(J):
        out *= factorial(list(J).count(v))
    return out


def increasing_subsets(K: Sequence[int], r: int) -> Iterator[MultiIndex]:
    return combinations(tuple(K), r)


def nondecreasing_indices(n: int, r: int) -> Iterator[MultiIndex]:
    from itertools import combinations_with_replacement
    return combinations_with_replacement(range(1, n + 1), r)
