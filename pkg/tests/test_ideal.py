from __future__ import annotations

import random
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from manincheck.freealg import Gen, NCPoly
from manincheck.ideal import (
    GuardExceeded, RelationError, RelationSet, capelli_relations, count_words, degree_component, is_member,
    manin_relations, normal_form, relations_from_idempotent,
)
from manincheck.scalar import QQ, assignment_from_values, make_parameter_assignment
from manincheck.tensor import ScalarMatrix, projector

A22 = assignment_from_values({(1, 2): 3}, {(1, 2): 5}, 2, 2, QQ)


def gen(i, j, fam="M"):
    return NCPoly.gen(fam, i, j, field=QQ)


def oracle_span(rels: RelationSet, d: int):
    """Brute-force: every word * relation * word of total weight d, as sympy rows."""
    letters = rels.letters()
    words = [w for k in range(d + 1) for w in product(letters, repeat=k)]
    cols = sorted({w for w in product(letters, repeat=d)})
    index = {w: i for i, w in enumerate(cols)}
    rows = []
    for r in rels.relations:
        rw = len(next(iter(r.terms)))
        for left in range(d - rw + 1):
            for pre in product(letters, repeat=left):
                for post in product(letters, repeat=d - rw - left):
                    row = [0] * len(cols)
                    for t, c in r.terms.items():
                        row[index[pre + t + post]] += c
                    rows.append(row)
    return rows, index


def oracle_member(poly: NCPoly, rels: RelationSet, d: int) -> bool:
    rows, index = oracle_span(rels, d)
    vec = [0] * len(index)
    for w, c in poly.terms.items():
        vec[index[w]] += c
    if not rows:
        return not any(vec)
    base = sympy.Matrix(rows).rank()
    return sympy.Matrix(rows + [vec]).rank() == base


def test_manin_relation_counts():
    assert len(manin_relations(2, 2, A22)) == 3
    assert len(manin_relations(1, 1, make_parameter_assignment(1, 1))) == 0
    assert len(manin_relations(2, 3, make_parameter_assignment(2, 3, seed=1))) == 6
    with pytest.raises(RelationError):
        manin_relations(3, 2, A22)


def test_degree_component_ranks():
    rels = manin_relations(2, 2, A22)
    c2 = degree_component(rels, 2)
    assert (c2.rank, c2.words) == (3, 16)
    c3 = degree_component(rels, 3)
    assert c3.words == 64
    assert c3.rank == sympy.Matrix(oracle_span(rels, 3)[0]).rank()
    assert c3.rank < 64
    assert degree_component(manin_relations(1, 1, make_parameter_assignment(1, 1)), 3).rank == 0


def test_rank_invariant_under_relation_order():
    rels = manin_relations(2, 3, make_parameter_assignment(2, 3, seed=2, field="Q"))
    order = list(range(len(rels.relations)))
    random.Random(0).shuffle(order)
    shuffled = RelationSet(rels.alphabet, rels.field, [rels.relations[i] for i in order],
                           [rels.provenance[i] for i in order])
    assert degree_component(rels, 3).rank == degree_component(shuffled, 3).rank


def test_membership_examples():
    rels = manin_relations(2, 2, A22)
    for r in rels.relations:
        assert is_member(r, rels).member
    assert is_member(NCPoly.zero(QQ), rels).member
    res = is_member(gen(1, 1) * gen(2, 2), rels)
    assert not res.member
    assert res.witness is not None and not res.witness.is_zero()


@given(st.integers(0, 10 ** 6), st.integers(0, 2), st.integers(0, 2))
def test_two_sided_closure(seed, lw, rw):
    rng = random.Random(seed)
    rels = manin_relations(2, 2, A22)
    letters = rels.letters()
    r = rng.choice(rels.relations)
    pre = NCPoly.word([rng.choice(letters) for _ in range(lw)], QQ)
    post = NCPoly.word([rng.choice(letters) for _ in range(rw)], QQ)
    assert is_member(pre * r * post, rels).member


@given(st.dictionaries(st.tuples(*[st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2)])] * 3), st.integers(-3, 3),
                       max_size=4))
def test_membership_matches_brute_force_oracle(coeffs):
    rels = manin_relations(2, 2, A22)
    poly = NCPoly({tuple(Gen("M", *ij) for ij in w): c for w, c in coeffs.items()}, QQ)
    # add a random ideal element so members appear too
    poly = poly + rels.relations[0] * gen(1, 2) * 2
    assert is_member(poly, rels).member == oracle_member(poly, rels, 3)


def test_normal_form_is_zero_exactly_on_members():
    rels = manin_relations(2, 2, A22)
    r = rels.relations[1] * gen(2, 1)
    assert normal_form(r, rels).is_zero()
    assert not normal_form(gen(1, 1) * gen(1, 1), rels).is_zero()


def test_relations_from_idempotent_match_manin_row_space():
    a = make_parameter_assignment(2, 2, "generic", 5, "Q")
    rels = manin_relations(2, 2, a)
    alt = relations_from_idempotent(projector(a, "antisym-q", 2), projector(a, "antisym-p", 2))
    d_rels, d_alt = degree_component(rels, 2), degree_component(alt, 2)
    assert d_rels.basis == d_alt.basis


def test_relations_from_idempotent_trivial_cases():
    a = make_parameter_assignment(2, 2, "generic", 5, "Q")
    zero = ScalarMatrix.zero((2, 2), (2, 2), QQ)
    one = ScalarMatrix.identity((2, 2), QQ)
    assert len(relations_from_idempotent(zero, projector(a, "antisym-p", 2))) == 0
    assert len(relations_from_idempotent(projector(a, "antisym-q", 2), one)) == 0
    with pytest.raises(RelationError):
        relations_from_idempotent(one.scale(QQ(2)), one)


def test_capelli_relations_examples():
    a1 = make_parameter_assignment(1, 1, seed=1, field="Q")
    rels = capelli_relations(1, 1, 1, a1, "det-col")
    expected = gen(1, 1) * gen(1, 1, "N") - gen(1, 1, "N") * gen(1, 1) + gen(1, 1, "H")
    assert rels.relations == [expected]
    a2 = assignment_from_values({(1, 2): 3}, {(1, 2): 7}, 2, 2, QQ)
    rels2 = capelli_relations(2, 2, 2, a2, "det-col")
    target = gen(1, 1) * gen(2, 1) - (gen(2, 1) * gen(1, 1)).scale(QQ(1) / 3)
    assert is_member(target, rels2).member
    cross = gen(1, 1) * gen(2, 1, "N") - gen(2, 1, "N") * gen(1, 1)
    assert any(r == cross for r in rels2.relations)
    with pytest.raises(Exception):
        capelli_relations(2, 2, 2, a2, "nosuch")


def test_relations_must_be_homogeneous():
    with pytest.raises(RelationError):
        RelationSet({"M": (2, 2)}, QQ, [gen(1, 1) * gen(1, 2) + gen(1, 1)], ["manin-column"])


def test_guard_aborts():
    rels = manin_relations(2, 2, A22)
    assert count_words(rels.letters(), 5) == 4 ** 5
    with pytest.raises(GuardExceeded):
        degree_component(rels, 5, guard=100)
    with pytest.raises(GuardExceeded):
        is_member(gen(1, 1) * gen(1, 2) * gen(2, 1) * gen(2, 2) * gen(1, 1), rels, guard=2)
