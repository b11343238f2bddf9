import numpy as np
import pytest
from hypothesis import given, strategies as st

from chordslide.corpus import random_domain, random_walk, rng_for
from chordslide.domain import canonical_arc, standard_domain, validate
from chordslide.errors import InvalidMove, InvalidSpan
from chordslide.moves import (FIRST, SECOND, CSPath, TriangleCSMove, apply_move, cut_slide_direct,
                              enumerate_moves, general_cut_slide, induced_substitution, invert_move,
                              invert_move_search, parse_move, path_from_json, path_to_json)
from chordslide.words import GenusContext

import oracles
from test_domain import TWIST, corpus_domain

G1 = GenusContext(1)
S1 = standard_domain(G1)


def names(P):
    return [P.ctx.format(c) for c in P.sides]


@st.composite
def domain_and_move(draw, genera=(1, 2, 3)):
    P = draw(corpus_domain(genera))
    moves = enumerate_moves(P)
    return P, moves[draw(st.integers(0, len(moves) - 1))]


def test_apply_move_examples():
    Q = apply_move(S1, TriangleCSMove(1, FIRST))
    assert names(Q) == ["b1 a1", "a1", "A1 B1", "A1"]
    assert Q.pairs() == [(1, 3), (2, 4)]
    R = apply_move(S1, TriangleCSMove(2, FIRST))
    assert names(R) == ["b1", "a1 B1", "B1", "b1 A1"]
    assert R.pairs() == [(1, 3), (2, 4)]
    assert apply_move(TWIST, TriangleCSMove(2, SECOND)) == S1


def test_move_range():
    with pytest.raises(InvalidMove):
        apply_move(S1, TriangleCSMove(4, FIRST))
    with pytest.raises(InvalidMove):
        apply_move(S1, TriangleCSMove(0, SECOND))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_enumerate_moves_count_and_validity(g):
    P = standard_domain(GenusContext(g))
    moves = enumerate_moves(P)
    assert len(moves) == 2 * (4 * g - 1)
    for m in moves:
        assert validate(apply_move(P, m)).ok


@given(domain_and_move())
def test_move_preserves_invariants(case):
    P, m = case
    Q = apply_move(P, m)
    report = validate(Q)
    assert report.ok, report.violations
    texts = names(Q)
    assert oracles.word_product(*texts) == " ".join(oracles.sigma_tokens(P.g))


@given(domain_and_move())
def test_move_changes_exactly_one_arc(case):
    # independent oracle on the arc set: the cut arc is swapped for the diagonal
    P, m = case
    Q = apply_move(P, m)
    u, v = names(P)[m.i - 1], names(P)[m.i]
    d = oracles.word_product(u, v)
    removed = u if m.attach is FIRST else v
    want = {oracles.canonical(P.ctx.format(a)) for a in P.arc_set()}
    want.discard(oracles.canonical(removed))
    want.add(oracles.canonical(d))
    assert {oracles.canonical(Q.ctx.format(a)) for a in Q.arc_set()} == want
    assert Q.length() - P.length() == 2 * (len(d.split()) - len(removed.split()))


@given(st.integers(0, 10 ** 6), st.integers(0, 12))
def test_move_result_is_the_unique_domain_on_its_arcs_g1(seed, steps):
    # brute force: at genus one the arcs determine the domain
    P = random_walk(S1, steps, seed)[0]
    for m in enumerate_moves(P):
        Q = apply_move(P, m)
        arcs = [Q.ctx.format(a) for a in Q.arc_set()]
        found = oracles.domains_with_arcs(1, arcs)
        assert found == [(tuple(names(Q)), Q.pairing)]


def test_move_result_is_unique_on_its_arcs_g2():
    P = random_domain(2, 11)
    for m in enumerate_moves(P)[::3]:
        Q = apply_move(P, m)
        found = oracles.domains_with_arcs(2, [Q.ctx.format(a) for a in Q.arc_set()])
        assert found == [(tuple(names(Q)), Q.pairing)]


def test_invert_move_examples():
    m = TriangleCSMove(1, FIRST)
    Q = apply_move(S1, m)
    assert invert_move(S1, m) == TriangleCSMove(2, SECOND)
    assert apply_move(Q, invert_move(S1, m)) == S1
    for m in enumerate_moves(S1):
        back = invert_move(S1, m)
        assert apply_move(apply_move(S1, m), back) == S1
        # inverting the inverse has the same effect as m
        assert apply_move(S1, invert_move(apply_move(S1, m), back)) == apply_move(S1, m)


@given(domain_and_move())
def test_invert_move_closed_form_matches_search(case):
    P, m = case
    back = invert_move(P, m)
    Q = apply_move(P, m)
    assert apply_move(Q, back) == P
    assert apply_move(Q, invert_move_search(P, m)) == P


def test_parse_move():
    assert parse_move("cs(3, second)") == TriangleCSMove(3, SECOND)
    assert str(TriangleCSMove(1, FIRST)) == "cs(1, first)"
    with pytest.raises(ValueError):
        parse_move("cs(3, third)")


# Nielsen steps ------------------------------------------------------------

def test_nielsen_examples():
    st1 = induced_substitution(S1, TriangleCSMove(1, FIRST))
    assert G1.format(st1.removed) == "b1" and G1.format(st1.added) == "b1 a1"
    assert st1.forward.images == ((1, 2), (2,))
    st2 = induced_substitution(TWIST, TriangleCSMove(2, SECOND))
    assert G1.format(st2.removed) == "b1 a1" and G1.format(st2.added) == "b1"
    assert st2.forward.images == ((1, -2), (2,))
    assert st2.describe() == "x1 -> x1x2^-1"


@given(domain_and_move())
def test_nielsen_step_changes_basis(case):
    P, m = case
    Q = apply_move(P, m)
    step = induced_substitution(P, m)
    old, new = P.cg_set().arcs, Q.cg_set().arcs
    assert step.forward.evaluate(old) == new
    assert step.backward.evaluate(new) == old
    # elementary: the abelianized change of basis is a transvection up to signs
    mat = np.array(step.forward.abelian_matrix())
    assert abs(round(np.linalg.det(mat))) == 1
    off = [(r, c) for r in range(len(mat)) for c in range(len(mat)) if mat[r, c] != 0]
    assert len(off) == len(mat) + 1


@given(corpus_domain((1, 2)), st.integers(0, 10 ** 6))
def test_path_total_backward(P, seed):
    Q, path = random_walk(P, 8, seed)
    total = path.total_backward()
    assert total.evaluate(Q.cg_set().arcs) == P.cg_set().arcs


def test_path_reverse_and_json():
    Q, path = random_walk(standard_domain(GenusContext(2)), 20, 5)
    back = path.reversed()
    assert back.base == Q and back.final() == path.base
    assert path_from_json(path_to_json(path)) == path
    assert (path + back).final() == path.base


# general cut-slides -------------------------------------------------------

def test_cut_slide_span_two_is_a_triangle_move():
    for m in enumerate_moves(S1):
        target, moves = general_cut_slide(S1, m.i, m.i + 1, m.attach)
        assert moves == [m] and target == apply_move(S1, m)


def test_cut_slide_g1_longer_spans_are_degenerate():
    # at genus one the pairing is always 1-3, 2-4, so every span of three or
    # more sides contains the partner it would be glued to
    for P in [S1] + [apply_move(S1, m) for m in enumerate_moves(S1)]:
        assert P.pairing == (3, 4, 1, 2)
        for i, j in ((1, 3), (2, 4), (1, 4)):
            for attach in (FIRST, SECOND):
                with pytest.raises(InvalidSpan):
                    general_cut_slide(P, i, j, attach)


def test_cut_slide_g2_span_three():
    S2 = standard_domain(GenusContext(2))
    for attach in (FIRST, SECOND):
        target, moves = general_cut_slide(S2, 3, 5, attach)
        assert len(moves) == 2
        assert CSPath(S2, tuple(moves)).final() == target
        assert S2.ctx.parse("B2 A2 b1") in target.sides


def test_cut_slide_bad_spans():
    with pytest.raises(InvalidSpan):
        cut_slide_direct(S1, 3, 2, FIRST)
    with pytest.raises(InvalidSpan):
        cut_slide_direct(S1, 1, 3, SECOND)    # partner of side 3 is side 1


def test_cut_slide_random_g2():
    checked = 0
    rng = rng_for(99)
    while checked < 100:
        P = random_domain(2, int(rng.integers(10 ** 6)))
        i = int(rng.integers(1, P.n))
        j = int(rng.integers(i + 1, P.n + 1))
        attach = FIRST if rng.integers(2) == 0 else SECOND
        try:
            target, moves = general_cut_slide(P, i, j, attach)
        except InvalidSpan:
            continue
        assert CSPath(P, tuple(moves)).final() == target
        assert validate(target).ok
        d = P.side(i)
        for k in range(i + 1, j + 1):
            d = d * P.side(k)
        assert canonical_arc(d) in target.arc_set()
        checked += 1
