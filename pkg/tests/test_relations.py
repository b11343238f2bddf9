import json

import pytest
from hypothesis import given, settings, strategies as st

from chordslide.corpus import random_domain, rng_for
from chordslide.domain import standard_domain
from chordslide.errors import InapplicableMove, PreconditionViolation, SearchBudgetExceeded
from chordslide.moves import FIRST, SECOND, TriangleCSMove, apply_move, enumerate_moves, invert_move
from chordslide.relations import (COMMUTATION, INVOLUTION, PENTAGON, TRIANGLE, UNCLASSIFIED,
                                  check_loop, classify_loop, commuting_pair, commuting_square, decompose_loop,
                                  find_loops, loop_census, loop_findings, triangle_relation)
from chordslide.words import GenusContext

from golden_files import check_golden

G1 = GenusContext(1)
S1 = standard_domain(G1)
S2 = standard_domain(GenusContext(2))


def test_check_loop_basics():
    assert check_loop(S1, [])
    for m in enumerate_moves(S1):
        assert check_loop(S1, [m, invert_move(S1, m)])
        assert not check_loop(S1, [m])


def test_check_loop_reports_prefix():
    with pytest.raises(InapplicableMove) as info:
        check_loop(S1, [TriangleCSMove(1, FIRST), TriangleCSMove(9, FIRST)])
    assert info.value.prefix_length == 1


@pytest.mark.parametrize("i", [1, 2, 3])
def test_triangle_relation_g1(i):
    moves = triangle_relation(S1, i)
    assert len(moves) == 3 and check_loop(S1, moves)
    assert classify_loop(S1, moves) == TRIANGLE


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6), st.data())
def test_triangle_relation_random_g2(seed, data):
    P = random_domain(2, seed)
    i = data.draw(st.integers(1, P.n - 1))
    assert check_loop(P, triangle_relation(P, i))


def test_commuting_pair_example():
    assert commuting_pair(S2, TriangleCSMove(1, FIRST), TriangleCSMove(5, FIRST))


def test_commuting_pair_overlap_is_a_precondition_violation():
    with pytest.raises(PreconditionViolation):
        commuting_pair(S2, TriangleCSMove(1, FIRST), TriangleCSMove(2, FIRST))


def random_disjoint_pairs(count, seed):
    rng = rng_for(seed)
    out = []
    while len(out) < count:
        g = int(rng.integers(2, 4))
        P = random_domain(g, int(rng.integers(10 ** 6)))
        moves = enumerate_moves(P)
        a = moves[int(rng.integers(len(moves)))]
        b = moves[int(rng.integers(len(moves)))]
        try:
            commuting_pair(P, a, b)
        except PreconditionViolation:
            continue
        out.append((P, a, b))
    return out


def test_random_disjoint_pairs_commute():
    for P, a, b in random_disjoint_pairs(100, 17):
        assert commuting_pair(P, a, b)


def test_commutation_square_is_classified():
    a, b = TriangleCSMove(1, FIRST), TriangleCSMove(5, FIRST)
    b2, a2, R1, R2 = commuting_square(S2, a, b)
    assert R1 == R2
    Qb = apply_move(S2, b)
    loop = [a, b2, invert_move(Qb, a2), invert_move(S2, b)]
    assert check_loop(S2, loop)
    assert classify_loop(S2, loop) == COMMUTATION


def test_find_loops_length_two():
    loops = find_loops(S1, 2)
    assert len(loops) == 6
    assert all(l.classification == INVOLUTION and check_loop(S1, l.moves) for l in loops)


def test_find_loops_contains_triangles():
    loops = find_loops(S1, 3)
    found = {l.moves for l in loops}
    for i in (1, 2, 3):
        assert tuple(triangle_relation(S1, i)) in found


def test_find_loops_guard():
    with pytest.raises(SearchBudgetExceeded):
        find_loops(S1, 7)
    with pytest.raises(SearchBudgetExceeded):
        find_loops(S2, 6)
    with pytest.raises(SearchBudgetExceeded):
        find_loops(S1, 6, budget=100)


def test_census_g1_length_five():
    loops = find_loops(S1, 5)
    assert all(check_loop(S1, l.moves) for l in loops)
    census = loop_census(loops)
    assert census["counts"][PENTAGON] > 0
    assert all(len(l) == 5 for l in loops if l.classification == PENTAGON)
    check_golden("census_g1_len5.json", json.dumps(census, indent=2, sort_keys=True) + "\n")


def test_census_g1_length_four_findings():
    # the census is checked, not assumed: unclassified short loops are findings
    loops = find_loops(S1, 4)
    findings = loop_findings(loops)
    for l in findings:
        assert l.classification == UNCLASSIFIED and decompose_loop(S1, l.moves) is None
    assert {l.classification for l in loops if len(l) <= 3} == {INVOLUTION, TRIANGLE}


def test_find_loops_is_deterministic():
    assert [l.moves for l in find_loops(S1, 4)] == [l.moves for l in find_loops(S1, 4)]


def test_decompose_pentagon_free_composite():
    # a triangle loop conjugated by a move splits into I and T pieces
    m = TriangleCSMove(1, SECOND)
    P = apply_move(S1, m)
    inner = triangle_relation(P, 2)
    loop = [m] + inner + [invert_move(S1, m)]
    assert check_loop(S1, loop)
    parts = decompose_loop(S1, loop)
    assert parts is not None
    assert sorted(c for _, _, c in parts) == [INVOLUTION, TRIANGLE]
