import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings, strategies as st

from chordslide.chords import (AWAY_FROM_TAIL, TOWARD_TAIL, ChordDiagram, chord_slide,
                               from_chord_diagram, move_slide, render, slide_move, to_chord_diagram,
                               validate_diagram)
from chordslide.domain import standard_domain
from chordslide.errors import InvalidSlide, UsageError
from chordslide.moves import FIRST, TriangleCSMove, apply_move, enumerate_moves, invert_move
from chordslide.words import GenusContext

from golden_files import check_golden
from test_domain import TWIST, corpus_domain

G1 = GenusContext(1)
S1 = standard_domain(G1)


def test_standard_diagram_g1():
    D = to_chord_diagram(S1)
    assert D.n_slots == 4
    assert D.chords() == [(1, 3), (2, 4)]
    assert validate_diagram(D) == []


def test_twisted_diagram():
    D = to_chord_diagram(TWIST)
    assert D.chords() == [(1, 3), (2, 4)]
    assert [G1.format(w) for w in D.labels] == ["b1 a1", "a1", "A1 B1", "A1"]
    assert from_chord_diagram(D) == TWIST


@given(corpus_domain())
def test_roundtrip(P):
    assert from_chord_diagram(to_chord_diagram(P)) == P


def test_slide_example():
    D = to_chord_diagram(S1)
    assert chord_slide(D, 2, TOWARD_TAIL) == to_chord_diagram(apply_move(S1, TriangleCSMove(1, FIRST)))


def test_slide_moves_are_a_bijection_g1():
    D = to_chord_diagram(S1)
    slides = [(s, d) for s in range(1, 5) for d in (TOWARD_TAIL, AWAY_FROM_TAIL)]
    images = {}
    for s, d in slides:
        try:
            images[(s, d)] = chord_slide(D, s, d)
        except InvalidSlide:
            continue
    assert len(images) == 6
    moved = {to_chord_diagram(apply_move(S1, m)) for m in enumerate_moves(S1)}
    assert set(images.values()) == moved
    assert {slide_move(D, s, d) for s, d in images} == set(enumerate_moves(S1))


def test_invalid_slides():
    D = to_chord_diagram(S1)
    with pytest.raises(InvalidSlide):
        chord_slide(D, 1, TOWARD_TAIL)
    with pytest.raises(InvalidSlide):
        chord_slide(D, 4, AWAY_FROM_TAIL)


@settings(max_examples=60)
@given(corpus_domain(), st.data())
def test_square_commutes(P, data):
    D = to_chord_diagram(P)
    bare = ChordDiagram(P.ctx, P.pairing)
    for m in enumerate_moves(P):
        slot, direction = move_slide(m)
        Q = apply_move(P, m)
        assert chord_slide(D, slot, direction) == to_chord_diagram(Q)
        assert chord_slide(bare, slot, direction).pairing == Q.pairing
    m = data.draw(st.sampled_from(enumerate_moves(P)))
    slot, direction = move_slide(m)
    E = chord_slide(D, slot, direction)
    back_slot, back_dir = move_slide(invert_move(P, m))
    assert chord_slide(E, back_slot, back_dir) == D


def test_render_ascii_golden():
    check_golden("ascii_g1_standard.txt", render(to_chord_diagram(S1), "ascii"))


def test_render_is_deterministic():
    D = to_chord_diagram(standard_domain(GenusContext(2)))
    for fmt in ("ascii", "dot", "svg"):
        assert render(D, fmt) == render(D, fmt)


def test_render_usage_errors():
    D = to_chord_diagram(S1)
    with pytest.raises(UsageError):
        render(D, "")
    with pytest.raises(UsageError):
        render(D, "png")


@pytest.mark.parametrize("g", [1, 2, 3])
def test_svg_structure(g):
    svg = render(to_chord_diagram(standard_domain(GenusContext(g))), "svg")
    root = ET.fromstring(svg)
    paths = root.findall("{http://www.w3.org/2000/svg}path")
    assert len(paths) == 2 * g


def test_dot_mentions_every_chord():
    text = render(to_chord_diagram(TWIST), "dot")
    assert text.startswith("graph fatgraph {")
    assert text.count("v -- v") == 2 and "tail" in text
