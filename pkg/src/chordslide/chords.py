"""
Linear chord diagrams dual to polygon domains.

Slot i on the core is the dual of polygon side i; the chord joining slots i
and j is the dual of the arc whose two copies are sides i and j.  The tail
sits at the left end of the core, next to slot 1, where the boundary side
c_0 meets c_1.

A chord slide moves one endpoint along a neighbouring chord:

* toward the tail from slot i+1, along the chord ending at slot i, is the
  triangle move (i, FIRST);
* away from the tail from slot i, along the chord ending at slot i+1, is
  (i, SECOND).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from xml.sax.saxutils import escape

from .domain import PolygonDomain, check, standard_domain, vertex_classes
from .errors import InvalidDomain, InvalidSlide, UsageError
from .moves import D as DIAG, DBAR, FIRST, SECOND, TriangleCSMove, _move_origin, apply_move
from .words import GenusContext, multiply


class Direction(str, Enum):
    TOWARD_TAIL = "toward-tail"
    AWAY_FROM_TAIL = "away-from-tail"


TOWARD_TAIL = Direction.TOWARD_TAIL
AWAY_FROM_TAIL = Direction.AWAY_FROM_TAIL


@dataclass(frozen=True)
class ChordDiagram:
    ctx: GenusContext
    pairing: tuple          # pairing[s - 1] is the other end of the chord at slot s
    labels: tuple = None    # optional side labels, one Word per slot

    @property
    def n(self) -> int:
        return len(self.pairing)

    @property
    def n_slots(self) -> int:
        return len(self.pairing)

    def partner(self, s: int) -> int:
        return self.pairing[s - 1]

    def chords(self):
        """Chords as (s, t) with s < t, ordered by s."""
        return [(s, t) for s, t in enumerate(self.pairing, 1) if s < t]

    def label(self, s: int):
        return None if self.labels is None else self.labels[s - 1]


def validate_diagram(D: ChordDiagram):
    bad = []
    n = D.ctx.rank
    if len(D.pairing) != n:
        return ["expected %d slots, found %d" % (n, len(D.pairing))]
    for s in range(1, n + 1):
        t = D.partner(s)
        if not 1 <= t <= n or t == s or D.partner(t) != s:
            return ["pairing is not a fixed-point-free involution at slot %d" % s]
        if abs(t - s) == 1:
            bad.append("slots %d and %d are joined by a chord" % (s, t))
    if vertex_classes(D.pairing) != 1:
        bad.append("chords do not close up to a one-vertex surface")
    if D.labels is not None:
        if len(D.labels) != n:
            bad.append("expected %d labels" % n)
        else:
            for s, t in D.chords():
                if D.label(t) != ~D.label(s):
                    bad.append("slots %d and %d do not carry inverse labels" % (s, t))
            if multiply(*D.labels) != D.ctx.boundary_inverse:
                bad.append("labels do not multiply to the inverse boundary word")
    return bad


def check_diagram(D: ChordDiagram) -> ChordDiagram:
    bad = validate_diagram(D)
    if bad:
        raise InvalidDomain(bad)
    return D


def to_chord_diagram(P: PolygonDomain) -> ChordDiagram:
    check(P)
    return ChordDiagram(P.ctx, P.pairing, P.sides)


def from_chord_diagram(D: ChordDiagram) -> PolygonDomain:
    if D.labels is None:
        raise InvalidDomain(["an unlabelled diagram does not determine a polygon domain"])
    return check(PolygonDomain(D.ctx, D.labels, D.pairing))


def slide_move(D: ChordDiagram, slot: int, direction: Direction) -> TriangleCSMove:
    """The triangle move dual to sliding the endpoint at ``slot``."""
    direction = Direction(direction)
    n = D.n
    if not 1 <= slot <= n:
        raise InvalidSlide("slot %d outside 1..%d" % (slot, n))
    if direction is TOWARD_TAIL:
        if slot == 1:
            raise InvalidSlide("slot 1 has no neighbour toward the tail")
        if D.partner(slot - 1) == slot:
            raise InvalidSlide("slots %d and %d belong to the same chord" % (slot - 1, slot))
        return TriangleCSMove(slot - 1, FIRST)
    if slot == n:
        raise InvalidSlide("slot %d has no neighbour away from the tail" % n)
    if D.partner(slot + 1) == slot:
        raise InvalidSlide("slots %d and %d belong to the same chord" % (slot, slot + 1))
    return TriangleCSMove(slot, SECOND)


def move_slide(m: TriangleCSMove):
    """Inverse dictionary: (slot, direction) for a triangle move."""
    if m.attach is FIRST:
        return m.i + 1, TOWARD_TAIL
    return m.i, AWAY_FROM_TAIL


def chord_slide(D: ChordDiagram, slot: int, direction: Direction) -> ChordDiagram:
    m = slide_move(D, slot, direction)
    if D.labels is not None:
        return to_chord_diagram(apply_move(from_chord_diagram(D), m))
    # the slid endpoint lands beside the far end of the chord it follows
    origin = _move_origin(D, m)
    newpos = {o: k for k, o in enumerate(origin, 1)}
    pairing = []
    twin = {DIAG: DBAR, DBAR: DIAG}
    for o in origin:
        if o in twin:
            pairing.append(newpos[twin[o]])
        else:
            pairing.append(newpos[D.partner(o)])
    return check_diagram(ChordDiagram(D.ctx, tuple(pairing)))


# rendering ----------------------------------------------------------------

FORMATS = ("ascii", "dot", "svg")


def render(D: ChordDiagram, fmt: str) -> str:
    if not fmt:
        raise UsageError("a render format is required (one of %s)" % ", ".join(FORMATS))
    if fmt not in FORMATS:
        raise UsageError("unknown render format %r (expected one of %s)" % (fmt, ", ".join(FORMATS)))
    return {"ascii": render_ascii, "dot": render_dot, "svg": render_svg}[fmt](D)


def _ordered_chords(D: ChordDiagram):
    # short chords sit low, ties broken by the left end
    return sorted(D.chords(), key=lambda c: (c[1] - c[0], c[0]))


def render_ascii(D: ChordDiagram) -> str:
    step = 4
    width = step * D.n + 2
    chords = _ordered_chords(D)
    rows = [[" "] * width for _ in chords]
    for level, (s, t) in enumerate(chords):
        x0, x1 = step * s, step * t
        row = rows[level]
        for x in range(x0 + 1, x1):
            if row[x] == " ":
                row[x] = "-"
        row[x0] = row[x1] = "+"
        for below in rows[:level]:
            below[x0] = below[x1] = "|"
    lines = ["".join(r).rstrip() for r in reversed(rows)]
    core = ["="] * width
    core[0] = "@"
    for s in range(1, D.n + 1):
        core[step * s] = "o"
    lines.append("".join(core))
    nums = [" "] * (width + 3)
    for s in range(1, D.n + 1):
        text = str(s)
        x = step * s - (len(text) - 1) // 2
        nums[x:x + len(text)] = text
    lines.append("".join(nums).rstrip())
    if D.labels is not None:
        for s in range(1, D.n + 1):
            lines.append("%3d: %s" % (s, D.ctx.format(D.label(s))))
    lines.append("@ = tail;  chords: " + ", ".join("%d-%d" % c for c in D.chords()))
    return "\n".join(lines) + "\n"


def render_dot(D: ChordDiagram) -> str:
    """The dual fatgraph: a rose with one petal per chord and the tail."""
    out = ["graph fatgraph {"]
    out.append("  // half-edges at v in cyclic order: tail, slots 1..%d" % D.n)
    out.append('  v [shape=point, xlabel="v"];')
    out.append('  tail [shape=plaintext, label="tail"];')
    out.append('  v -- tail [label="c0", headport=s];')
    for s, t in D.chords():
        label = "%d-%d" % (s, t)
        if D.labels is not None:
            label += ": " + D.ctx.format(D.label(s))
        out.append('  v -- v [label="%s", taillabel="%d", headlabel="%d"];' % (label, s, t))
    out.append("}")
    return "\n".join(out) + "\n"


def render_svg(D: ChordDiagram) -> str:
    step = 40
    margin = 30
    n = D.n
    span = max(t - s for s, t in D.chords())
    height = margin * 2 + step * span // 2 + 20
    width = margin * 2 + step * (n + 1)
    base = height - margin
    x = [margin + step * s for s in range(n + 1)]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d">' % (width, height),
        '  <line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black" stroke-width="2"/>'
        % (x[0], base, x[n] + step // 2, base),
        '  <circle cx="%d" cy="%d" r="5" fill="black"/>' % (x[0], base),
        '  <text x="%d" y="%d" font-size="10" text-anchor="middle">tail</text>' % (x[0], base + 16),
    ]
    for s, t in D.chords():
        r = (x[t] - x[s]) / 2
        title = "%d-%d" % (s, t)
        if D.labels is not None:
            title += ": " + D.ctx.format(D.label(s))
        out.append('  <path d="M %d %d A %g %g 0 0 1 %d %d" fill="none" stroke="steelblue">'
                   '<title>%s</title></path>' % (x[s], base, r, r, x[t], base, escape(title)))
    for s in range(1, n + 1):
        out.append('  <text x="%d" y="%d" font-size="10" text-anchor="middle">%d</text>'
                   % (x[s], base + 16, s))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def standard_diagram(ctx: GenusContext) -> ChordDiagram:
    return to_chord_diagram(standard_domain(ctx))


def diagram_to_json(D: ChordDiagram) -> dict:
    out = {"genus": D.ctx.g, "chords": [[s, t] for s, t in D.chords()]}
    if D.labels is not None:
        out["labels"] = [D.ctx.format(w) for w in D.labels]
    return out
