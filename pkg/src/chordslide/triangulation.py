"""
One-vertex triangulations of S_{g,1} as combinatorial maps.

Every vertex of the triangulation is the base point p on the boundary.  A
face is a clockwise triple of directed arcs ``(arc_id, sign)``; the directed
label is the stored label of the arc (sign +1) or its inverse (sign -1), and
the product of the three directed labels around a face is trivial.  Arc 0
is the boundary; it borders a single face where it is read as the boundary
word.

Arc ids are bookkeeping only: two triangulations compare equal when they
have the same faces as labelled triangles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from scipy.cluster.hierarchy import DisjointSet

from .domain import PolygonDomain, canonical_arc, check
from .errors import (InputError, InternalInvariantViolation, MalformedTriangulation,
                     MultiArcDiscrepancy, NotFlippable, NotPentagonConfiguration)
from .moves import FIRST, SECOND, CSPath, general_cut_slide
from .reduction import connect
from .words import GenusContext, Word

BOUNDARY = 0


class Triangulation:
    """
    ``labels[a]`` is the stored label of arc ``a``; ``faces[f]`` is a triple
    of ``(arc, sign)`` read clockwise.
    """

    __slots__ = ("ctx", "labels", "faces", "__dict__")

    def __init__(self, ctx: GenusContext, labels, faces):
        self.ctx = ctx
        self.labels = tuple(labels)
        self.faces = tuple(tuple(tuple(s) for s in f) for f in faces)

    # structure --------------------------------------------------------------

    def directed(self, side) -> Word:
        a, s = side
        return self.labels[a] if s > 0 else ~self.labels[a]

    def face_labels(self, f: int):
        return tuple(self.directed(s) for s in self.faces[f])

    @cached_property
    def occurrences(self):
        """arc -> list of (face, position) where it appears."""
        occ = {a: [] for a in range(len(self.labels))}
        for f, face in enumerate(self.faces):
            for k, (a, _) in enumerate(face):
                occ.setdefault(a, []).append((f, k))
        return occ

    def twin(self, f: int, k: int):
        a = self.faces[f][k][0]
        for loc in self.occurrences[a]:
            if loc != (f, k):
                return loc
        return None

    def arcs(self):
        """Non-boundary arc ids."""
        return [a for a in range(len(self.labels)) if a != BOUNDARY]

    def faces_of(self, arc: int):
        return [f for f, _ in self.occurrences[arc]]

    @cached_property
    def boundary_side(self):
        occ = self.occurrences[BOUNDARY]
        if len(occ) != 1:
            raise MalformedTriangulation("boundary arc must border exactly one face")
        return occ[0]

    @cached_property
    def corner_walk(self):
        """
        Corners at p in clockwise order, starting with the corner after the
        boundary.  Returns (corners, crossings) where crossings[t] is the arc
        crossed between corners[t] and corners[t+1].  Corner (f, k) sits
        between sides k and k+1 of face f.
        """
        f, k = self.boundary_side
        corners = [(f, k)]
        crossings = []
        limit = 3 * len(self.faces)
        while True:
            out = (k + 1) % 3
            a = self.faces[f][out][0]
            if a == BOUNDARY:
                break
            nxt = self.twin(f, out)
            if nxt is None or len(corners) > limit:
                raise MalformedTriangulation("corner walk at p does not close up")
            crossings.append(a)
            f, k = nxt
            corners.append((f, k))
        return corners, crossings

    @cached_property
    def corner_position(self):
        corners, _ = self.corner_walk
        return {c: t for t, c in enumerate(corners)}

    def first_appearance(self):
        """Non-boundary arcs ordered by first appearance at p, with positions."""
        _, crossings = self.corner_walk
        seen = {}
        for t, a in enumerate(crossings):
            if a not in seen:
                seen[a] = t
        return sorted(seen.items(), key=lambda item: item[1])

    # comparison -------------------------------------------------------------

    def key(self):
        faces = []
        for f in range(len(self.faces)):
            labs = tuple(bytes(w) for w in self.face_labels(f))
            faces.append(min(labs[r:] + labs[:r] for r in range(3)))
        return (self.ctx.g, frozenset(faces))

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        fmt = self.ctx.format
        return "Triangulation(g=%d, faces=%s)" % (
            self.ctx.g, ["(" + ", ".join(fmt(w) for w in self.face_labels(f)) + ")"
                         for f in range(len(self.faces))])

    def arc_id(self, label: Word) -> int:
        """Id of the arc carrying ``label`` in either orientation."""
        for a, w in enumerate(self.labels):
            if w == label or w == ~label:
                return a
        raise KeyError(self.ctx.format(label))


def validate_triangulation(T: Triangulation):
    """Return the list of violated invariants (empty when valid)."""
    bad = []
    g = T.ctx.g
    if len(T.labels) != 6 * g - 1:
        bad.append("expected %d arcs, found %d" % (6 * g - 1, len(T.labels)))
    if len(T.faces) != 4 * g - 1:
        bad.append("expected %d faces, found %d" % (4 * g - 1, len(T.faces)))
    if bad:
        return bad
    if T.labels[BOUNDARY] != T.ctx.boundary:
        bad.append("arc 0 must carry the boundary word")
    for face in T.faces:
        if len(face) != 3:
            bad.append("face %r is not a triangle" % (face,))
            return bad
    for a, occ in T.occurrences.items():
        want = 1 if a == BOUNDARY else 2
        if len(occ) != want:
            bad.append("arc %d borders %d face sides, expected %d" % (a, len(occ), want))
            continue
        signs = [T.faces[f][k][1] for f, k in occ]
        if a == BOUNDARY and signs != [1]:
            bad.append("boundary arc must be read positively")
        if a != BOUNDARY:
            if sorted(signs) != [-1, 1]:
                bad.append("arc %d is not traversed oppositely by its two sides" % a)
            if occ[0][0] == occ[1][0]:
                bad.append("arc %d borders the same face twice" % a)
        if T.labels[a].is_identity():
            bad.append("arc %d has the identity label" % a)
    if bad:
        return bad
    for f in range(len(T.faces)):
        x, y, z = T.face_labels(f)
        if not (x * y * z).is_identity():
            bad.append("face %d violates vertex compatibility" % f)
    try:
        corners, _ = T.corner_walk
    except MalformedTriangulation as exc:
        bad.append(str(exc))
    else:
        if len(corners) != 3 * len(T.faces):
            bad.append("corners at p do not form a single cycle")
    return bad


def check_triangulation(T: Triangulation) -> Triangulation:
    bad = validate_triangulation(T)
    if bad:
        raise MalformedTriangulation("; ".join(bad))
    return T


def _arc_entry(label: Word):
    stored = canonical_arc(label)
    return stored, (1 if stored == label else -1)


def fan_triangulate(P: PolygonDomain) -> Triangulation:
    """
    Triangulate P by the diagonals delta_k = c_1 .. c_k (k = 2..4g-1) issuing
    from the corner between the boundary and c_1.
    """
    check(P)
    ctx = P.ctx
    n = P.n
    labels = [ctx.boundary]
    side = {}
    for i, j in P.pairs():
        stored, s = _arc_entry(P.side(i))
        side[i] = (len(labels), s)
        side[j] = (len(labels), -s)
        labels.append(stored)
    delta = {}
    acc = P.side(1)
    for k in range(2, n):
        acc = acc * P.side(k)
        stored, s = _arc_entry(acc)
        delta[k] = (len(labels), s)
        labels.append(stored)

    def inv(x):
        return (x[0], -x[1])

    faces = [(side[1], side[2], inv(delta[2]))]
    for k in range(2, n - 1):
        faces.append((delta[k], side[k + 1], inv(delta[k + 1])))
    faces.append((delta[n - 1], side[n], (BOUNDARY, 1)))
    return Triangulation(ctx, labels, faces)


def _greedy(T: Triangulation):
    check_triangulation(T)
    ds = DisjointSet(range(len(T.faces)))
    removed = []
    for a, _ in T.first_appearance():
        f1, f2 = T.faces_of(a)
        if not ds.connected(f1, f2):
            ds.merge(f1, f2)
            removed.append(a)
    return removed


def greedy_removed(T: Triangulation) -> frozenset:
    """Arcs removed by the greedy algorithm."""
    return frozenset(_greedy(T))


def greedy_extract(T: Triangulation) -> PolygonDomain:
    """
    Remove arcs in first-appearance order while the complement stays a union
    of disks, then read the remaining polygon clockwise from the boundary.
    """
    removed = set(_greedy(T))
    g = T.ctx.g
    if len(removed) != 4 * g - 2:
        raise MalformedTriangulation("greedy removal took %d arcs, expected %d" % (len(removed), 4 * g - 2))
    f, k = T.boundary_side
    kept = []
    for _ in range(3 * len(T.faces) + 1):
        k = (k + 1) % 3
        a = T.faces[f][k][0]
        if a == BOUNDARY:
            break
        if a in removed:
            f, k = T.twin(f, k)
            continue
        kept.append((f, k))
    else:
        raise MalformedTriangulation("remaining region is not a polygon")
    if len(kept) != 4 * g:
        raise MalformedTriangulation("remaining polygon has %d sides, expected %d" % (len(kept), 4 * g))
    where = {}
    for pos, (f, k) in enumerate(kept, 1):
        where.setdefault(T.faces[f][k][0], []).append(pos)
    pairing = [0] * (4 * g)
    for a, (p, q) in where.items():
        pairing[p - 1], pairing[q - 1] = q, p
    sides = tuple(T.directed(T.faces[f][k]) for f, k in kept)
    P = PolygonDomain(T.ctx, sides, tuple(pairing))
    try:
        return check(P)
    except InputError as exc:
        raise MalformedTriangulation("extracted polygon is invalid: %s" % exc) from exc


def locality_removed(T: Triangulation, arc: int) -> bool:
    """
    Decide locally whether the greedy algorithm removes ``arc``.

    Let tau be the face entered when crossing the arc at its first
    appearance at p, and v the corner of tau opposite the arc.  The arc is
    removed exactly when v comes after that crossing in the clockwise order.
    """
    if arc == BOUNDARY:
        raise InputError("the boundary arc is never removed")
    corners, crossings = T.corner_walk
    t = crossings.index(arc)
    f, j = corners[t + 1]
    v = (f, (j + 1) % 3)
    return T.corner_position[v] > t


def diagonal_exchange(T: Triangulation, arc: int) -> Triangulation:
    if arc == BOUNDARY:
        raise NotFlippable("the boundary arc cannot be exchanged")
    occ = T.occurrences.get(arc, [])
    if len(occ) != 2 or occ[0][0] == occ[1][0]:
        raise NotFlippable("arc %d does not border two distinct faces" % arc)
    (f1, k1), (f2, k2) = occ
    F1, F2 = T.faces[f1], T.faces[f2]
    a, b = F1[(k1 + 1) % 3], F1[(k1 + 2) % 3]
    c, d = F2[(k2 + 1) % 3], F2[(k2 + 2) % 3]
    new = T.directed(b) * T.directed(c)
    stored, s = _arc_entry(new)
    labels = list(T.labels)
    labels[arc] = stored
    faces = list(T.faces)
    faces[f1] = ((arc, s), d, a)
    faces[f2] = ((arc, -s), b, c)
    return Triangulation(T.ctx, labels, faces)


@dataclass(frozen=True)
class FlipPath:
    base: Triangulation
    flips: tuple = ()

    def triangulations(self):
        out = [self.base]
        for a in self.flips:
            out.append(diagonal_exchange(out[-1], a))
        return out

    def final(self) -> Triangulation:
        return self.triangulations()[-1]

    def __len__(self):
        return len(self.flips)


def shared_faces(T: Triangulation, a1: int, a2: int):
    return set(T.faces_of(a1)) & set(T.faces_of(a2))


def pentagon_loop(T: Triangulation, arc1: int, arc2: int) -> FlipPath:
    """Alternating five exchanges on two arcs sharing exactly one face."""
    if BOUNDARY in (arc1, arc2) or arc1 == arc2:
        raise NotPentagonConfiguration("need two distinct non-boundary arcs")
    if len(shared_faces(T, arc1, arc2)) != 1:
        raise NotPentagonConfiguration("arcs %d and %d do not share exactly one face" % (arc1, arc2))
    path = FlipPath(T, (arc1, arc2, arc1, arc2, arc1))
    return path


# JSON --------------------------------------------------------------------

def triangulation_to_json(T: Triangulation) -> dict:
    return {
        "genus": T.ctx.g,
        "arcs": [{"id": a, "label": T.ctx.format(w), "boundary": a == BOUNDARY}
                 for a, w in enumerate(T.labels)],
        "faces": [[[a, s] for a, s in face] for face in T.faces],
    }


def triangulation_from_json(data: dict) -> Triangulation:
    try:
        ctx = GenusContext(int(data["genus"]))
        arcs = sorted(data["arcs"], key=lambda r: r["id"])
        if [r["id"] for r in arcs] != list(range(len(arcs))):
            raise InputError("arc ids must be 0..n-1")
        if not arcs or not arcs[0].get("boundary", False) or any(r.get("boundary", False) for r in arcs[1:]):
            raise InputError("arc 0, and only arc 0, must be flagged as the boundary")
        labels = [ctx.parse(r["label"]) for r in arcs]
        faces = []
        for face in data["faces"]:
            sides = []
            for a, s in face:
                if not (0 <= int(a) < len(labels)) or s not in (1, -1):
                    raise InputError("bad face entry %r" % ([a, s],))
                sides.append((int(a), int(s)))
            faces.append(tuple(sides))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("malformed triangulation record: %s" % exc) from exc
    return check_triangulation(Triangulation(ctx, labels, faces))


def flip_path_to_json(path: FlipPath) -> dict:
    return {"base": triangulation_to_json(path.base), "flips": list(path.flips)}


def flip_path_from_json(data: dict) -> FlipPath:
    try:
        base = triangulation_from_json(data["base"])
        flips = tuple(int(a) for a in data["flips"])
    except (KeyError, TypeError) as exc:
        raise InputError("malformed flip path record: %s" % exc) from exc
    return FlipPath(base, flips)


# flip paths to CS paths ---------------------------------------------------

def _single_arc_slide(P: PolygonDomain, Q: PolygonDomain):
    """
    Triangle moves realising P -> Q as one general cut-slide, or None when
    the new arc is not the product of a contiguous run of sides of P.
    """
    lost, = P.arc_set() - Q.arc_set()
    new, = Q.arc_set() - P.arc_set()
    n = P.n
    for i in range(1, n):
        prod = P.side(i)
        for j in range(i + 1, n + 1):
            prod = prod * P.side(j)
            if canonical_arc(prod) != new:
                continue
            for attach, end in ((FIRST, i), (SECOND, j)):
                if canonical_arc(P.side(end)) != lost or i <= P.partner(end) <= j:
                    continue
                try:
                    target, moves = general_cut_slide(P, i, j, attach)
                except InputError:
                    continue
                if target == Q:
                    return moves
    return None


def flips_to_cs(path: FlipPath, stats: dict = None) -> CSPath:
    """
    Translate a flip path into a CS path between the greedy polygon domains
    of its first and last triangulations.  ``stats`` (if given) receives the
    number of replacements realised by a single cut-slide and by the
    reduction connector.
    """
    doms = [greedy_extract(T) for T in path.triangulations()]
    counts = {"unchanged": 0, "cut_slide": 0, "connector": 0}
    moves = []
    for k in range(len(doms) - 1):
        P, Q = doms[k], doms[k + 1]
        if P == Q:
            counts["unchanged"] += 1
            continue
        if len(P.arc_set() - Q.arc_set()) != 1:
            raise MultiArcDiscrepancy(P, Q, k)
        seg = _single_arc_slide(P, Q)
        if seg is None:
            seg = list(connect(P, Q).moves)
            counts["connector"] += 1
        else:
            counts["cut_slide"] += 1
        moves.extend(seg)
    out = CSPath(doms[0], tuple(moves))
    if out.final() != doms[-1]:
        raise InternalInvariantViolation("translated CS path misses the final greedy domain")
    if stats is not None:
        stats.update(counts)
    return out
