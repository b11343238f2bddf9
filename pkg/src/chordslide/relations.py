"""
Relations among triangle moves: involutivity (I), commutativity (C),
the triangle relation (T) and the mining of short loops.

A loop is a move sequence whose replay returns exactly the base domain
(same labels, same pairing).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .domain import PolygonDomain, canonical_arc
from .errors import InapplicableMove, InvalidMove, PreconditionViolation, SearchBudgetExceeded
from .moves import (DBAR, FIRST, TriangleCSMove, apply_move, apply_move_traced,
                    enumerate_moves, invert_move)
from .moves import D as DIAG

INVOLUTION = "I"
COMMUTATION = "C"
TRIANGLE = "T"
PENTAGON = "pentagon-type"
UNCLASSIFIED = "unclassified"
CLASSES = (INVOLUTION, COMMUTATION, TRIANGLE, PENTAGON, UNCLASSIFIED)

# largest loop length searched per genus
MAX_LOOP = {1: 6, 2: 5}


def replay(P: PolygonDomain, moves):
    """Domains visited by ``moves``; InapplicableMove names the failing prefix."""
    out = [P]
    for k, m in enumerate(moves):
        try:
            out.append(apply_move(out[-1], m))
        except InvalidMove as exc:
            raise InapplicableMove(k, "move %d (%s) is not applicable: %s" % (k, m, exc)) from exc
    return out


def check_loop(P: PolygonDomain, moves) -> bool:
    return replay(P, moves)[-1] == P


def triangle_relation(P: PolygonDomain, i: int):
    """
    Cut the triangle on sides i, i+1 and attach it along the partner of c_i,
    then keep cutting the same triangle and attaching it along the partner of
    its first side until it is back where it started.
    """
    if not 1 <= i < P.n:
        raise PreconditionViolation("triangle (%d, %d) is not cuttable" % (i, i + 1))
    moves = []
    Q = P
    pos = i
    for _ in range(3):
        m = TriangleCSMove(pos, FIRST)
        Q, origin = apply_move_traced(Q, m)
        moves.append(m)
        # the triangle now sits on the moved side and the new copy of the diagonal
        pos = origin.index(DBAR)
    return moves


def support(P: PolygonDomain, m: TriangleCSMove) -> frozenset:
    """Positions touched by m: the cut pair and the gluing target."""
    t = P.partner(m.i) if m.attach is FIRST else P.partner(m.i + 1)
    return frozenset((m.i, m.i + 1, t))


def _image_support(origin, m: TriangleCSMove) -> frozenset:
    """Positions of the result carrying the new diagonal or the moved side."""
    k = origin.index(DBAR) + 1
    moved = k - 1 if m.attach is FIRST else k + 1
    return frozenset((origin.index(DIAG) + 1, k, moved))


def _reindex(origin, P: PolygonDomain, m: TriangleCSMove) -> TriangleCSMove:
    newpos = {o: k for k, o in enumerate(origin, 1)}
    try:
        a, b = newpos[m.i], newpos[m.i + 1]
    except KeyError:
        raise PreconditionViolation("%s is destroyed by the other move" % m) from None
    if b != a + 1:
        raise PreconditionViolation("%s no longer cuts adjacent sides" % m)
    return TriangleCSMove(a, m.attach)


def commuting_square(P: PolygonDomain, m1: TriangleCSMove, m2: TriangleCSMove):
    """
    Return (m2', m1', R) with R = m2'(m1(P)) = m1'(m2(P)) computed along the
    first route.  Raises PreconditionViolation unless the supports are
    disjoint before and after each move.
    """
    s1, s2 = support(P, m1), support(P, m2)
    if s1 & s2:
        raise PreconditionViolation("supports %s and %s overlap" % (sorted(s1), sorted(s2)))
    Q1, o1 = apply_move_traced(P, m1)
    Q2, o2 = apply_move_traced(P, m2)
    m2p = _reindex(o1, P, m2)
    m1p = _reindex(o2, P, m1)
    if support(Q1, m2p) & _image_support(o1, m1) or support(Q2, m1p) & _image_support(o2, m2):
        raise PreconditionViolation("the triangles become adjacent after sliding")
    return m2p, m1p, apply_move(Q1, m2p), apply_move(Q2, m1p)


def commuting_pair(P: PolygonDomain, m1: TriangleCSMove, m2: TriangleCSMove) -> bool:
    _, _, R1, R2 = commuting_square(P, m1, m2)
    return R1 == R2


@dataclass(frozen=True)
class RelationLoop:
    base: PolygonDomain
    moves: tuple
    classification: str
    support: frozenset      # canonical labels of arcs created or destroyed along the loop

    def __len__(self):
        return len(self.moves)


def _loop_support(doms) -> frozenset:
    base = doms[0].arc_set()
    seen = set()
    for Q in doms[1:]:
        seen |= Q.arc_set() ^ base
    return frozenset(seen)


def _reverse_loop(P, moves):
    doms = replay(P, moves)
    return [invert_move(doms[k], moves[k]) for k in range(len(moves) - 1, -1, -1)]


def _is_triangle(P, moves) -> bool:
    for i in range(1, P.n):
        t = triangle_relation(P, i)
        if list(moves) == t or list(moves) == _reverse_loop(P, t):
            return True
    return False


def _is_commutation(P, moves, doms) -> bool:
    a, b, c, d = moves
    back = invert_move(doms[3], d)      # P -> doms[3]
    try:
        m2p, m1p, R1, R2 = commuting_square(P, a, back)
    except PreconditionViolation:
        return False
    return R1 == R2 == doms[2] and b == m2p and invert_move(doms[2], c) == m1p


def _spans(P: PolygonDomain, i: int) -> set:
    out = set()
    for a in range(i, i + 3):
        w = P.side(a)
        out.add(canonical_arc(w))
        for b in range(a + 1, i + 3):
            w = w * P.side(b)
            out.add(canonical_arc(w))
    return out


def _is_pentagon(P, moves, doms) -> bool:
    # every cut triangle lies in the quadrilateral spanned by three
    # consecutive sides of the base domain
    for i in range(1, P.n - 1):
        pieces = _spans(P, i)
        if all(canonical_arc(Q.side(m.i)) in pieces and canonical_arc(Q.side(m.i + 1)) in pieces
               for Q, m in zip(doms, moves)):
            return True
    return False


def classify_loop(P: PolygonDomain, moves) -> str:
    moves = list(moves)
    doms = replay(P, moves)
    if doms[-1] != P:
        raise PreconditionViolation("the sequence is not a loop")
    n = len(moves)
    if n == 2:
        return INVOLUTION
    if n == 3 and _is_triangle(P, moves):
        return TRIANGLE
    if n == 4 and _is_commutation(P, moves, doms):
        return COMMUTATION
    if n == 5 and _is_pentagon(P, moves, doms):
        return PENTAGON
    return UNCLASSIFIED


def _edges(Q: PolygonDomain, R: PolygonDomain):
    """Moves taking Q to R."""
    return [m for m in enumerate_moves(Q) if apply_move(Q, m) == R]


def decompose_loop(P: PolygonDomain, moves):
    """
    Split a loop into classified relation loops, cutting at domains visited
    twice or along single moves that join two non-consecutive domains.  Returns a list of
    (base, moves, class) or None when no such splitting exists.
    """
    moves = tuple(moves)
    cls = classify_loop(P, moves)
    if cls != UNCLASSIFIED:
        return [(P, moves, cls)]
    doms = replay(P, moves)
    n = len(moves)
    for a in range(n):
        # a domain visited twice splits the loop with no extra move
        for b in range(a + 2, n):
            if (a, b) != (0, n) and doms[a] == doms[b]:
                left = decompose_loop(doms[a], moves[a:b])
                right = decompose_loop(P, moves[:a] + moves[b:]) if left is not None else None
                if right is not None:
                    return left + right
    for a in range(n):
        # both pieces must be strictly shorter than the loop
        for b in range(a + 2, min(n, a + n - 2) + 1):
            for e in _edges(doms[b], doms[a]):
                # moves a..b-1 followed by e form a loop at doms[a]
                inner = moves[a:b] + (e,)
                back = invert_move(doms[b], e)
                outer = moves[:a] + (back,) + moves[b:]
                left = decompose_loop(doms[a], inner)
                if left is None:
                    continue
                right = decompose_loop(P, outer)
                if right is not None:
                    return left + right
    return None


def find_loops(P: PolygonDomain, max_len: int, budget: int = 5_000_000):
    """
    All loops at P of length <= max_len.  Length-2 loops are the involutions
    (m, inverse of m); longer ones never undo the previous move and return
    to P only at their last step.  ``budget`` caps the number of moves
    applied during the search.
    """
    limit = MAX_LOOP.get(P.g, 4)
    if max_len > limit:
        raise SearchBudgetExceeded("max_len %d exceeds the limit %d at genus %d" % (max_len, limit, P.g))
    found = []
    if max_len >= 2:
        for m in enumerate_moves(P):
            found.append((m, invert_move(P, m)))
    work = [0]

    def grow(Q, path, undo):
        for m in enumerate_moves(Q):
            if m == undo:
                continue
            work[0] += 1
            if work[0] > budget:
                raise SearchBudgetExceeded("loop search exceeded %d move applications" % budget)
            R = apply_move(Q, m)
            step = path + (m,)
            if R == P:
                if len(step) >= 3:
                    found.append(step)
                continue
            if len(step) < max_len:
                grow(R, step, invert_move(Q, m))

    if max_len >= 3:
        grow(P, (), None)
    loops = []
    for moves in sorted(found, key=lambda s: (len(s), s)):
        doms = replay(P, moves)
        loops.append(RelationLoop(P, tuple(moves), classify_loop(P, moves), _loop_support(doms)))
    return loops


def loop_census(loops, finding_len: int = 4) -> dict:
    """
    Counts per class and per length.  Unclassified loops are further split
    into composites (they cut into classified loops along single moves) and
    findings (unclassified, no splitting, length at most ``finding_len``).
    """
    counts = Counter(l.classification for l in loops)
    by_length = {}
    for l in loops:
        row = by_length.setdefault(str(len(l)), {})
        row[l.classification] = row.get(l.classification, 0) + 1
    rest = [l for l in loops if l.classification == UNCLASSIFIED]
    split = [decompose_loop(l.base, l.moves) is not None for l in rest]
    return {
        "total": len(loops),
        "counts": {c: counts.get(c, 0) for c in CLASSES},
        "by_length": by_length,
        "composite": sum(split),
        "findings": [[str(m) for m in l.moves] for l, ok in zip(rest, split)
                     if not ok and len(l) <= finding_len],
        "unclassified": [[str(m) for m in l.moves] for l in rest],
    }


def loop_findings(loops, finding_len: int = 4):
    """Unclassified loops of length <= finding_len that do not split into classified ones."""
    return [l for l in loops if l.classification == UNCLASSIFIED and len(l) <= finding_len
            and decompose_loop(l.base, l.moves) is None]
