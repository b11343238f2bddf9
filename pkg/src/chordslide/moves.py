"""
Triangle cut-slide moves on polygon domains.

A move ``(i, FIRST)`` cuts the triangle spanned by sides i, i+1 along the
diagonal d = c_i c_{i+1} and glues it onto the partner of c_i; ``(i, SECOND)``
glues it onto the partner of c_{i+1}.  After a move the sides are renumbered
1..4g clockwise from the boundary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .domain import PolygonDomain, check, domain_from_json, domain_to_json, validate
from .errors import InputError, InternalInvariantViolation, InvalidDomain, InvalidMove, InvalidSpan
from .words import Word, multiply


class Attach(str, Enum):
    FIRST = "first"
    SECOND = "second"

    def __repr__(self):
        return self.name


FIRST = Attach.FIRST
SECOND = Attach.SECOND


@dataclass(frozen=True, order=True)
class TriangleCSMove:
    i: int
    attach: Attach

    def __str__(self):
        return "cs(%d, %s)" % (self.i, self.attach.value)

    __repr__ = __str__


_MOVE_RE = re.compile(r"^\s*cs\(\s*(\d+)\s*,\s*(first|second)\s*\)\s*$")


def parse_move(text: str) -> TriangleCSMove:
    m = _MOVE_RE.match(text)
    if m is None:
        raise InputError("malformed move %r" % text)
    return TriangleCSMove(int(m.group(1)), Attach(m.group(2)))


# origin markers for the two sides carrying the new diagonal
D = -1
DBAR = -2


def _rebuild(P: PolygonDomain, origin, d: Word) -> PolygonDomain:
    """
    Assemble a domain from an origin list.  Entries are old positions whose
    label (and arc) the new side carries, or D / DBAR.
    """
    newpos = {}
    for k, o in enumerate(origin, 1):
        newpos[o] = k
    sides = []
    pairing = []
    for o in origin:
        if o == D:
            sides.append(d)
            pairing.append(newpos[DBAR])
        elif o == DBAR:
            sides.append(~d)
            pairing.append(newpos[D])
        else:
            sides.append(P.side(o))
            pairing.append(newpos[P.partner(o)])
    return PolygonDomain(P.ctx, tuple(sides), tuple(pairing))


def _move_origin(P: PolygonDomain, m: TriangleCSMove):
    i = m.i
    if not isinstance(i, int) or not 1 <= i < P.n:
        raise InvalidMove("%s: index outside 1..%d" % (m, P.n - 1))
    if m.attach is FIRST:
        t = P.partner(i)
        insert = (i + 1, DBAR)
    else:
        t = P.partner(i + 1)
        insert = (DBAR, i)
    origin = []
    for p in range(1, P.n + 1):
        if p == i:
            origin.append(D)
        elif p == i + 1:
            continue
        elif p == t:
            origin.extend(insert)
        else:
            origin.append(p)
    return origin


def apply_move_traced(P: PolygonDomain, m: TriangleCSMove, verify: bool = False):
    """Apply a move and also return the origin list of the result."""
    origin = _move_origin(P, m)
    d = P.side(m.i) * P.side(m.i + 1)
    Q = _rebuild(P, origin, d)
    if verify:
        report = validate(Q)
        if not report:
            raise InternalInvariantViolation("%s produced an invalid domain: %s"
                                             % (m, "; ".join(report.violations)))
    return Q, origin


def apply_move(P: PolygonDomain, m: TriangleCSMove, verify: bool = False) -> PolygonDomain:
    return apply_move_traced(P, m, verify)[0]


def enumerate_moves(P: PolygonDomain):
    return [TriangleCSMove(i, a) for i in range(1, P.n) for a in (FIRST, SECOND)]


def invert_move(P: PolygonDomain, m: TriangleCSMove) -> TriangleCSMove:
    """The move undoing m, expressed against the numbering of apply_move(P, m)."""
    origin = _move_origin(P, m)
    if m.attach is FIRST:
        return TriangleCSMove(origin.index(m.i + 1) + 1, SECOND)
    return TriangleCSMove(origin.index(DBAR) + 1, FIRST)


def invert_move_search(P: PolygonDomain, m: TriangleCSMove) -> TriangleCSMove:
    """Find an undoing move by trying every move (slow reference)."""
    Q = apply_move(P, m)
    for mm in enumerate_moves(Q):
        if apply_move(Q, mm) == P:
            return mm
    raise InternalInvariantViolation("no inverse found for %s" % m)


# Nielsen steps ------------------------------------------------------------

def free_reduce(word) -> tuple:
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_abstract(word) -> tuple:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class Substitution:
    """
    An endomorphism of the free group on x_1..x_n given by the images of the
    generators, each a tuple of signed generator indices (1-based).
    """

    images: tuple

    @classmethod
    def identity(cls, n: int) -> "Substitution":
        return cls(tuple((k,) for k in range(1, n + 1)))

    def __len__(self):
        return len(self.images)

    def substitute(self, word) -> tuple:
        out = []
        for x in word:
            out.extend(self.images[x - 1] if x > 0 else invert_abstract(self.images[-x - 1]))
        return free_reduce(out)

    def then(self, inner: "Substitution") -> "Substitution":
        """Replace every letter of self by its image under ``inner``."""
        return Substitution(tuple(inner.substitute(w) for w in self.images))

    def evaluate(self, basis) -> tuple:
        """Images as surface-group words, given words for x_1..x_n."""
        def ev(word):
            return multiply(*(basis[x - 1] if x > 0 else ~basis[-x - 1] for x in word))
        return tuple(ev(w) for w in self.images)

    def abelian_matrix(self):
        n = len(self.images)
        rows = []
        for w in self.images:
            row = [0] * n
            for x in w:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows

    def describe(self, names=None) -> str:
        names = names or ["x%d" % k for k in range(1, len(self.images) + 1)]

        def fmt(w):
            if not w:
                return "1"
            return "".join(names[abs(x) - 1] + ("" if x > 0 else "^-1") for x in w)
        return ", ".join("%s -> %s" % (names[k], fmt(w)) for k, w in enumerate(self.images))


@dataclass(frozen=True)
class NielsenStep:
    removed: Word          # canonical label of the removed arc (old CG set)
    added: Word            # canonical label of the new arc (new CG set)
    removed_index: int     # 0-based index into the old CG set
    added_index: int       # 0-based index into the new CG set
    forward: Substitution  # new basis in terms of the old one
    backward: Substitution  # old basis in terms of the new one

    def describe(self, names=None) -> str:
        return self.forward.describe(names).split(", ")[self.added_index]


def _express(w: Word, cg) -> tuple:
    hit = cg.index(w)
    if hit is None:
        raise InternalInvariantViolation("label is not a CG arc")
    k, s = hit
    return (s * (k + 1),)


def induced_substitution(P: PolygonDomain, m: TriangleCSMove) -> NielsenStep:
    Q = apply_move(P, m)
    old, new = P.cg_set(), Q.cg_set()
    u, v = P.side(m.i), P.side(m.i + 1)
    d = u * v
    removed_label = u if m.attach is FIRST else v
    r_idx, _ = old.index(removed_label)
    a_idx, a_sign = new.index(d)

    forward = []
    for k, x in enumerate(new):
        if k == a_idx:
            w = _express(u, old) + _express(v, old)
            forward.append(free_reduce(w if a_sign > 0 else invert_abstract(w)))
        else:
            forward.append(_express(x, old))
    backward = []
    for j, x in enumerate(old):
        if j == r_idx:
            # u = d v^-1 (first) or v = u^-1 d (second)
            if m.attach is FIRST:
                w = _express(d, new) + invert_abstract(_express(v, new))
            else:
                w = invert_abstract(_express(u, new)) + _express(d, new)
            sign = old.index(removed_label)[1]
            backward.append(free_reduce(w if sign > 0 else invert_abstract(w)))
        else:
            backward.append(_express(x, new))
    return NielsenStep(old.arcs[r_idx], new.arcs[a_idx], r_idx, a_idx,
                       Substitution(tuple(forward)), Substitution(tuple(backward)))


# paths --------------------------------------------------------------------

@dataclass(frozen=True)
class CSPath:
    base: PolygonDomain
    moves: tuple = ()

    def domains(self):
        """Every domain along the path, base first."""
        out = [self.base]
        for k, m in enumerate(self.moves):
            try:
                out.append(apply_move(out[-1], m))
            except InvalidMove as exc:
                raise InvalidMove("move %d (%s) not applicable: %s" % (k, m, exc)) from exc
        return out

    def final(self) -> PolygonDomain:
        P = self.base
        for m in self.moves:
            P = apply_move(P, m)
        return P

    def __len__(self):
        return len(self.moves)

    def __add__(self, other: "CSPath") -> "CSPath":
        return CSPath(self.base, tuple(self.moves) + tuple(other.moves))

    def reversed(self) -> "CSPath":
        doms = self.domains()
        back = [invert_move(doms[k], self.moves[k]) for k in range(len(self.moves) - 1, -1, -1)]
        return CSPath(doms[-1], tuple(back))

    def nielsen_steps(self):
        doms = self.domains()
        return [induced_substitution(doms[k], m) for k, m in enumerate(self.moves)]

    def total_backward(self) -> Substitution:
        """The base CG basis expressed in the CG basis of the final domain."""
        total = Substitution.identity(2 * self.base.g)
        for step in self.nielsen_steps():
            total = total.then(step.backward)
        return total


def path_to_json(path: CSPath) -> dict:
    return {"base": domain_to_json(path.base), "moves": [str(m) for m in path.moves]}


def path_from_json(data: dict) -> CSPath:
    try:
        base = domain_from_json(data["base"])
        moves = tuple(parse_move(s) for s in data["moves"])
    except (KeyError, TypeError) as exc:
        raise InputError("malformed path record: %s" % exc) from exc
    return CSPath(base, moves)


# general cut-slides -------------------------------------------------------

def cut_slide_direct(P: PolygonDomain, i: int, j: int, attach: Attach) -> PolygonDomain:
    """Cut the sub-polygon on sides i..j and reglue it along c_i or c_j."""
    if not (1 <= i < j <= P.n):
        raise InvalidSpan("span %d..%d must satisfy 1 <= i < j <= %d" % (i, j, P.n))
    t = P.partner(i) if attach is FIRST else P.partner(j)
    if i <= t <= j:
        raise InvalidSpan("span %d..%d contains the gluing partner %d" % (i, j, t))
    insert = list(range(i + 1, j + 1)) + [DBAR] if attach is FIRST else [DBAR] + list(range(i, j))
    origin = []
    for p in range(1, P.n + 1):
        if p == i:
            origin.append(D)
        elif i < p <= j:
            continue
        elif p == t:
            origin.extend(insert)
        else:
            origin.append(p)
    d = multiply(*P.sides[i - 1:j])
    Q = _rebuild(P, origin, d)
    try:
        return check(Q)
    except InvalidDomain as exc:
        raise InvalidSpan("cut-slide on %d..%d is degenerate: %s" % (i, j, exc)) from exc


def general_cut_slide(P: PolygonDomain, i: int, j: int, attach: Attach):
    """
    Return the cut-slide result together with triangle moves realising it.

    FIRST repeatedly cuts the triangle at the growing diagonal and glues it
    onto the partner of c_i; SECOND works inward from c_j.
    """
    target = cut_slide_direct(P, i, j, attach)
    moves = []
    Q = P
    if attach is FIRST:
        pos = i
        for _ in range(j - i):
            m = TriangleCSMove(pos, FIRST)
            Q, origin = apply_move_traced(Q, m)
            moves.append(m)
            pos = origin.index(D) + 1
    else:
        pos = j
        for _ in range(j - i):
            m = TriangleCSMove(pos - 1, SECOND)
            Q, origin = apply_move_traced(Q, m)
            moves.append(m)
            pos = origin.index(D) + 1
    if Q != target:
        raise InternalInvariantViolation("triangle decomposition of cut-slide %d..%d disagrees" % (i, j))
    return target, moves
