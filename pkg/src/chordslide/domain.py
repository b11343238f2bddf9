"""
Polygon domains of S_{g,1}.

A polygon domain is the (4g+1)-gon obtained by cutting the surface along a
CG set.  Sides are read clockwise; side 0 is the boundary and is kept
implicit, sides 1..4g carry labels in the surface group and are identified
in pairs.  All positions in the public API are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from scipy.cluster.hierarchy import DisjointSet

from .errors import BoundaryNotPreserved, InputError, InvalidDomain
from .words import GenusContext, Word, cancellation_depth, multiply, energy_key


@dataclass(frozen=True)
class PolygonDomain:
    ctx: GenusContext
    sides: tuple      # 4g Words, sides[0] is c_1
    pairing: tuple    # pairing[i - 1] is the partner position of side i

    @property
    def g(self) -> int:
        return self.ctx.g

    @property
    def n(self) -> int:
        return len(self.sides)

    def side(self, i: int) -> Word:
        return self.sides[i - 1]

    def partner(self, i: int) -> int:
        return self.pairing[i - 1]

    def pairs(self):
        """Pairs (i, j) with i < j, ordered by i."""
        return [(i, j) for i, j in enumerate(self.pairing, 1) if i < j]

    def length(self) -> int:
        return sum(len(c) for c in self.sides)

    def energy(self) -> int:
        """Sum of the side energies (exact integer)."""
        return sum(self.ctx.energy_value(c) for c in self.sides)

    def cg_set(self) -> "CGSet":
        return CGSet(tuple(self.side(i) for i, _ in self.pairs()))

    def arc_set(self) -> frozenset:
        """Arc labels up to orientation; determines the domain."""
        return frozenset(canonical_arc(self.side(i)) for i, _ in self.pairs())

    def describe(self) -> str:
        return "(" + ", ".join(self.ctx.format(c) for c in self.sides) + ")"

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class CGSet:
    """Canonical arc labels, ordered and oriented by first appearance."""

    arcs: tuple

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def index(self, w: Word):
        """Return (k, sign) with arcs[k] ** sign == w, or None."""
        for k, x in enumerate(self.arcs):
            if x == w:
                return k, 1
            if x == ~w:
                return k, -1
        return None


@dataclass(frozen=True)
class MappingClass:
    """Images of a_1..a_g, b_1..b_g under a boundary preserving automorphism."""

    ctx: GenusContext
    images: dict = field(hash=False)

    def image_of_letter(self, x: int) -> Word:
        kind, i, sign = self.ctx.letter_info(x)
        w = self.images["%s%d" % (kind, i)]
        return w if sign > 0 else ~w

    def apply(self, w: Word) -> Word:
        return multiply(*(self.image_of_letter(x) for x in w))

    def preserves_boundary(self) -> bool:
        return self.apply(self.ctx.boundary) == self.ctx.boundary

    @classmethod
    def identity(cls, ctx: GenusContext) -> "MappingClass":
        return cls(ctx, {name: ctx.parse(name) for name in ctx.generator_names})


def canonical_arc(w: Word) -> Word:
    """Orientation-free representative of an arc label (energy-minimal)."""
    v = ~w
    return w if energy_key(w) <= energy_key(v) else v


def standard_domain(ctx: GenusContext) -> PolygonDomain:
    n = ctx.rank
    sides = tuple(Word((i,)) for i in range(1, n + 1))
    pairing = []
    for i in range(1, n + 1):
        pairing.append(i + 2 if (i - 1) % 4 < 2 else i - 2)
    return PolygonDomain(ctx, sides, tuple(pairing))


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def integer_determinant(rows) -> int:
    """Bareiss fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def vertex_classes(pairing) -> int:
    """Number of vertex classes of the glued polygon (side 0 is unglued)."""
    n = len(pairing)
    ds = DisjointSet(range(n + 1))
    # vertex k is the start of side k, vertex n+1 wraps to 0
    for i, j in enumerate(pairing, 1):
        ds.merge(i, (j + 1) % (n + 1))
        ds.merge((i + 1) % (n + 1), j)
    return ds.n_subsets


def validate(P: PolygonDomain) -> ValidationReport:
    bad = []
    ctx = P.ctx
    n = ctx.rank
    if len(P.sides) != n or len(P.pairing) != n:
        return ValidationReport(["expected %d sides and pairing entries" % n])
    pairing_ok = True
    for i in range(1, n + 1):
        j = P.partner(i)
        if not 1 <= j <= n or j == i or P.partner(j) != i:
            bad.append("pairing is not a fixed-point-free involution at %d" % i)
            pairing_ok = False
        elif abs(j - i) == 1:
            bad.append("side %d is paired with adjacent side %d" % (i, j))
    for i, c in enumerate(P.sides, 1):
        if not isinstance(c, Word) or not c.is_reduced():
            bad.append("side %d is not a reduced word" % i)
        elif c.is_identity():
            bad.append("side %d has the identity label" % i)
    if pairing_ok:
        for i, j in P.pairs():
            if P.side(j) != ~P.side(i):
                bad.append("paired sides %d and %d do not carry inverse labels" % (i, j))
        if vertex_classes(P.pairing) != 1:
            bad.append("gluing does not produce a single vertex")
    if multiply(*P.sides) != ctx.boundary_inverse:
        bad.append("product of sides is not the inverse boundary word")
    if pairing_ok:
        rows = [ctx.abelianize(P.side(i)) for i, _ in P.pairs()]
        if len(rows) == 2 * ctx.g and abs(integer_determinant(rows)) != 1:
            bad.append("abelianized arc labels do not form a basis")
    return ValidationReport(bad)


def check(P: PolygonDomain) -> PolygonDomain:
    report = validate(P)
    if not report:
        raise InvalidDomain(report.violations)
    return P


def from_mapping_class(phi: MappingClass) -> PolygonDomain:
    if not phi.preserves_boundary():
        raise BoundaryNotPreserved("the map does not fix the boundary word")
    S = standard_domain(phi.ctx)
    return PolygonDomain(phi.ctx, tuple(phi.apply(c) for c in S.sides), S.pairing)


# balance ------------------------------------------------------------------

class Balance(str, Enum):
    UNBALANCED_RIGHT = "unbalanced-right"
    UNBALANCED_LEFT = "unbalanced-left"
    BALANCED = "balanced"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class SideBalance:
    position: int
    status: Balance
    left_depth: int
    right_depth: int
    unbalanced_left: bool
    unbalanced_right: bool
    witness: dict = field(hash=False, compare=False)


@dataclass(frozen=True)
class BalanceReport:
    sides: tuple

    def __getitem__(self, i) -> SideBalance:
        return self.sides[i - 1]

    def unbalanced(self):
        return [s for s in self.sides if s.unbalanced_left or s.unbalanced_right]

    def balanced(self):
        return [s for s in self.sides if s.status is Balance.BALANCED]


def classify_side(P: PolygonDomain, i: int) -> SideBalance:
    # neighbours are taken within 1..4g only, never through the boundary side
    c = P.side(i)
    n = len(c)
    left = cancellation_depth(P.side(i - 1), c) if i > 1 else 0
    right = cancellation_depth(c, P.side(i + 1)) if i < P.n else 0
    ub_left = 2 * left > n
    ub_right = 2 * right > n
    witness = {}
    if ub_right:
        k = right
        witness["right"] = {"l": Word(c[:n - k]), "y": ~Word(c[n - k:]), "r": Word(P.side(i + 1)[k:])}
        status = Balance.UNBALANCED_RIGHT
    if ub_left:
        k = left
        prev = P.side(i - 1)
        witness["left"] = {"l": Word(prev[:len(prev) - k]), "x": Word(c[:k]), "r": Word(c[k:])}
        if not ub_right:
            status = Balance.UNBALANCED_LEFT
    if not (ub_left or ub_right):
        h = n // 2
        if n % 2 == 0 and left >= h and right >= h:
            prev = P.side(i - 1)
            witness["balanced"] = {
                "l": Word(prev[:len(prev) - h]), "x": Word(c[:h]),
                "y": ~Word(c[h:]), "r": Word(P.side(i + 1)[h:]),
            }
            status = Balance.BALANCED
        else:
            status = Balance.NEUTRAL
    return SideBalance(i, status, left, right, ub_left, ub_right, witness)


def balance_classify(P: PolygonDomain) -> BalanceReport:
    return BalanceReport(tuple(classify_side(P, i) for i in range(1, P.n + 1)))


# JSON ---------------------------------------------------------------------

def domain_to_json(P: PolygonDomain) -> dict:
    return {
        "genus": P.g,
        "sides": [P.ctx.format(c) for c in P.sides],
        "pairing": [[i, j] for i, j in P.pairs()],
    }


def domain_from_json(data: dict, validate_input: bool = True) -> PolygonDomain:
    try:
        ctx = GenusContext(int(data["genus"]))
        sides = tuple(ctx.parse(s) for s in data["sides"])
        pairing = [0] * len(sides)
        for i, j in data["pairing"]:
            if not (1 <= i <= len(sides) and 1 <= j <= len(sides)):
                raise InputError("pairing entry %r out of range" % ([i, j],))
            pairing[i - 1] = j
            pairing[j - 1] = i
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("malformed domain record: %s" % exc) from exc
    P = PolygonDomain(ctx, sides, tuple(pairing))
    return check(P) if validate_input else P


def mapping_class_from_json(data: dict) -> MappingClass:
    try:
        ctx = GenusContext(int(data["genus"]))
        given = data["images"]
        images = {}
        for name in ctx.generator_names:
            images[name] = ctx.parse(given.get(name, name))
        extra = set(given) - set(ctx.generator_names)
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("malformed mapping class record: %s" % exc) from exc
    if extra:
        raise InputError("unknown generators in mapping class: %s" % ", ".join(sorted(extra)))
    return MappingClass(ctx, images)


def mapping_class_to_json(phi: MappingClass) -> dict:
    return {"genus": phi.ctx.g, "images": {k: phi.ctx.format(v) for k, v in phi.images.items()}}
