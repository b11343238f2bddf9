"""
Fatgraph Nielsen reduction.

Drives a polygon domain to the standard symplectic domain: length-reducing
moves at unbalanced sides are preferred; when none exist a balanced side
supplies a move that keeps the length and lowers the energy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .domain import (MappingClass, PolygonDomain, balance_classify, check,
                     domain_to_json, from_mapping_class, standard_domain)
from .errors import CompositionMismatch, InternalInvariantViolation, StuckDomain
from .words import energy_sum_compare
from .moves import (FIRST, SECOND, CSPath, NielsenStep, Substitution, TriangleCSMove,
                    apply_move)

UNBALANCED = "unbalanced"
BALANCED = "balanced"


def _replaced_position(P: PolygonDomain, m: TriangleCSMove) -> int:
    return m.i if m.attach is FIRST else m.i + 1


def energy_change_sign(P: PolygonDomain, m: TriangleCSMove) -> int:
    """Sign of the change of the domain energy under m (only one arc changes)."""
    old = P.side(_replaced_position(P, m))
    d = P.side(m.i) * P.side(m.i + 1)
    return energy_sum_compare((d, ~d), (old, ~old), P.ctx.rank + 1)


def length_change(P: PolygonDomain, m: TriangleCSMove) -> int:
    old = P.side(_replaced_position(P, m))
    d = P.side(m.i) * P.side(m.i + 1)
    return 2 * (len(d) - len(old))


def select_move(P: PolygonDomain):
    """Return (move, rationale) for the next reduction step."""
    report = balance_classify(P)
    candidates = []
    for s in report.sides:
        n = len(P.side(s.position))
        if s.unbalanced_right:
            candidates.append((2 * (2 * s.right_depth - n), TriangleCSMove(s.position, SECOND)))
        if s.unbalanced_left:
            candidates.append((2 * (2 * s.left_depth - n), TriangleCSMove(s.position - 1, FIRST)))
    if candidates:
        _, m = min(candidates, key=lambda c: (-c[0], c[1].i, c[1].attach is SECOND))
        return m, UNBALANCED

    balanced = report.balanced()
    if not balanced:
        if P == standard_domain(P.ctx):
            raise ValueError("the standard domain needs no reduction")
        raise StuckDomain(P, "no unbalanced or balanced side in a non-standard domain")
    for s in balanced:
        for m in (TriangleCSMove(s.position - 1, FIRST), TriangleCSMove(s.position, SECOND)):
            if energy_change_sign(P, m) < 0:
                return m, BALANCED
    raise StuckDomain(P, "no balanced side admits an energy-decreasing move")


@dataclass(frozen=True)
class TraceStep:
    move: TriangleCSMove
    rationale: str
    length_before: int
    length_after: int
    energy_sign: int    # sign of the change of the domain energy


@dataclass
class ReductionTrace:
    start: PolygonDomain
    steps: list = field(default_factory=list)
    final: PolygonDomain = None

    @property
    def moves(self):
        return tuple(s.move for s in self.steps)

    def path(self) -> CSPath:
        return CSPath(self.start, self.moves)

    def nielsen_steps(self):
        return self.path().nielsen_steps()

    def to_json(self, with_nielsen: bool = True) -> dict:
        out = {
            "start": domain_to_json(self.start),
            "final": domain_to_json(self.final),
            "moves": [str(s.move) for s in self.steps],
            "steps": [
                {
                    "move": str(s.move),
                    "rationale": s.rationale,
                    "length_before": s.length_before,
                    "length_after": s.length_after,
                    "energy_sign": s.energy_sign,
                }
                for s in self.steps
            ],
        }
        if with_nielsen:
            out["nielsen"] = [nielsen_to_json(self.start.ctx, st) for st in self.nielsen_steps()]
        return out


def nielsen_to_json(ctx, step: NielsenStep) -> dict:
    return {
        "removed": ctx.format(step.removed),
        "added": ctx.format(step.added),
        "substitution": step.describe(),
    }


def reduce(P: PolygonDomain, max_steps: int = None, on_step=None) -> ReductionTrace:
    """
    Reduce P to the standard domain.  ``on_step`` is called with each
    TraceStep as it is produced.
    """
    check(P)
    target = standard_domain(P.ctx)
    trace = ReductionTrace(P)
    cur = P
    length = cur.length()
    while cur != target:
        if max_steps is not None and len(trace.steps) >= max_steps:
            raise StuckDomain(cur, "step budget of %d exhausted" % max_steps)
        m, why = select_move(cur)
        dE = energy_change_sign(cur, m)
        nxt = apply_move(cur, m)
        new_length = nxt.length()
        if why == UNBALANCED and not new_length < length:
            raise InternalInvariantViolation("unbalanced step %s did not shorten the domain" % m)
        if why == BALANCED and not (new_length == length and dE < 0):
            raise InternalInvariantViolation("balanced step %s did not lower the energy" % m)
        step = TraceStep(m, why, length, new_length, dE)
        trace.steps.append(step)
        if on_step is not None:
            on_step(step)
        cur, length = nxt, new_length
    trace.final = cur
    return trace


def connect(P: PolygonDomain, Q: PolygonDomain) -> CSPath:
    """A CS path from P to Q through the standard domain."""
    there = reduce(P).path()
    back = reduce(Q).path().reversed()
    return CSPath(P, there.moves + back.moves)


def standard_basis_names(ctx):
    """Generator names of the canonical CG basis of the standard domain."""
    S = standard_domain(ctx)
    return [ctx.format(w) for w in S.cg_set()]


def factorize_mapping_class(phi: MappingClass):
    """
    Factor phi into triangle CS moves.

    Returns (path, nielsen_steps, total) where ``total`` expresses the CG
    basis of from_mapping_class(phi) in the standard basis; evaluated on the
    standard generators it reproduces phi.
    """
    P0 = from_mapping_class(phi)
    trace = reduce(P0)
    path = trace.path()
    steps = path.nielsen_steps()
    total = Substitution.identity(2 * phi.ctx.g)
    for st in steps:
        total = total.then(st.backward)
    S = standard_domain(phi.ctx)
    images = total.evaluate(S.cg_set().arcs)
    if images != P0.cg_set().arcs:
        raise CompositionMismatch("composed substitution does not reproduce the start basis")
    for gen, img in zip(S.cg_set().arcs, images):
        if phi.apply(gen) != img:
            raise CompositionMismatch("composed substitution differs from the map on %s"
                                      % phi.ctx.format(gen))
    return path, steps, total
