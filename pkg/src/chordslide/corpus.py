"""
Seeded random domains, triangulations and flip paths.

All randomness comes from numpy's Philox counter-based generator, so a seed
fixes every draw on every platform.
"""

from __future__ import annotations

import numpy as np

from .domain import PolygonDomain, standard_domain
from .moves import CSPath, apply_move, enumerate_moves, invert_move
from .triangulation import FlipPath, Triangulation, diagonal_exchange, fan_triangulate
from .words import GenusContext

PRNG = "numpy Philox"


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_walk(P: PolygonDomain, steps: int, seed: int = 0, rng=None):
    """
    Apply ``steps`` uniformly chosen moves, never undoing the previous one.
    Returns (final domain, path).
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = rng_for(seed) if rng is None else rng
    cur = P
    undo = None
    moves = []
    for _ in range(steps):
        choices = [m for m in enumerate_moves(cur) if m != undo]
        m = choices[int(rng.integers(len(choices)))]
        undo = invert_move(cur, m)
        cur = apply_move(cur, m)
        moves.append(m)
    return cur, CSPath(P, tuple(moves))


def random_domain(g: int, seed: int, max_steps: int = 15) -> PolygonDomain:
    rng = rng_for(seed)
    steps = int(rng.integers(0, max_steps + 1))
    return random_walk(standard_domain(GenusContext(g)), steps, rng=rng)[0]


def random_flips(T: Triangulation, steps: int, rng) -> FlipPath:
    flips = []
    cur = T
    for _ in range(steps):
        arcs = cur.arcs()
        a = arcs[int(rng.integers(len(arcs)))]
        flips.append(a)
        cur = diagonal_exchange(cur, a)
    return FlipPath(T, tuple(flips))


def random_triangulation(g: int, seed: int, flips: int = 10) -> Triangulation:
    rng = rng_for(seed)
    P = random_walk(standard_domain(GenusContext(g)), int(rng.integers(0, 11)), rng=rng)[0]
    return random_flips(fan_triangulate(P), flips, rng).final()


def random_flip_path(g: int, seed: int, length: int = 10) -> FlipPath:
    rng = rng_for(seed)
    P = random_walk(standard_domain(GenusContext(g)), int(rng.integers(0, 11)), rng=rng)[0]
    return random_flips(fan_triangulate(P), length, rng)
