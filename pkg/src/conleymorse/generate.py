"""Seeded random spaces and multivector fields for property testing."""

from __future__ import annotations

import random
from typing import Optional

from .mvf import MultivectorField
from .space import CellSet, FiniteSpace, iter_bits


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_poset(seed, n_cells: int, density: float = 0.35) -> FiniteSpace:
    """Random order on ``n_cells`` points; each pair ``i < j`` is a relation with prob ``density``."""
    rng = _rng(seed)
    names = [f"p{i:02d}" for i in range(n_cells)]
    covers = [
        (names[i], names[j])
        for j in range(n_cells)
        for i in range(j)
        if rng.random() < density
    ]
    return FiniteSpace.from_cover_relations(names, covers)


def random_simplicial(seed, n_vertices: int = 5, n_simplices: int = 3, max_dim: int = 2) -> FiniteSpace:
    rng = _rng(seed)
    vertices = [chr(ord("A") + i) for i in range(n_vertices)]
    simplices = []
    for _ in range(n_simplices):
        k = rng.randint(1, min(max_dim + 1, n_vertices))
        simplices.append(rng.sample(vertices, k))
    return FiniteSpace.from_simplicial_complex(simplices)


def random_space(seed, max_cells: int = 12) -> FiniteSpace:
    """Either a random poset or a small face poset, with at most ``max_cells`` cells."""
    rng = _rng(seed)
    while True:
        if rng.random() < 0.5:
            space = random_poset(rng, rng.randint(1, max_cells), rng.uniform(0.15, 0.6))
        else:
            nv = rng.randint(1, 5)
            space = random_simplicial(rng, nv, rng.randint(1, 3), rng.randint(0, 2))
        if len(space) <= max_cells:
            return space


def random_field(space: FiniteSpace, seed, bias: float = 0.5) -> MultivectorField:
    """Grow convex parts from random seeds, stopping each with probability ``bias``.

    ``bias = 1`` gives the all-singleton field.  Parts only ever gain a
    neighbour (a cell covering or covered by a member) when the enlarged
    part stays convex, so the result is always a valid field.
    """
    rng = _rng(seed)
    n = len(space)
    neighbours = [0] * n
    for lo, hi in space.covers:
        neighbours[lo] |= 1 << hi
        neighbours[hi] |= 1 << lo
    unassigned = space.all_bits
    parts = []
    while unassigned:
        start = rng.choice(list(iter_bits(unassigned)))
        part = 1 << start
        unassigned &= ~part
        while rng.random() >= bias:
            frontier = 0
            for i in iter_bits(part):
                frontier |= neighbours[i]
            candidates = [
                j for j in iter_bits(frontier & unassigned)
                if space.convex_hull_bits(part | 1 << j) == part | 1 << j
            ]
            if not candidates:
                break
            j = rng.choice(candidates)
            part |= 1 << j
            unassigned &= ~(1 << j)
        parts.append(CellSet(space, part))
    return MultivectorField(space, parts)


def random_subset(space: FiniteSpace, seed, p: float = 0.5) -> CellSet:
    rng = _rng(seed)
    bits = 0
    for i in range(len(space)):
        if rng.random() < p:
            bits |= 1 << i
    return CellSet(space, bits)


def random_case(seed, max_cells: int = 12, bias: Optional[float] = None) -> MultivectorField:
    """A random field on a random space; ``bias`` drawn at random when omitted."""
    rng = _rng(seed)
    space = random_space(rng, max_cells)
    return random_field(space, rng, rng.uniform(0.2, 0.9) if bias is None else bias)
