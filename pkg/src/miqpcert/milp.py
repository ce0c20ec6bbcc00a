"""Mixed-integer linear sets: fiber/ray-family decomposition and points.

A pointed polyhedron P with integral leading coordinates decomposes as

    P cap (Z^p x R^q)  =  union over fibers P_i and families R_K of
                          P_i + intcone(R_K),

where each R_K is a linearly independent subset of the extreme rays of P and
each fiber is a polytope of continuous completions of one integer prefix
inside the bounded window conv(vertices) + sum of ray segments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .linalg import QMatrix, QVector, rank
from .polyhedra import (
    HPolyhedron,
    NotPointed,
    SimpleCone,
    VPolyhedron,
    h_to_v,
    is_pointed,
    polytope_hull,
    restrict_prefix,
)


@dataclass(frozen=True)
class MixedIntegerSet:
    """P cap (Z^p x R^(n-p)): the first integer_count coordinates integral."""

    polyhedron: HPolyhedron
    integer_count: int

    def __post_init__(self) -> None:
        if not 0 <= self.integer_count <= self.polyhedron.dim:
            raise ValueError("integer count must be between 0 and the dimension")

    @property
    def continuous_count(self) -> int:
        return self.polyhedron.dim - self.integer_count


@dataclass(frozen=True)
class Fiber:
    """Continuous completions of one integer prefix inside one window B^K."""

    polyhedron: HPolyhedron  # full-space description: window rows + prefix equalities
    integer_part: QVector
    family_index: int
    vertices: tuple[QVector, ...]  # full-space vertices
    reduced: HPolyhedron | None  # trailing-coordinate polytope; None when q = 0


@dataclass(frozen=True)
class MisDecomposition:
    fiber_records: tuple[Fiber, ...]
    ray_families: tuple[SimpleCone, ...]

    @property
    def fibers(self) -> tuple[HPolyhedron, ...]:
        return tuple(f.polyhedron for f in self.fiber_records)


def _ray_families(vrep: VPolyhedron) -> list[tuple[tuple[int, ...], SimpleCone]]:
    """All simple families: the nonempty linearly independent ray subsets, or
    the single empty family when the polyhedron is bounded."""
    if not vrep.rays:
        return [((), SimpleCone(()))]
    n = vrep.rays[0].dim
    families = []
    for size in range(1, min(len(vrep.rays), n) + 1):
        for subset in combinations(range(len(vrep.rays)), size):
            chosen = tuple(vrep.rays[i] for i in subset)
            if rank(QMatrix.from_rows([r.entries for r in chosen], n)) == size:
                families.append((subset, SimpleCone(chosen)))
    return families


def _window_points(vrep: VPolyhedron, family: SimpleCone, dim: int) -> list[QVector]:
    """Candidate vertex set of B^K: vertices shifted by every ray subset."""
    points = set(vrep.vertices)
    for size in range(1, len(family.rays) + 1):
        for subset in combinations(family.rays, size):
            shift = QVector.zero(dim)
            for r in subset:
                shift = shift + r
            points.update(v + shift for v in vrep.vertices)
    return sorted(points)


def _window_polytope(s: MixedIntegerSet, vrep: VPolyhedron, family: SimpleCone) -> HPolyhedron:
    """H-description of B^K = conv(vertices) + sum of segments [0, ray]."""
    if not family.rays:
        # bounded polyhedron: conv(vertices) is P itself
        return s.polyhedron
    return polytope_hull(_window_points(vrep, family, s.polyhedron.dim))


def _integer_prefixes(points: list[QVector], p: int) -> Iterator[QVector]:
    """Integer points of the bounding box of the first p coordinates."""
    if p == 0:
        yield QVector.of([])
        return
    ranges = []
    for t in range(p):
        values = [pt[t] for pt in points]
        lo = math.ceil(min(values))
        hi = math.floor(max(values))
        if lo > hi:
            return
        ranges.append(range(lo, hi + 1))
    for combo in product(*ranges):
        yield QVector.of(combo)


def _build_fiber(
    window: HPolyhedron, y: QVector, family_index: int, p: int
) -> Fiber | None:
    n = window.dim
    q = n - p
    if q == 0:
        if not window.contains(y):
            return None
        poly = window
        for t in range(p):
            poly = poly.with_equality(QVector.unit(t, n), y[t])
        return Fiber(poly, y, family_index, (y,), None)
    reduced = restrict_prefix(window, y)
    verts = h_to_v(reduced).vertices
    if not verts:
        return None
    lifted = tuple(sorted(y.concat(z) for z in verts))
    poly = window
    for t in range(p):
        poly = poly.with_equality(QVector.unit(t, n), y[t])
    return Fiber(poly, y, family_index, lifted, reduced)


def decompose_mixed_integer_set(s: MixedIntegerSet, max_fibers: int = 20000) -> MisDecomposition:
    """Materialize the fiber/ray-family decomposition of a pointed set.

    Emits only nonempty fibers.  An empty polyhedron yields an empty
    decomposition.  Raises :class:`NotPointed` for non-pointed input and
    ValueError when the fiber count exceeds ``max_fibers``.
    """
    if not is_pointed(s.polyhedron):
        raise NotPointed("decomposition requires a pointed polyhedron")
    vrep = h_to_v(s.polyhedron)
    if vrep.is_empty:
        return MisDecomposition((), ())
    families = _ray_families(vrep)
    records: list[Fiber] = []
    for family_index, (_, family) in enumerate(families):
        window = _window_polytope(s, vrep, family)
        points = _window_points(vrep, family, s.polyhedron.dim)
        for y in _integer_prefixes(points, s.integer_count):
            fiber = _build_fiber(window, y, family_index, s.integer_count)
            if fiber is None:
                continue
            records.append(fiber)
            if len(records) > max_fibers:
                raise ValueError(f"decomposition exceeds {max_fibers} fibers")
    return MisDecomposition(tuple(records), tuple(f for _, f in families))


def mip_point(s: MixedIntegerSet) -> QVector | None:
    """A point of the mixed-integer set of small encoding size, or None when
    the set is empty.  The point is a vertex of the first nonempty fiber over
    the maximal simple ray families (any simple family extends to a maximal
    one whose window contains the same base points)."""
    if not is_pointed(s.polyhedron):
        raise NotPointed("mixed-integer search requires a pointed polyhedron")
    vrep = h_to_v(s.polyhedron)
    if vrep.is_empty:
        return None
    families = _ray_families(vrep)
    index_sets = [idx for idx, _ in families]
    maximal = [
        (idx, fam)
        for idx, fam in families
        if not any(set(idx) < set(other) for other in index_sets)
    ]
    for family_index, (_, family) in enumerate(maximal):
        window = _window_polytope(s, vrep, family)
        points = _window_points(vrep, family, s.polyhedron.dim)
        for y in _integer_prefixes(points, s.integer_count):
            fiber = _build_fiber(window, y, family_index, s.integer_count)
            if fiber is not None:
                return min(fiber.vertices)
    return None
