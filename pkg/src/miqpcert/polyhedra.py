"""Rational polyhedra: H- and V-descriptions, cones, and conversions.

All enumeration here is desk scale and exact: vertices come from independent
row subsets, extreme rays from independent (n-1)-subsets, facets of a point
set from affinely independent d-subsets.  Deterministic throughout; ties are
broken by lexicographic order on rational tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

from .linalg import (
    DimensionMismatch,
    QMatrix,
    QVector,
    nullspace_basis,
    rank,
    solve_linear_system,
)


class NotPointed(ValueError):
    """Operation requires a pointed polyhedron or cone."""


class NotInCone(ValueError):
    """Vector is not a member of the given cone."""


def primitivize(v: QVector) -> QVector:
    """Scale a nonzero vector to the integral primitive of its direction
    (positive scaling only: the sign pattern is preserved)."""
    if v.is_zero():
        raise ValueError("zero vector has no primitive form")
    scale = math.lcm(*(e.denominator for e in v.entries))
    ints = [int(e * scale) for e in v.entries]
    g = math.gcd(*ints)
    return QVector.of(x // g for x in ints)


@dataclass(frozen=True)
class HPolyhedron:
    """{x : Ax <= b}.  m >= 0 rows, n >= 1 columns."""

    a: QMatrix
    b: QVector

    def __post_init__(self) -> None:
        if self.a.rows != self.b.dim:
            raise DimensionMismatch("row count of A must match dim of b")
        if self.a.cols < 1:
            raise ValueError("ambient dimension must be positive")

    @property
    def dim(self) -> int:
        return self.a.cols

    @property
    def num_rows(self) -> int:
        return self.a.rows

    def contains(self, x: QVector) -> bool:
        return not self.violated_rows(x)

    def violated_rows(self, x: QVector) -> tuple[int, ...]:
        if x.dim != self.dim:
            raise DimensionMismatch(f"point dim {x.dim} vs ambient {self.dim}")
        ax = self.a.matvec(x)
        return tuple(i for i in range(self.a.rows) if ax[i] > self.b[i])

    def with_rows(self, rows: Sequence[QVector], rhs: Sequence[Fraction]) -> "HPolyhedron":
        extra = QMatrix.from_rows([r.entries for r in rows], self.dim)
        return HPolyhedron(self.a.stack(extra), self.b.concat(QVector.of(rhs)))

    def with_equality(self, normal: QVector, value: Fraction) -> "HPolyhedron":
        return self.with_rows([normal, -normal], [value, -value])

    def translate(self, w: QVector) -> "HPolyhedron":
        """Shifted copy {x : x - w in self}."""
        return HPolyhedron(self.a, self.b + self.a.matvec(w))


@dataclass(frozen=True)
class VPolyhedron:
    """conv(vertices) + cone(rays); rays are integral primitive vectors."""

    vertices: tuple[QVector, ...]
    rays: tuple[QVector, ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.rays


@dataclass(frozen=True)
class SimpleCone:
    """Cone spanned by linearly independent integral rays (simplicity means
    exactly that: ray count equals cone dimension)."""

    rays: tuple[QVector, ...]

    def __post_init__(self) -> None:
        for r in self.rays:
            if not r.is_integral():
                raise ValueError(f"ray {r} is not integral")
        if self.rays:
            m = QMatrix.from_rows([r.entries for r in self.rays])
            if rank(m) != len(self.rays):
                raise ValueError("rays are linearly dependent; cone is not simple")

    @property
    def dim(self) -> int:
        return len(self.rays)

    def multipliers(self, x: QVector) -> QVector | None:
        """The unique mu >= 0 with sum(mu_j rays_j) = x, or None."""
        if not self.rays:
            return QVector.of([]) if x.is_zero() else None
        cols = QMatrix.from_rows([r.entries for r in self.rays]).transpose()
        sol = solve_linear_system(cols, x)
        if sol is None:
            return None
        assert sol.is_unique
        if any(m < 0 for m in sol.particular):
            return None
        return sol.particular

    def contains(self, x: QVector) -> bool:
        return self.multipliers(x) is not None

    def to_hpolyhedron(self, ambient_dim: int) -> HPolyhedron:
        """Exact inequality description of the cone in R^ambient_dim."""
        n = ambient_dim
        if not self.rays:
            ident = QMatrix.identity(n)
            rows = list(ident.entries) + [(-v).entries for v in map(QVector, ident.entries)]
            a = QMatrix.from_rows(rows, n)
            return HPolyhedron(a, QVector.zero(2 * n))
        k = len(self.rays)
        ray_rows = QMatrix.from_rows([r.entries for r in self.rays], n)  # k x n
        gram = QMatrix.from_rows(
            [[self.rays[i].dot(self.rays[j]) for j in range(k)] for i in range(k)]
        )
        # left inverse L = (R^T R)^{-1} R^T, so L x recovers the multipliers
        l_rows = []
        for i in range(k):
            sol = solve_linear_system(gram, QVector.unit(i, k))
            assert sol is not None and sol.is_unique
            l_rows.append(
                QVector.of(
                    sum(sol.particular[j] * self.rays[j][t] for j in range(k)) for t in range(n)
                )
            )
        rows = [(-l).entries for l in l_rows]  # multipliers >= 0
        for c in nullspace_basis(ray_rows):  # x confined to span(rays)
            rows.append(c.entries)
            rows.append((-c).entries)
        a = QMatrix.from_rows(rows, n)
        return HPolyhedron(a, QVector.zero(a.rows))


# ---------------------------------------------------------------------------
# basic operations


def recession_cone(p: HPolyhedron) -> HPolyhedron:
    """{x : Ax <= 0}: the right-hand sides zeroed."""
    return HPolyhedron(p.a, QVector.zero(p.num_rows))


def is_pointed(p: HPolyhedron) -> bool:
    """Lineality space {x : Ax = 0} is trivial iff rank(A) = n."""
    return rank(p.a) == p.dim


def iter_orthant_parts(p: HPolyhedron) -> Iterator[tuple[tuple[int, ...], HPolyhedron]]:
    """Sign-restricted parts of p, one per sign pattern, all-nonnegative first."""
    n = p.dim
    for signs in product((1, -1), repeat=n):
        rows = []
        rhs = []
        for i, s in enumerate(signs):
            unit = QVector.unit(i, n)
            rows.append(-unit if s > 0 else unit)
            rhs.append(Fraction(0))
        yield signs, p.with_rows(rows, rhs)


def orthant_split(p: HPolyhedron) -> list[HPolyhedron]:
    """All 2^n sign-restricted parts; their union is p and each part is
    pointed (the sign rows alone have rank n)."""
    return [part for _, part in iter_orthant_parts(p)]


# ---------------------------------------------------------------------------
# H -> V conversion


def independent_row_subsets(rows: Sequence[QVector], size: int) -> Iterator[tuple[int, ...]]:
    """Index subsets of the given size whose rows are linearly independent,
    in lexicographic order.  Dependent prefixes are pruned by keeping an
    incremental elimination basis."""
    if size == 0:
        yield ()
        return
    total = len(rows)
    if size > total:
        return
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []

    def reduce(vec: QVector) -> tuple[list[Fraction], int] | None:
        v = list(vec.entries)
        for prow, pcol in zip(basis, pivots):
            if v[pcol] != 0:
                f = v[pcol]
                v = [a - f * b for a, b in zip(v, prow)]
        for j, val in enumerate(v):
            if val != 0:
                inv = 1 / val
                return [a * inv for a in v], j
        return None

    def walk(start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for i in range(start, total - (size - len(chosen)) + 1):
            red = reduce(rows[i])
            if red is None:
                continue
            basis.append(red[0])
            pivots.append(red[1])
            chosen.append(i)
            yield from walk(i + 1)
            basis.pop()
            pivots.pop()
            chosen.pop()

    yield from walk(0)


@lru_cache(maxsize=4096)
def h_to_v(p: HPolyhedron) -> VPolyhedron:
    """Exact vertex and extreme-ray enumeration of a pointed polyhedron.

    An empty polyhedron yields empty vertex and ray lists.  Raises
    :class:`NotPointed` when rank(A) < n.
    """
    m, n = p.a.rows, p.a.cols
    if rank(p.a) < n:
        raise NotPointed("polyhedron has a nontrivial lineality space")
    rows = [p.a.row(i) for i in range(m)]
    vertices = set()
    for idx in independent_row_subsets(rows, n):
        sub = QMatrix.from_rows([p.a.entries[i] for i in idx], n)
        sol = solve_linear_system(sub, QVector.of(p.b[i] for i in idx))
        assert sol is not None and sol.is_unique
        if p.contains(sol.particular):
            vertices.add(sol.particular)
    if not vertices:
        return VPolyhedron((), ())
    rays = set()
    for idx in independent_row_subsets(rows, n - 1):
        sub = QMatrix.from_rows([p.a.entries[i] for i in idx], n)
        null = nullspace_basis(sub)
        if len(null) != 1:
            continue
        g = primitivize(null[0])
        for cand in (g, -g):
            if all(row.dot(cand) <= 0 for row in rows):
                rays.add(primitivize(cand))
    result = VPolyhedron(tuple(sorted(vertices)), tuple(sorted(rays)))
    assert all(p.contains(v) for v in result.vertices)
    assert all(all(row.dot(r) <= 0 for row in rows) for r in result.rays)
    return result


# ---------------------------------------------------------------------------
# Caratheodory selection and faces


def caratheodory_simple_cone(
    rays: Sequence[QVector], r: QVector
) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """A linearly independent subset K of rays with r = sum of mu_j rays[j],
    mu >= 0, verified by substitution.  Raises NotInCone otherwise."""
    n = r.dim
    for size in range(0, min(len(rays), n) + 1):
        for subset in combinations(range(len(rays)), size):
            if size == 0:
                if r.is_zero():
                    return (), ()
                continue
            sub_rows = QMatrix.from_rows([rays[i].entries for i in subset], n)
            if rank(sub_rows) != size:
                continue
            sol = solve_linear_system(sub_rows.transpose(), r)
            if sol is None:
                continue
            assert sol.is_unique
            mu = sol.particular
            if any(v < 0 for v in mu):
                continue
            combo = QVector.zero(n)
            for j, i in enumerate(subset):
                combo = combo + rays[i].scale(mu[j])
            assert combo == r
            return subset, tuple(mu.entries)
    raise NotInCone(f"{r} is not a non-negative combination of the given rays")


def faces_of_simple_cone(cone: SimpleCone) -> list[SimpleCone]:
    """All 2^k ray-subset faces, from the apex {0} up to the cone itself."""
    faces = []
    for size in range(0, len(cone.rays) + 1):
        for subset in combinations(range(len(cone.rays)), size):
            faces.append(SimpleCone(tuple(cone.rays[i] for i in subset)))
    return faces


# ---------------------------------------------------------------------------
# V -> H conversion for polytopes (desk scale, needed for fiber emission)


def _canonical_facet(normal: QVector, offset: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
    prim = primitivize(normal)
    factor = None
    for a, b in zip(prim.entries, normal.entries):
        if b != 0:
            factor = a / b
            break
    assert factor is not None and factor > 0
    return prim.entries, offset * factor


def polytope_hull(points: Sequence[QVector]) -> HPolyhedron:
    """Exact inequality description of conv(points).

    Affine-hull equalities are emitted as row pairs; facets are found by
    enumerating affinely independent d-subsets in hull coordinates.
    """
    if not points:
        raise ValueError("hull of an empty point set")
    pts = sorted(set(points))
    n = pts[0].dim
    base = pts[0]
    diffs = [p - base for p in pts[1:]]
    basis: list[QVector] = []
    for d in diffs:
        trial = QMatrix.from_rows([v.entries for v in basis + [d]], n)
        if rank(trial) == len(basis) + 1:
            basis.append(d)
    dim = len(basis)
    rows: list[QVector] = []
    rhs: list[Fraction] = []
    if dim < n:
        span_rows = QMatrix.from_rows([v.entries for v in basis], n)
        for c in nullspace_basis(span_rows):
            rows.extend([c, -c])
            rhs.extend([c.dot(base), -c.dot(base)])
    if dim == 0:
        return HPolyhedron(QMatrix.from_rows([r.entries for r in rows], n), QVector.of(rhs))
    # local coordinates: p = base + B xi, solved exactly per point
    basis_cols = QMatrix.from_rows([v.entries for v in basis], n).transpose()
    local = []
    for p in pts:
        sol = solve_linear_system(basis_cols, p - base)
        assert sol is not None and sol.is_unique
        local.append(sol.particular)
    # left inverse of B for pulling facet normals back to ambient space
    gram = QMatrix.from_rows([[basis[i].dot(basis[j]) for j in range(dim)] for i in range(dim)])
    left_inverse_rows = []
    for i in range(dim):
        sol = solve_linear_system(gram, QVector.unit(i, dim))
        assert sol is not None and sol.is_unique
        left_inverse_rows.append(
            QVector.of(
                sum(sol.particular[j] * basis[j][t] for j in range(dim)) for t in range(n)
            )
        )
    seen = set()
    for subset in combinations(range(len(local)), dim):
        anchor = local[subset[0]]
        span = QMatrix.from_rows([(local[i] - anchor).entries for i in subset[1:]], dim)
        null = nullspace_basis(span)
        if len(null) != 1:
            continue  # not affinely independent
        g = null[0]
        h = g.dot(anchor)
        values = [g.dot(xi) for xi in local]
        if all(v <= h for v in values):
            pass
        elif all(v >= h for v in values):
            g, h = -g, -h
        else:
            continue
        key = _canonical_facet(g, h)
        if key in seen:
            continue
        seen.add(key)
        ambient_normal = QVector.of(
            sum(g[j] * left_inverse_rows[j][t] for j in range(dim)) for t in range(n)
        )
        rows.append(ambient_normal)
        rhs.append(h + ambient_normal.dot(base))
    hull = HPolyhedron(QMatrix.from_rows([r.entries for r in rows], n), QVector.of(rhs))
    assert all(hull.contains(p) for p in pts)
    return hull


def cone_hull(rays: Sequence[QVector]) -> HPolyhedron:
    """Exact inequality description of the pointed cone spanned by the rays.

    Facets of a pointed cone pass through the origin and are spanned by
    linearly independent ray subsets with all rays on one side; lower
    dimensional cones get affine-hull equalities as row pairs.
    """
    if not rays:
        raise ValueError("hull of an empty ray set")
    gens = sorted(set(rays))
    n = gens[0].dim
    if any(r.is_zero() for r in gens):
        raise ValueError("zero vector is not a ray")
    basis: list[QVector] = []
    for r in gens:
        trial = QMatrix.from_rows([v.entries for v in basis + [r]], n)
        if rank(trial) == len(basis) + 1:
            basis.append(r)
    dim = len(basis)
    rows: list[QVector] = []
    rhs: list[Fraction] = []
    if dim < n:
        span_rows = QMatrix.from_rows([v.entries for v in basis], n)
        for c in nullspace_basis(span_rows):
            rows.extend([c, -c])
            rhs.extend([Fraction(0), Fraction(0)])
    basis_cols = QMatrix.from_rows([v.entries for v in basis], n).transpose()
    local = []
    for r in gens:
        sol = solve_linear_system(basis_cols, r)
        assert sol is not None and sol.is_unique
        local.append(sol.particular)
    gram = QMatrix.from_rows([[basis[i].dot(basis[j]) for j in range(dim)] for i in range(dim)])
    left_inverse_rows = []
    for i in range(dim):
        sol = solve_linear_system(gram, QVector.unit(i, dim))
        assert sol is not None and sol.is_unique
        left_inverse_rows.append(
            QVector.of(
                sum(sol.particular[j] * basis[j][t] for j in range(dim)) for t in range(n)
            )
        )
    seen = set()
    for subset in combinations(range(len(local)), dim - 1):
        span = QMatrix.from_rows([local[i].entries for i in subset], dim)
        null = nullspace_basis(span)
        if len(null) != 1:
            continue
        g = null[0]
        values = [g.dot(xi) for xi in local]
        if all(v <= 0 for v in values):
            pass
        elif all(v >= 0 for v in values):
            g = -g
        else:
            continue
        key = primitivize(g).entries
        if key in seen:
            continue
        seen.add(key)
        ambient_normal = QVector.of(
            sum(g[j] * left_inverse_rows[j][t] for j in range(dim)) for t in range(n)
        )
        rows.append(ambient_normal)
        rhs.append(Fraction(0))
    hull = HPolyhedron(QMatrix.from_rows([r.entries for r in rows], n), QVector.of(rhs))
    assert all(hull.contains(r) for r in gens)
    return hull


# ---------------------------------------------------------------------------
# prefix substitution (fixing the leading integer coordinates)


def restrict_prefix(p: HPolyhedron, y: QVector) -> HPolyhedron:
    """The polyhedron of trailing coordinates once the first len(y) are fixed
    to y.  Requires at least one trailing coordinate."""
    k = y.dim
    q = p.dim - k
    if q < 1:
        raise ValueError("no trailing coordinates left")
    rows = [row[k:] for row in p.a.entries]
    rhs = [
        p.b[i] - sum(p.a.entries[i][j] * y[j] for j in range(k)) for i in range(p.num_rows)
    ]
    return HPolyhedron(QMatrix.from_rows(rows, q), QVector.of(rhs))


def prefix_feasible(p: HPolyhedron, y: QVector) -> bool:
    """Row check for the degenerate q = 0 case where y is the whole point."""
    if y.dim != p.dim:
        raise DimensionMismatch("prefix must cover all coordinates here")
    return p.contains(y)
