"""Shared builders and independent oracles for the test suite.

The grid oracle works in scaled integer arithmetic (numpy int64), so it is
exact and shares nothing with the library's Fraction-based kernels.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import product

import numpy as np

from miqpcert import (
    HPolyhedron,
    MiqpInstance,
    QMatrix,
    QVector,
    QuadraticForm,
    h_to_v,
)


def vec(*values) -> QVector:
    return QVector.of(values)


def mat(rows) -> QMatrix:
    return QMatrix.from_rows(rows)


def hpoly(rows, rhs) -> HPolyhedron:
    return HPolyhedron(QMatrix.from_rows(rows), QVector.of(rhs))


def instance(h_rows, c, d, a_rows, b, p) -> MiqpInstance:
    n = len(c)
    quad = QuadraticForm(QMatrix.from_rows(h_rows, n), QVector.of(c), Fraction(d))
    poly = HPolyhedron(QMatrix.from_rows(a_rows, n), QVector.of(b))
    return MiqpInstance(quad, poly, p)


def random_symmetric(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(lo, hi)
    return m


def random_boxed_instance(rng: random.Random, max_dim: int = 3) -> tuple[MiqpInstance, int]:
    """Instance with integer data in [-5, 5] and explicit box constraints;
    returns (instance, box radius) with every feasible integer part provably
    inside the box."""
    n = rng.randint(1, max_dim)
    p = rng.randint(0, n)
    h = random_symmetric(rng, n)
    c = [rng.randint(-5, 5) for _ in range(n)]
    d = rng.randint(-5, 5)
    box = rng.randint(1, 4)
    rows = []
    rhs = []
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        rows.append(list(unit))
        rhs.append(box)
        rows.append([-u for u in unit])
        rhs.append(box)
    for _ in range(rng.randint(0, 2)):
        rows.append([rng.randint(-3, 3) for _ in range(n)])
        rhs.append(rng.randint(-3, 5))
    return instance(h, c, d, rows, rhs, p), box


def random_bounded_polytope(rng: random.Random, n: int) -> HPolyhedron:
    """Nonempty bounded polytope: a box plus a few random cuts that keep the
    origin-ish point feasible."""
    while True:
        box = rng.randint(1, 3)
        rows = []
        rhs = []
        for i in range(n):
            unit = [0] * n
            unit[i] = 1
            rows.append(list(unit))
            rhs.append(box)
            rows.append([-u for u in unit])
            rhs.append(box)
        for _ in range(rng.randint(0, 3)):
            row = [rng.randint(-3, 3) for _ in range(n)]
            rows.append(row)
            rhs.append(rng.randint(0, 5))  # keeps x = 0 feasible
        poly = hpoly(rows, rhs)
        if not h_to_v(poly).is_empty:
            return poly


def _clear_row(row, rhs) -> tuple[list[int], int]:
    den = math.lcm(*(Fraction(v).denominator for v in list(row) + [rhs]))
    return [int(Fraction(v) * den) for v in row], int(Fraction(rhs) * den)


def grid_min_scaled(inst_quad: QuadraticForm, poly: HPolyhedron, bounds, den: int = 8):
    """Exact minimum of the quadratic over grid points of step 1/den inside
    the given integer coordinate bounds, restricted to the polytope.

    Returns (min of den^2 * Q over feasible grid points, count) with the
    minimum as a python int, or (None, 0) when no grid point is feasible.
    All arithmetic is integer (object dtype guards against overflow).
    """
    n = poly.dim
    axes = [np.arange(lo * den, hi * den + 1, dtype=object) for lo, hi in bounds]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)  # scaled by den
    keep = np.ones(len(pts), dtype=bool)
    for i in range(poly.num_rows):
        row, rhs = _clear_row(poly.a.entries[i], poly.b[i])
        keep &= pts @ np.array(row, dtype=object) <= rhs * den
    pts = pts[keep]
    if len(pts) == 0:
        return None, 0
    # the corpora feeding this oracle always carry integer H, c, d
    assert all(v.denominator == 1 for row in inst_quad.h.entries for v in row)
    assert all(v.denominator == 1 for v in inst_quad.c.entries)
    assert inst_quad.d.denominator == 1
    h_int = np.array([[int(v) for v in row] for row in inst_quad.h.entries], dtype=object)
    c_int = np.array([int(v) for v in inst_quad.c.entries], dtype=object)
    quad = np.einsum("ij,jk,ik->i", pts, h_int, pts)
    lin = (pts @ c_int) * den
    values = quad + lin + int(inst_quad.d) * den * den
    return int(values.min()), len(pts)


def sample_in_polytope(rng: random.Random, vertices) -> QVector:
    """Random rational convex combination of the vertices."""
    weights = [Fraction(rng.randint(0, 4)) for _ in vertices]
    if sum(weights) == 0:
        weights[rng.randrange(len(weights))] = Fraction(1)
    total = sum(weights)
    point = vertices[0].scale(Fraction(0))
    for w, v in zip(weights, vertices):
        point = point + v.scale(w / total)
    return point


def sample_in_cone(rng: random.Random, rays, max_scale: int = 3) -> QVector:
    """Random small non-negative rational combination of the rays."""
    point = rays[0].scale(Fraction(0))
    for r in rays:
        point = point + r.scale(Fraction(rng.randint(0, max_scale), rng.randint(1, 3)))
    return point


def max_cut_value(edges: list[tuple[int, int]], num_vertices: int) -> int:
    best = 0
    for mask in range(2**num_vertices):
        cut = sum(1 for a, b in edges if ((mask >> a) & 1) != ((mask >> b) & 1))
        best = max(best, cut)
    return best


def all_graphs(num_vertices: int):
    """Every labeled graph on the given vertex count, as edge lists."""
    pairs = [(i, j) for i in range(num_vertices) for j in range(i + 1, num_vertices)]
    for mask in range(2 ** len(pairs)):
        yield [e for i, e in enumerate(pairs) if (mask >> i) & 1]


def enumerate_integer_box(radius: int, dim: int):
    return product(range(-radius, radius + 1), repeat=dim)


def decomposition_covers_point(dec, f, x) -> bool:
    """Exact membership of x in the union of fiber + intcone(family) pairs.

    Complete: any witnessing multiplier tuple m satisfies
    sum(m_j f.r_j) = f.x - f.(x - w) <= f.x - min f over the fiber, so the
    budgeted enumeration always reaches it.  f may be None only when the
    decomposition has no rays.
    """
    for family in dec.ray_families:
        rays = family.rays
        for fib in dec.fiber_records:
            if not rays:
                if fib.polyhedron.contains(x):
                    return True
                continue
            lo = min(f.dot(v) for v in fib.vertices)
            budget = f.dot(x) - lo
            if budget < 0:
                continue
            f_values = [f.dot(r) for r in rays]
            assert all(fv > 0 for fv in f_values)
            caps = [int((budget / fv).__floor__()) for fv in f_values]
            for counts in product(*(range(c + 1) for c in caps)):
                if sum(m * fv for m, fv in zip(counts, f_values)) > budget:
                    continue
                w = x.scale(0)
                for m, r in zip(counts, rays):
                    w = w + r.scale(m)
                if fib.polyhedron.contains(x - w):
                    return True
    return False


def family_index_by_rays(dec, rays) -> int:
    key = frozenset(rays)
    for i, fam in enumerate(dec.ray_families):
        if frozenset(fam.rays) == key:
            return i
    raise AssertionError(f"no family with rays {rays}")
