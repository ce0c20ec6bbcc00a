"""Feasibility certificates for one quadratic inequality over a mixed-integer
polyhedral set.

Decides whether { x : x^T H x + c^T x + d <= 0, Ax <= b, first p coords
integral } is nonempty and, when it is, constructs a rational witness of
small encoding size.  The search splits into sign-restricted pointed parts
when needed, then branches on the sign of the minimum of x^T H x over a
normalized slice of the recession cone:

* negative minimum: shoot from any mixed-integer point along the negative
  direction far enough that the concave parabola in the step length dips
  below zero;
* non-negative minimum: decompose the set into fibers plus integer ray
  families, split each family along zero-curvature structure, descend along
  a flat ray with negative linear rate if one exists, and otherwise scan the
  bounded residual window with the exact QP kernel.

Every certificate is re-verified exactly before being returned.  Orthant
parts and (fiber, family, piece) branches are mutually independent; a
parallel driver may race them as long as wins resolve in the same
lexicographic order, which is why the sequential search is the reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cones import normalizing_hyperplane, simple_cone_decomposition
from .linalg import (
    DimensionMismatch,
    EncodingSize,
    QVector,
    encoding_size,
    isqrt_ceil,
)
from .milp import Fiber, MixedIntegerSet, decompose_mixed_integer_set, mip_point
from .polyhedra import (
    HPolyhedron,
    SimpleCone,
    h_to_v,
    is_pointed,
    iter_orthant_parts,
    primitivize,
    recession_cone,
)
from .qp import QuadraticForm, eval_quadratic, min_quadratic_on_cone_slice, qp_global_min, restrict_quadratic

_WINDOW_ENUM_CAP = 10**6


class CertifierError(RuntimeError):
    """Internal invariant violation.  Surfaces as a diagnostic instead of a
    wrong verdict."""


@dataclass(frozen=True)
class MiqpInstance:
    """The full feasibility system: quadratic row, linear rows, integrality."""

    quad: QuadraticForm
    polyhedron: HPolyhedron
    integer_count: int

    def __post_init__(self) -> None:
        if self.quad.dim != self.polyhedron.dim:
            raise DimensionMismatch("quadratic and polyhedron dimensions differ")
        if not 0 <= self.integer_count <= self.polyhedron.dim:
            raise ValueError("integer count out of range")

    @property
    def dim(self) -> int:
        return self.polyhedron.dim

    @property
    def bit_size(self) -> EncodingSize:
        """Encoding size of the instance data {H, c, d, A, b}."""
        return (
            encoding_size(self.quad.h)
            + encoding_size(self.quad.c)
            + encoding_size(self.quad.d)
            + encoding_size(self.polyhedron.a)
            + encoding_size(self.polyhedron.b)
        )


@dataclass(frozen=True)
class SearchTrace:
    """Which branch of the search produced a certificate."""

    orthant: tuple[int, ...] | None
    branch: str  # "negative-ray" | "linear-ray" | "window-qp"
    fiber_index: int | None = None
    family_index: int | None = None
    piece_index: int | None = None
    ray_index: int | None = None
    step: int | None = None  # descent scaling (lambda or mu)
    shift: tuple[int, ...] | None = None  # residual-window ray multipliers
    norm_bound: int | None = None  # derived certificate norm bound, window branch

    def tag(self) -> str:
        def fmt(v: int | None) -> str:
            return "-" if v is None else str(v)

        orthant = "all" if self.orthant is None else "".join("+" if s > 0 else "-" for s in self.orthant)
        shift = "-" if self.shift is None else (",".join(str(x) for x in self.shift) or "()")
        parts = [
            f"orthant={orthant}",
            f"branch={self.branch}",
            f"fiber={fmt(self.fiber_index)}",
            f"family={fmt(self.family_index)}",
            f"piece={fmt(self.piece_index)}",
            f"ray={fmt(self.ray_index)}",
            f"step={fmt(self.step)}",
            f"shift={shift}",
            f"bound={fmt(self.norm_bound)}",
        ]
        return ";".join(parts)

    @staticmethod
    def from_tag(tag: str) -> "SearchTrace":
        fields = dict(item.split("=", 1) for item in tag.split(";"))

        def opt_int(key: str) -> int | None:
            v = fields[key]
            return None if v == "-" else int(v)

        orthant = None
        if fields["orthant"] != "all":
            orthant = tuple(1 if ch == "+" else -1 for ch in fields["orthant"])
        shift = None
        if fields["shift"] != "-":
            raw = fields["shift"]
            shift = () if raw == "()" else tuple(int(x) for x in raw.split(","))
        return SearchTrace(
            orthant=orthant,
            branch=fields["branch"],
            fiber_index=opt_int("fiber"),
            family_index=opt_int("family"),
            piece_index=opt_int("piece"),
            ray_index=opt_int("ray"),
            step=opt_int("step"),
            shift=shift,
            norm_bound=opt_int("bound"),
        )


@dataclass(frozen=True)
class Certificate:
    point: QVector
    size: EncodingSize
    trace: SearchTrace


@dataclass(frozen=True)
class VerificationReport:
    violated_rows: tuple[int, ...]
    integral: bool
    q_value: Fraction
    size: EncodingSize

    @property
    def linear_ok(self) -> bool:
        return not self.violated_rows

    @property
    def feasible(self) -> bool:
        return self.linear_ok and self.q_value <= 0

    @property
    def ok(self) -> bool:
        return self.feasible and self.integral


def verify_certificate(inst: MiqpInstance, x: QVector) -> VerificationReport:
    """Exact membership checks for a claimed witness."""
    if x.dim != inst.dim:
        raise DimensionMismatch(f"certificate dim {x.dim} vs instance dim {inst.dim}")
    violated = inst.polyhedron.violated_rows(x)
    integral = x.take(inst.integer_count).is_integral()
    return VerificationReport(violated, integral, eval_quadratic(inst.quad, x), encoding_size(x))


# ---------------------------------------------------------------------------
# exact ceilings of quadratic roots


def _ceil_root(e: Fraction, disc: Fraction, g: Fraction) -> int:
    """ceil((e + sqrt(disc)) / g) computed exactly for disc >= 0, g > 0."""
    assert disc >= 0 and g > 0
    hi = math.ceil((e + isqrt_ceil(disc)) / g)
    lo = math.floor(e / g) - 1  # below (e + 0)/g <= true root

    def reaches(k: int) -> bool:
        lhs = g * k - e
        return lhs >= 0 and lhs * lhs >= disc

    assert reaches(hi)
    while hi - lo > 1:
        mid = (hi + lo) // 2
        if reaches(mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# driver


def find_certificate(inst: MiqpInstance) -> Certificate | None:
    """A verified feasibility certificate, or None when the system has no
    solution.  Deterministic: reruns reproduce the identical certificate."""
    if is_pointed(inst.polyhedron):
        parts = [(None, inst.polyhedron)]
    else:
        parts = list(iter_orthant_parts(inst.polyhedron))
    for signs, part in parts:
        if h_to_v(part).is_empty:
            continue
        cert = certify_pointed_part(inst, part, signs)
        if cert is not None:
            report = verify_certificate(inst, cert.point)
            if not report.ok:
                raise CertifierError(f"constructed point fails verification: {cert}")
            return cert
    return None


def certify_pointed_part(
    inst: MiqpInstance, part: HPolyhedron, signs: tuple[int, ...] | None
) -> Certificate | None:
    """Branch on the sign of min r^T H r over a normalized recession slice."""
    rec = recession_cone(part)
    rays = h_to_v(rec).rays
    if not rays:
        return nonnegative_recession_search(inst, part, None, signs)
    f = normalizing_hyperplane(rays).f
    slice_min = min_quadratic_on_cone_slice(inst.quad.h, rec, f)
    if slice_min.value < 0:
        return negative_ray_certificate(inst, part, slice_min.minimizer, signs)
    return nonnegative_recession_search(inst, part, f, signs)


def negative_ray_certificate(
    inst: MiqpInstance, part: HPolyhedron, direction: QVector, signs: tuple[int, ...] | None
) -> Certificate | None:
    """Witness from a strictly negative recession direction: start at any
    mixed-integer point and step just past the larger parabola root."""
    r = primitivize(direction)
    base = mip_point(MixedIntegerSet(part, inst.integer_count))
    if base is None:
        return None  # the part holds no mixed-integer point at all
    hr = inst.quad.h.matvec(r)
    lead = r.dot(hr)
    if lead >= 0:
        raise CertifierError("descent direction lost its negative curvature")
    slope = 2 * base.dot(hr) + inst.quad.c.dot(r)
    const = eval_quadratic(inst.quad, base)
    disc = slope * slope - 4 * lead * const
    if disc < 0:
        step = 0  # parabola opens downward with no real roots: negative everywhere
    else:
        step = max(0, _ceil_root(slope, disc, 2 * (-lead)))
    point = base + r.scale(step)
    trace = SearchTrace(orthant=signs, branch="negative-ray", step=step)
    return Certificate(point, encoding_size(point), trace)


def nonnegative_recession_search(
    inst: MiqpInstance, part: HPolyhedron, f: QVector | None, signs: tuple[int, ...] | None
) -> Certificate | None:
    """Search the fiber/family decomposition, splitting each family along the
    quadratic's zero set, in deterministic lexicographic order."""
    dec = decompose_mixed_integer_set(MixedIntegerSet(part, inst.integer_count))
    if not dec.fiber_records:
        return None
    pieces_of_family: dict[int, tuple[SimpleCone, ...]] = {}
    for fiber_index, fiber in enumerate(dec.fiber_records):
        for family_index, family in enumerate(dec.ray_families):
            if family_index not in pieces_of_family:
                pieces_of_family[family_index] = simple_cone_decomposition(
                    inst.quad.h, family
                ).pieces
            for piece_index, piece in enumerate(pieces_of_family[family_index]):
                flat = [
                    i
                    for i, ray in enumerate(piece.rays)
                    if ray.dot(inst.quad.h.matvec(ray)) == 0
                ]
                for ray_index in flat:
                    found = linear_descent_step(inst.quad, fiber, piece.rays, ray_index)
                    if found is None:
                        continue
                    start, rate = found
                    assert rate < 0
                    mu = max(0, math.ceil(eval_quadratic(inst.quad, start) / (-rate)))
                    point = start + piece.rays[ray_index].scale(mu)
                    trace = SearchTrace(
                        orthant=signs,
                        branch="linear-ray",
                        fiber_index=fiber_index,
                        family_index=family_index,
                        piece_index=piece_index,
                        ray_index=ray_index,
                        step=mu,
                    )
                    return Certificate(point, encoding_size(point), trace)
                cert = bounded_window_search(
                    inst,
                    fiber,
                    piece,
                    flat,
                    f,
                    signs,
                    (fiber_index, family_index, piece_index),
                )
                if cert is not None:
                    return cert
    return None


def linear_descent_step(
    quad: QuadraticForm, fiber: Fiber, rays: tuple[QVector, ...], ray_index: int
) -> tuple[QVector, Fraction] | None:
    """Along a flat ray the quadratic changes at the linear rate
    2 x^T H r + c^T r.  Find a point of the fiber plus the other rays'
    integer cone where that rate is negative, or None if its minimum there
    is non-negative."""
    r = rays[ray_index]
    hr = quad.h.matvec(r)
    const = quad.c.dot(r)
    best = min(fiber.vertices, key=lambda v: (2 * v.dot(hr) + const, v))
    value = 2 * best.dot(hr) + const
    if value < 0:
        return best, value
    for j, other in enumerate(rays):
        if j == ray_index:
            continue
        slope = 2 * other.dot(hr)
        if slope < 0:
            eta = max(0, math.ceil(Fraction(value + 1) / (-slope)))
            return best + other.scale(eta), value + eta * slope
    return None


def _fiber_qp(quad: QuadraticForm, prefix: QVector, reduced: HPolyhedron | None, fallback: QVector) -> tuple[Fraction, QVector]:
    """Exact minimum of the quadratic over one fiber (possibly shifted).

    ``fallback`` is the fiber's single point when there are no continuous
    coordinates."""
    if reduced is None:
        return eval_quadratic(quad, fallback), fallback
    inner = quad if prefix.dim == 0 else restrict_quadratic(quad, prefix)
    res = qp_global_min(inner, reduced)
    point = prefix.concat(res.minimizer)
    return eval_quadratic(quad, point), point


def bounded_window_search(
    inst: MiqpInstance,
    fiber: Fiber,
    piece: SimpleCone,
    flat: list[int],
    f: QVector | None,
    signs: tuple[int, ...] | None,
    indices: tuple[int, int, int],
) -> Certificate | None:
    """Residual search once no flat ray descends: curving-ray multipliers are
    bounded through the root of the minorizing parabola, and each shifted
    fiber goes to the exact QP kernel."""
    fiber_index, family_index, piece_index = indices
    curving = [piece.rays[i] for i in range(len(piece.rays)) if i not in flat]
    p = inst.integer_count

    def window_certificate(shift_counts: tuple[int, ...], shift: QVector, bound: int | None) -> Certificate | None:
        prefix = (fiber.integer_part + shift.take(p)) if p else QVector.of([])
        reduced = fiber.reduced.translate(shift.drop(p)) if fiber.reduced is not None else None
        fallback = fiber.vertices[0] + shift if reduced is None else QVector.of([])
        value, point = _fiber_qp(inst.quad, prefix, reduced, fallback)
        if value > 0:
            return None
        trace = SearchTrace(
            orthant=signs,
            branch="window-qp",
            fiber_index=fiber_index,
            family_index=family_index,
            piece_index=piece_index,
            shift=shift_counts,
            norm_bound=bound,
        )
        return Certificate(point, encoding_size(point), trace)

    if not curving:
        return window_certificate((), QVector.zero(inst.dim), None)

    if f is None:
        raise CertifierError("curving rays exist but no normalizing hyperplane was built")
    n = inst.dim
    slice_poly = SimpleCone(tuple(curving)).to_hpolyhedron(n).with_equality(f, Fraction(1))
    slice_v = h_to_v(slice_poly)
    if slice_v.rays or not slice_v.vertices:
        raise CertifierError("curving-ray slice is not a nonempty polytope")
    v1 = qp_global_min(QuadraticForm.pure(inst.quad.h), slice_poly).value
    if v1 <= 0:
        raise CertifierError("curvature minimum on the residual cone must be positive")
    v2 = min(
        2 * rv.dot(inst.quad.h.matvec(pv)) + inst.quad.c.dot(rv)
        for pv in fiber.vertices
        for rv in slice_v.vertices
    )
    v3, _ = _fiber_qp(
        inst.quad,
        fiber.integer_part,
        fiber.reduced,
        fiber.vertices[0],
    )
    v4 = max(math.ceil(abs(coord)) for vert in fiber.vertices for coord in vert.entries)
    disc = v2 * v2 - 4 * v1 * v3
    lam_max = 0 if disc < 0 else max(0, _ceil_root(-v2, disc, 2 * v1))
    slice_norm = isqrt_ceil(max(rv.dot(rv) for rv in slice_v.vertices))
    norm_bound = isqrt_ceil(Fraction(n)) * v4 + lam_max * slice_norm
    f_values = [f.dot(r) for r in curving]
    if any(fv <= 0 for fv in f_values):
        raise CertifierError("hyperplane is not strictly positive on the residual rays")
    caps = [math.floor(Fraction(lam_max) / fv) for fv in f_values]
    total = 1
    for cap in caps:
        total *= cap + 1
    if total > _WINDOW_ENUM_CAP:
        raise CertifierError(f"residual window needs {total} multiplier tuples")
    for counts in product(*(range(cap + 1) for cap in caps)):
        if sum(m * fv for m, fv in zip(counts, f_values)) > lam_max:
            continue
        shift = QVector.zero(n)
        for m, ray in zip(counts, curving):
            shift = shift + ray.scale(m)
        cert = window_certificate(counts, shift, norm_bound)
        if cert is not None:
            return cert
    return None
