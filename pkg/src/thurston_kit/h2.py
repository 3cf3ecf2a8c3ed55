"""Upper half-plane hyperbolic geometry kernel.

Conventions used throughout:

* Interior points are pairs ``(x, y)`` with ``y > 0``.
* Ideal boundary points are plain floats; ``math.inf`` is the single
  point at infinity (``-inf`` is the same ideal point and is normalized
  to ``+inf`` on construction).
* A :class:`Geodesic` is an ordered pair of distinct ideal endpoints;
  the order is its orientation.  Signed distances along a geodesic are
  positive in the direction of the orientation.
* Orientation-preserving isometries are 2x2 real matrices of positive
  determinant acting by fractional linear transformations, stored
  normalized to determinant one.

Everything here is an immutable value and every operation is a pure
function, so concurrent use needs no synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf

#: default absolute tolerance for scalar comparisons
DEFAULT_TOL = 1e-9

#: determinant normalization tolerance for isometry matrices
DET_TOL = 1e-12


class GeometryError(ValueError):
    """Raised when an operation's geometric preconditions fail."""


def is_infinity(p: float) -> bool:
    return math.isinf(p)


def ideal(p: float) -> float:
    """Canonicalize an ideal point (both ends of the real axis are one point)."""
    if math.isnan(p):
        raise GeometryError("ideal point is NaN")
    return INF if math.isinf(p) else float(p)


@dataclass(frozen=True, slots=True)
class H2Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not self.y > 0:
            raise GeometryError(f"point ({self.x}, {self.y}) not in the upper half-plane")

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True, slots=True)
class Geodesic:
    a: float
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", ideal(self.a))
        object.__setattr__(self, "b", ideal(self.b))
        if self.a == self.b:
            raise GeometryError("geodesic endpoints coincide")

    def reversed(self) -> "Geodesic":
        return Geodesic(self.b, self.a)


@dataclass(frozen=True, slots=True)
class IdealTriangle:
    v1: float
    v2: float
    v3: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "v1", ideal(self.v1))
        object.__setattr__(self, "v2", ideal(self.v2))
        object.__setattr__(self, "v3", ideal(self.v3))
        if len({self.v1, self.v2, self.v3}) != 3:
            raise GeometryError("ideal triangle has repeated vertices")

    @property
    def vertices(self) -> tuple[float, float, float]:
        return (self.v1, self.v2, self.v3)

    def edge(self, index: int) -> Geodesic:
        """Edge ``index`` in 1..3: (v1,v2), (v2,v3), (v3,v1)."""
        v = self.vertices
        if index not in (1, 2, 3):
            raise GeometryError(f"edge index {index} not in 1..3")
        return Geodesic(v[index - 1], v[index % 3])


@dataclass(frozen=True, slots=True)
class Circle:
    """Euclidean circle data (used for incircles and horocycles)."""

    cx: float
    cy: float
    r: float

    def __post_init__(self) -> None:
        if not self.r > 0:
            raise GeometryError("circle radius must be positive")


@dataclass(frozen=True, slots=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with a d - b c = 1 after normalization."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if not det > 0:
            raise GeometryError(f"Mobius matrix determinant {det} is not positive")
        s = math.sqrt(det)
        object.__setattr__(self, "a", self.a / s)
        object.__setattr__(self, "b", self.b / s)
        object.__setattr__(self, "c", self.c / s)
        object.__setattr__(self, "d", self.d / s)

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1.0, 0.0, 0.0, 1.0)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def trace(self) -> float:
        return self.a + self.d

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __call__(self, p):
        return mobius_apply(self, p)


def mobius_apply(m: MobiusMap, p):
    """Apply the fractional linear action to an interior or ideal point.

    Interior points map to interior points; ideal points map to ideal
    points, with the pole of the map sent to infinity.
    """
    if isinstance(p, H2Point):
        z = p.as_complex()
        w = (m.a * z + m.b) / (m.c * z + m.d)
        return H2Point(w.real, w.imag)
    t = ideal(p)
    if is_infinity(t):
        return ideal(m.a / m.c) if m.c != 0.0 else INF
    den = m.c * t + m.d
    if den == 0.0:
        return INF
    return ideal((m.a * t + m.b) / den)


def mobius_apply_geodesic(m: MobiusMap, g: Geodesic) -> Geodesic:
    return Geodesic(mobius_apply(m, g.a), mobius_apply(m, g.b))


def mobius_apply_triangle(m: MobiusMap, t: IdealTriangle) -> IdealTriangle:
    return IdealTriangle(mobius_apply(m, t.v1), mobius_apply(m, t.v2), mobius_apply(m, t.v3))


def geodesic_to_standard(g: Geodesic) -> MobiusMap:
    """Orientation-preserving map sending g.a -> 0 and g.b -> infinity.

    The image geodesic is the imaginary axis oriented upward.
    """
    a, b = g.a, g.b
    if is_infinity(a):
        return MobiusMap(0.0, -1.0, 1.0, -b)
    if is_infinity(b):
        return MobiusMap(1.0, -a, 0.0, 1.0)
    s = 1.0 if a > b else -1.0
    return MobiusMap(s, -s * a, 1.0, -b)


def triangle_median(t: IdealTriangle, edge: int) -> H2Point:
    """Tangency point of the incircle of ``t`` on the chosen edge.

    The edge is normalized to the imaginary axis; in that frame the
    triangle is (0, w, inf) and the incircle touches the axis at height
    |w|, which is mapped back.  Mobius equivariance is automatic.
    """
    g = t.edge(edge)
    w = next(v for v in t.vertices if v not in (g.a, g.b))
    m = geodesic_to_standard(g)
    w_std = mobius_apply(m, w)
    if is_infinity(w_std) or w_std == 0.0:
        raise GeometryError("degenerate triangle")
    return mobius_apply(m.inverse(), H2Point(0.0, abs(w_std)))


def incircle(t: IdealTriangle) -> Circle:
    """Incircle of an ideal triangle as a Euclidean circle.

    Fitted through the three medians; a Mobius image of a circle inside
    the half-plane is again a Euclidean circle.
    """
    p1 = triangle_median(t, 1)
    p2 = triangle_median(t, 2)
    p3 = triangle_median(t, 3)
    return circle_through(p1, p2, p3)


def circle_through(p1: H2Point, p2: H2Point, p3: H2Point) -> Circle:
    ax, ay = p1.x, p1.y
    bx, by = p2.x, p2.y
    cx, cy = p3.x, p3.y
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        raise GeometryError("collinear points do not define a circle")
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    return Circle(ux, uy, math.hypot(ax - ux, ay - uy))


def _median_height_toward_axis(t_std: IdealTriangle) -> float:
    """Height on the standard axis of the parabolic transport of the median.

    ``t_std`` has one vertex at infinity and two finite vertices on one
    side of 0 (0 itself allowed as a shared vertex).  The median on the
    vertical edge nearest the axis is carried to the axis by the
    parabolic fixing infinity that moves that edge onto the axis.
    """
    fin = [v for v in t_std.vertices if not is_infinity(v)]
    if len(fin) != 2:
        raise GeometryError("triangle must have exactly one vertex at infinity here")
    lo, hi = min(fin), max(fin)
    if lo < 0.0 < hi:
        raise GeometryError("geodesic does not separate the triangle interiors")
    near = hi if hi <= 0.0 else lo
    edge_idx = next(i for i in (1, 2, 3) if {t_std.edge(i).a, t_std.edge(i).b} == {near, INF})
    med = triangle_median(t_std, edge_idx)
    # parabolic z -> z - near carries the edge (near, inf) onto the axis
    return med.y


def _snap_vertex(t: IdealTriangle, target: float, tol: float) -> IdealTriangle:
    """Replace the vertex of ``t`` nearest ``target`` by ``target`` exactly.

    Incidence of constructed configurations is only float-accurate; the
    vertex is required to be within ``tol`` and then made exact so that
    downstream normalizations send it to 0 or infinity without roundoff.
    """
    vs = list(t.vertices)
    if is_infinity(target):
        if not any(is_infinity(v) for v in vs):
            raise GeometryError("geodesic endpoint is not a vertex of the triangle")
        return t
    dists = [abs(v - target) if not is_infinity(v) else INF for v in vs]
    i = dists.index(min(dists))
    if not dists[i] <= tol:
        raise GeometryError("geodesic endpoint is not a vertex of the triangle")
    vs[i] = target
    return IdealTriangle(*vs)


def shear(t1: IdealTriangle, t2: IdealTriangle, g: Geodesic, tol: float = DEFAULT_TOL) -> float:
    """Signed shear between two ideal triangles across an oriented geodesic.

    ``g`` must run from a vertex of ``t1`` to a vertex of ``t2`` (within
    ``tol``) and separate the two interiors, with ``t1`` on the left of
    ``g``.  For each triangle the incircle median on the edge facing ``g``
    is moved onto ``g`` by the parabolic isometry fixing the shared ideal
    vertex, and the result is the signed distance between the two
    transported points (positive in the direction of ``g``).
    """
    t1 = _snap_vertex(t1, g.a, tol)
    t2 = _snap_vertex(t2, g.b, tol)
    m = geodesic_to_standard(g)
    t1_std = mobius_apply_triangle(m, t1)
    t2_std = mobius_apply_triangle(m, t2)

    # t2 has its distinguished vertex at infinity already; it must lie on
    # the right of the upward axis (shared vertex at 0 allowed)
    fin2 = [v for v in t2_std.vertices if not is_infinity(v)]
    if len(fin2) != 2 or min(fin2) < 0.0:
        raise GeometryError("g does not separate the triangles with t1 on the left")
    h2_height = _median_height_toward_axis(t2_std)

    # flip the frame (z -> -1/z) so t1's distinguished vertex is at infinity;
    # a left-side t1 lands on the right of the flipped axis
    flip = MobiusMap(0.0, -1.0, 1.0, 0.0)
    t1_flip = mobius_apply_triangle(flip, t1_std)
    fin1 = [v for v in t1_flip.vertices if not is_infinity(v)]
    if len(fin1) != 2 or min(fin1) < 0.0:
        raise GeometryError("g does not separate the triangles with t1 on the left")
    h1_height = 1.0 / _median_height_toward_axis(t1_flip)

    return math.log(h2_height) - math.log(h1_height)


def orthofoot(g1: Geodesic, g2: Geodesic) -> H2Point:
    """Foot on ``g1`` of the common perpendicular between ``g1`` and ``g2``.

    In the frame where ``g1`` is the standard axis, ``g2`` spans (a, b)
    and the perpendicular is the circle about 0 orthogonal to it, of
    radius sqrt(a*b).  Intersecting or asymptotic inputs are rejected.
    """
    if {g1.a, g1.b} & {g2.a, g2.b}:
        raise GeometryError("geodesics share an ideal endpoint")
    m = geodesic_to_standard(g1)
    a = mobius_apply(m, g2.a)
    b = mobius_apply(m, g2.b)
    if is_infinity(a) or is_infinity(b):
        raise GeometryError("geodesics intersect (image endpoint at infinity)")
    if a * b <= 0.0:
        raise GeometryError("geodesics intersect")
    return mobius_apply(m.inverse(), H2Point(0.0, math.sqrt(a * b)))


def orthofoot_to_ideal(g1: Geodesic, p: float) -> H2Point:
    """Foot on ``g1`` of the perpendicular geodesic landing at the ideal point ``p``.

    This is the degenerate (parabolic) limit of :func:`orthofoot` where the
    second geodesic collapses to a boundary point.
    """
    p = ideal(p)
    if p in (g1.a, g1.b):
        raise GeometryError("ideal point is an endpoint of the geodesic")
    m = geodesic_to_standard(g1)
    a = mobius_apply(m, p)
    if is_infinity(a):
        raise GeometryError("ideal point is an endpoint of the geodesic")
    # the perpendicular through the ideal point a is the half-circle |z| = |a|
    return mobius_apply(m.inverse(), H2Point(0.0, abs(a)))


def axis_translation(g: Geodesic, length: float) -> MobiusMap:
    """Hyperbolic isometry with axis ``g`` translating by ``length`` along it.

    Translation is in the direction of the orientation of ``g``.
    """
    if not length > 0:
        raise GeometryError("translation length must be positive")
    m = geodesic_to_standard(g)
    t = MobiusMap(math.exp(length / 2.0), 0.0, 0.0, math.exp(-length / 2.0))
    return m.inverse() @ t @ m


def signed_distance_along(g: Geodesic, p: H2Point, q: H2Point) -> float:
    """Signed distance from ``p`` to ``q`` along ``g`` (both on ``g``),
    positive in the direction of orientation."""
    m = geodesic_to_standard(g)
    hp = mobius_apply(m, p).y
    hq = mobius_apply(m, q).y
    return math.log(hq) - math.log(hp)


def point_distance(p: H2Point, q: H2Point) -> float:
    """Hyperbolic distance between interior points."""
    dx = p.x - q.x
    num = dx * dx + (p.y - q.y) ** 2
    arg = 1.0 + num / (2.0 * p.y * q.y)
    return math.acosh(arg if arg > 1.0 else 1.0)


def maps_equal(m1: MobiusMap, m2: MobiusMap, tol: float = DEFAULT_TOL) -> bool:
    """Equality of isometries as maps (determinant-one matrices up to sign)."""
    same = all(abs(x - y) <= tol for x, y in ((m1.a, m2.a), (m1.b, m2.b), (m1.c, m2.c), (m1.d, m2.d)))
    opp = all(abs(x + y) <= tol for x, y in ((m1.a, m2.a), (m1.b, m2.b), (m1.c, m2.c), (m1.d, m2.d)))
    return same or opp
