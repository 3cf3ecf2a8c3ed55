"""Stretch-vector twist projections on the genus-two surface and their hull.

For the pants decomposition of the genus-two surface into two pairs of
pants glued along three curves, a candidate completion assigns one
triangulation type to each pair of pants and a common twist sign per
curve: 8 x 4 x 4 = 128 candidates.  For each, the time derivative at 0
of the three twist coordinates along the stretch path is one point of
the cloud; the convex hull of the cloud at the symmetric base point is
combinatorially a chamfered cube whose 32 vertices are recovered both
by the hull routine and by an independent least-squares extremality
test.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .h2 import GeometryError
from .pants import (
    LEAF_DISTRIBUTIONS,
    PantsMetric,
    PantsTriangulation,
    TwistSigns,
    delta_closed,
    delta_scale_derivative,
)
from .stretch import FNPoint

#: coplanarity tolerance for merging hull facets
HULL_TOL = 1e-9

#: tolerance for the least-squares convex-representability residual
EXTREME_TOL = 1e-8


@dataclass(frozen=True, slots=True)
class Completion:
    """Candidate completion: shared twist signs and one type per pair of pants."""

    signs: TwistSigns
    ends1: tuple[int, int, int]
    ends2: tuple[int, int, int]

    def __post_init__(self) -> None:
        for ends in (self.ends1, self.ends2):
            if tuple(ends) not in LEAF_DISTRIBUTIONS:
                raise ValueError(f"leaf distribution {ends} invalid")
        object.__setattr__(self, "ends1", tuple(self.ends1))
        object.__setattr__(self, "ends2", tuple(self.ends2))

    def label(self) -> str:
        letters = "".join("L" if e == 1 else "R" for e in self.signs.signs)
        return f"{letters}-{''.join(map(str, self.ends1))}-{''.join(map(str, self.ends2))}"


@dataclass(frozen=True, slots=True)
class TwistVector:
    """Time derivatives at 0 of the three twist coordinates."""

    da: float
    db: float
    dc: float

    def __post_init__(self) -> None:
        if any(not math.isfinite(v) for v in (self.da, self.db, self.dc)):
            raise ValueError("twist vector components must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.da, self.db, self.dc])


def enumerate_completions() -> list[Completion]:
    """All 128 candidates (8 sign patterns x 4 x 4 pants types)."""
    out = []
    for bits in itertools.product((1, -1), repeat=3):
        for e1 in LEAF_DISTRIBUTIONS:
            for e2 in LEAF_DISTRIBUTIONS:
                out.append(Completion(TwistSigns(*bits), e1, e2))
    return out


#: relative agreement required between analytic and central-difference rates
DERIVATIVE_CHECK_REL = 1e-6


def stretch_vector_projection(x: FNPoint, completion: Completion, check: bool = True) -> TwistVector:
    """d/dt at 0 of the three twist coordinates along the completion's stretch.

    theta_c'(0) = theta_c(0) + D1(0) + D2(0) - d/ds [D1 + D2](0), with the
    offsets differentiated analytically (complex step); with ``check`` a
    central difference (h = 1e-6) must agree to 1e-6 relative.
    """
    if x.surface != "S2":
        raise ValueError("stretch-vector projections are computed on the genus-two surface")
    metric = PantsMetric(*x.lengths)
    tris = (
        PantsTriangulation(completion.ends1, completion.signs),
        PantsTriangulation(completion.ends2, completion.signs),
    )
    rates = []
    for curve in range(3):
        total0 = 0.0
        dtotal = 0.0
        for tri in tris:
            total0 += delta_closed(metric, tri, curve)
            dtotal += delta_scale_derivative(metric, tri, curve)
        if check:
            h = 1e-6
            num = sum(
                delta_closed(metric.scaled(math.exp(h)), tri, curve)
                - delta_closed(metric.scaled(math.exp(-h)), tri, curve)
                for tri in tris
            ) / (2.0 * h)
            scale = max(1.0, abs(dtotal))
            if abs(num - dtotal) > DERIVATIVE_CHECK_REL * scale:
                raise ArithmeticError(
                    f"analytic rate {dtotal} and central difference {num} disagree at curve {curve}"
                )
        rates.append(x.twists[curve] + total0 - dtotal)
    return TwistVector(*rates)


def cloud(x: FNPoint, check: bool = True) -> list[tuple[Completion, TwistVector]]:
    """All 128 labeled candidate projections, in enumeration order."""
    return [(c, stretch_vector_projection(x, c, check)) for c in enumerate_completions()]


def dedupe_points(points: np.ndarray, tol: float = HULL_TOL) -> tuple[np.ndarray, list[int]]:
    """Representative subset with pairwise distance > tol, plus group index per point."""
    reps: list[np.ndarray] = []
    group: list[int] = []
    for p in points:
        for i, r in enumerate(reps):
            if float(np.max(np.abs(p - r))) <= tol:
                group.append(i)
                break
        else:
            group.append(len(reps))
            reps.append(p)
    return np.array(reps), group


@dataclass(frozen=True)
class HullSummary:
    """Merged-face combinatorics of a 3D convex hull."""

    n_vertices: int
    n_edges: int
    n_faces: int
    vertex_indices: tuple[int, ...]

    def counts(self) -> tuple[int, int, int]:
        return (self.n_vertices, self.n_edges, self.n_faces)


def hull(points: np.ndarray, tol: float = HULL_TOL) -> HullSummary:
    """Convex hull combinatorics with coplanar facets merged within ``tol``.

    Qhull's triangulated facets are merged by union-find across facet
    adjacencies whose supporting planes agree to ``tol``; edges are the
    adjacencies between distinct merged faces.  Degenerate input is
    rejected, and the merged counts must satisfy Euler's formula.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 4:
        raise GeometryError("need at least four 3D points")
    try:
        h = ConvexHull(pts)
    except QhullError as exc:
        raise GeometryError(f"degenerate point set: {exc}") from exc

    n_f = len(h.simplices)
    parent = list(range(n_f))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for i in range(n_f):
        for j in h.neighbors[i]:
            if j > i and np.max(np.abs(h.equations[i] - h.equations[j])) <= tol:
                union(i, int(j))

    faces = {find(i) for i in range(n_f)}
    edges = set()
    for i in range(n_f):
        for j in h.neighbors[i]:
            if find(i) != find(int(j)):
                shared = tuple(sorted(set(h.simplices[i]) & set(h.simplices[int(j)])))
                if len(shared) == 2:
                    edges.add(shared)
    v, e, f = len(h.vertices), len(edges), len(faces)
    if v - e + f != 2:
        raise GeometryError(f"face merging produced inconsistent counts V={v} E={e} F={f}")
    return HullSummary(v, e, f, tuple(sorted(int(i) for i in h.vertices)))


def nnls(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Non-negative least squares (Lawson-Hanson active set).

    Small and deterministic; used for the convex-representability test.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = a.shape
    x = np.zeros(n)
    active = np.zeros(n, dtype=bool)
    w = a.T @ (b - a @ x)
    tol = 10.0 * max(m, n) * np.finfo(float).eps * max(float(np.abs(a).max()), 1.0) * max(float(np.linalg.norm(b)), 1.0)
    for _ in range(10 * n):
        if active.all() or float(np.max(np.where(~active, w, -np.inf))) <= tol:
            break
        active[int(np.argmax(np.where(~active, w, -np.inf)))] = True
        while True:
            s = np.zeros(n)
            s[active], *_ = np.linalg.lstsq(a[:, active], b, rcond=None)
            if s[active].size and float(np.min(s[active])) > 0.0:
                x = s
                break
            mask = active & (s <= 0.0)
            if not mask.any():
                x = s
                break
            alpha = float(np.min(x[mask] / (x[mask] - s[mask])))
            x = x + alpha * (s - x)
            active &= x > 1e-14
        w = a.T @ (b - a @ x)
    return x, float(np.linalg.norm(a @ x - b))


def extreme_points_brute(points: np.ndarray, tol: float = EXTREME_TOL) -> list[int]:
    """Indices of points not representable as convex combinations of the rest.

    A point is extreme iff the least-squares feasibility problem
    min ||sum_j w_j p_j - p_i|| with w >= 0, sum w = 1 (the constraint
    appended as an extra row) has residual above ``tol``.
    """
    pts = np.asarray(points, dtype=float)
    out = []
    for i in range(len(pts)):
        others = np.delete(pts, i, axis=0)
        a = np.vstack([others.T, np.ones(len(others))])
        b = np.concatenate([pts[i], [1.0]])
        _, res = nnls(a, b)
        if res > tol:
            out.append(i)
    return out


def symmetric_base_point() -> FNPoint:
    """Default base point: all three curve lengths one, all twists zero."""
    return FNPoint("S2", (1.0, 1.0, 1.0), (0.0, 0.0, 0.0))


def chamfered_cube_check(x: FNPoint | None = None) -> dict:
    """Full pipeline: cloud, dedupe, hull counts, brute-force extremality.

    Returns the counts and both extreme sets (as cloud indices) so callers
    can assert agreement.
    """
    if x is None:
        x = symmetric_base_point()
    labeled = cloud(x)
    raw = np.array([tv.as_array() for _, tv in labeled])
    uniq, group = dedupe_points(raw)
    summary = hull(uniq)
    brute = extreme_points_brute(uniq)
    hull_set = set(summary.vertex_indices)
    extreme_labels = sorted(
        labeled[i][0].label() for i in range(len(labeled)) if group[i] in hull_set
    )
    return {
        "n_candidates": len(labeled),
        "n_unique": len(uniq),
        "hull_counts": summary.counts(),
        "hull_vertices": summary.vertex_indices,
        "brute_extremes": tuple(brute),
        "agree": set(brute) == hull_set,
        "extreme_completions": extreme_labels,
    }
