"""Shear coordinates and twist-offset functions on hyperbolic pairs of pants.

A geodesic triangulation of a pair of pants is determined by the number
of leaf ends spiraling into each cuff -- one of (2,2,2), (4,1,1),
(1,4,1), (1,1,4) -- together with a twist direction (+1 = left, -1 =
right) at each cuff, giving 32 topological types.

For a cuff ``c`` the twist offset ``delta`` is the signed distance along
the cuff's axis lift from the shear reference point to the foot of the
perpendicular dropped from a neighboring cuff's axis.  Closed forms are
provided for the three symmetry classes of ``c`` (2, 4 or 1 leaf ends),
and :func:`delta_oracle` recomputes the same quantity constructively in
the upper half-plane from the lifted configuration; the closed forms are
validated against it.

Lift normalization used everywhere (and by the oracle): the cuff axis is
the upward imaginary axis with the pants on its left, the fan of leaf
lifts asymptotic to the cuff consists of vertical lines whose first gap
has Euclidean width one, and the shear reference point is the incircle
median of the first fan triangle transported to the axis along a
horocycle about infinity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .h2 import (
    INF,
    Geodesic,
    GeometryError,
    H2Point,
    IdealTriangle,
    MobiusMap,
    axis_translation,
    mobius_apply,
    orthofoot,
    orthofoot_to_ideal,
    shear,
    triangle_median,
)

#: cuff lengths below this are rejected as singular (formulas blow up at 0)
MIN_CUFF_LENGTH = 1e-12

#: the four admissible leaf-end distributions over the cuffs
LEAF_DISTRIBUTIONS = ((2, 2, 2), (4, 1, 1), (1, 4, 1), (1, 1, 4))


class SingularCuffError(ValueError):
    """Distinguished cuff length is zero (or numerically indistinguishable)."""


@dataclass(frozen=True, slots=True)
class PantsMetric:
    """Cuff lengths of a hyperbolic pair of pants; 0 encodes a puncture."""

    l1: float
    l2: float
    l3: float

    def __post_init__(self) -> None:
        for v in (self.l1, self.l2, self.l3):
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"cuff length {v} must be finite and non-negative")

    @property
    def lengths(self) -> tuple[float, float, float]:
        return (self.l1, self.l2, self.l3)

    def scaled(self, factor: float) -> "PantsMetric":
        return PantsMetric(self.l1 * factor, self.l2 * factor, self.l3 * factor)


@dataclass(frozen=True, slots=True)
class TwistSigns:
    """Twist direction per cuff: +1 twists left, -1 twists right."""

    e1: int
    e2: int
    e3: int

    def __post_init__(self) -> None:
        if any(e not in (1, -1) for e in (self.e1, self.e2, self.e3)):
            raise ValueError("twist signs must be +1 or -1")

    @property
    def signs(self) -> tuple[int, int, int]:
        return (self.e1, self.e2, self.e3)

    def flipped(self) -> "TwistSigns":
        return TwistSigns(-self.e1, -self.e2, -self.e3)


@dataclass(frozen=True, slots=True)
class PantsTriangulation:
    """One of the 32 geodesic triangulation types of a pair of pants."""

    ends: tuple[int, int, int]
    signs: TwistSigns

    def __post_init__(self) -> None:
        if tuple(self.ends) not in LEAF_DISTRIBUTIONS:
            raise ValueError(f"leaf-end distribution {self.ends} is not one of {LEAF_DISTRIBUTIONS}")
        object.__setattr__(self, "ends", tuple(self.ends))

    def symmetry_at(self, cuff: int) -> str:
        """'3sym', '2sym' or 'asym' depending on the leaf ends at ``cuff`` (0-based)."""
        return {2: "3sym", 4: "2sym", 1: "asym"}[self.ends[cuff]]

    def label(self) -> str:
        letters = "".join("L" if e == 1 else "R" for e in self.signs.signs)
        return f"{''.join(map(str, self.ends))}-{letters}"


def enumerate_triangulations() -> list[PantsTriangulation]:
    """All 32 triangulation types (4 leaf distributions x 8 sign patterns)."""
    out = []
    for ends in LEAF_DISTRIBUTIONS:
        for bits in range(8):
            signs = TwistSigns(*(1 if (bits >> i) & 1 == 0 else -1 for i in range(3)))
            out.append(PantsTriangulation(ends, signs))
    return out


def _leaf_key(i: int, j: int) -> str:
    a, b = sorted((i, j))
    return f"s{a + 1}{b + 1}"


def shear_coords(p: PantsMetric, t: PantsTriangulation) -> dict[str, float]:
    """Shear coordinate of each leaf, keyed by its cuff pair (e.g. 's12', 's11').

    Only the labels meaningful for the triangulation type are present.
    """
    l = p.lengths
    e = t.signs.signs
    if t.ends == (2, 2, 2):
        out = {}
        for i, j in ((0, 1), (0, 2), (1, 2)):
            k = 3 - i - j
            out[_leaf_key(i, j)] = 0.5 * (e[k] * l[k] - e[i] * l[i] - e[j] * l[j])
        return out
    m = t.ends.index(4)
    j, k = (i for i in range(3) if i != m)
    return {
        _leaf_key(m, m): 0.5 * (-e[m] * l[m] + e[j] * l[j] + e[k] * l[k]),
        _leaf_key(m, j): -e[j] * l[j],
        _leaf_key(m, k): -e[k] * l[k],
    }


def _roles(t: PantsTriangulation, cuff: int, partner: int | None) -> tuple[str, int, int]:
    """Resolve (symmetry class, perpendicular cuff j, remaining cuff k).

    The perpendicular is dropped from cuff ``j``'s axis.  Default is the
    cyclically next cuff; for an asymmetric cuff the 4-end cuff is forced.
    For a 3-symmetric cuff the other choice is exposed via ``partner``
    (the two choices differ by half the cuff length).
    """
    if cuff not in (0, 1, 2):
        raise ValueError("cuff index must be 0, 1 or 2")
    sym = t.symmetry_at(cuff)
    if sym == "asym":
        j = t.ends.index(4)
        if partner is not None and partner != j:
            raise ValueError("asymmetric cuff: the perpendicular cuff is forced to the 4-end cuff")
        return sym, j, 3 - cuff - j
    default_j = (cuff + 1) % 3
    if partner is None:
        j = default_j
    else:
        if partner == cuff or partner not in (0, 1, 2):
            raise ValueError("partner must be one of the other two cuffs")
        if sym == "2sym" and partner != default_j:
            raise ValueError("alternate partner is only supported at a 3-symmetric cuff")
        j = partner
    return sym, j, 3 - cuff - j


def _delta_core(l, e, ends: tuple[int, int, int], cuff: int, j: int, k: int, sym: str):
    """Closed-form twist offset; complex-capable for analytic differentiation.

    ``l`` may carry complex entries (an infinitesimal imaginary part
    implements exact differentiation of the log-coth-type expressions).
    """
    exp, log = cmath.exp, cmath.log

    def sc(i: int, jj: int):
        # shear coordinate of the leaf between cuffs i and jj (complex-capable)
        if ends == (2, 2, 2):
            kk = 3 - i - jj
            return 0.5 * (e[kk] * l[kk] - e[i] * l[i] - e[jj] * l[jj])
        m = ends.index(4)
        if i == jj == m:
            a, b = (x for x in range(3) if x != m)
            return 0.5 * (-e[m] * l[m] + e[a] * l[a] + e[b] * l[b])
        other = jj if i == m else i
        return -e[other] * l[other]

    ec, lc = e[cuff], l[cuff]
    if sym == "3sym":
        nxt = (cuff + 1) % 3
        x = (1 + exp(sc(cuff, nxt))) / (exp(-ec * lc) - 1)
        if j == nxt:
            frac = (exp(sc(j, k)) + exp(-e[j] * l[j])) / (exp(sc(j, k)) + 1)
            g = (x + 1) * (x + frac)
        else:
            # perpendicular from the cyclically previous cuff: its axis
            # shares the fan endpoint x, and the mirrored spiral period has
            # gaps 1 and e^{s_cj}
            v = (1 + exp(sc(cuff, j))) / (1 - exp(-e[j] * l[j]))
            g = x * (x + 1 / (1 - v))
    elif sym == "2sym":
        s_cj, s_cc, s_ck = sc(cuff, j), sc(cuff, cuff), sc(cuff, k)
        num = 1 + exp(s_cj) + exp(s_cj + s_cc) + exp(s_cj + s_cc + s_ck)
        x = num / (exp(-ec * lc) - 1)
        g = (x + 1) * (x + exp(-e[j] * l[j]))
    else:
        s_jj, s_jk, s_cj = sc(j, j), sc(j, k), sc(cuff, j)
        x = 1 / (exp(-ec * lc) - 1)
        num = exp(s_jj) + exp(s_jj + s_jk) + exp(2 * s_jj + s_jk) + exp(-e[j] * l[j])
        den = exp(s_jj) + exp(s_jj + s_jk) + exp(2 * s_jj + s_jk) + 1
        g = (x + 1) * (x + num / den)
    return ec * 0.5 * log(g)


def _check_cuff(p: PantsMetric, cuff: int) -> None:
    if p.lengths[cuff] < MIN_CUFF_LENGTH:
        raise SingularCuffError(f"cuff {cuff} has length {p.lengths[cuff]}; twist offset is singular")


def delta_closed(p: PantsMetric, t: PantsTriangulation, cuff: int, partner: int | None = None) -> float:
    """Closed-form twist offset at ``cuff`` (0-based) for triangulation ``t``."""
    sym, j, k = _roles(t, cuff, partner)
    _check_cuff(p, cuff)
    return _delta_core(p.lengths, t.signs.signs, t.ends, cuff, j, k, sym).real


def delta_3sym(p: PantsMetric, signs: TwistSigns, partner: int | None = None) -> float:
    """Twist offset at cuff 1 for the (2,2,2) triangulation."""
    return delta_closed(p, PantsTriangulation((2, 2, 2), signs), 0, partner)


def delta_2sym(p: PantsMetric, signs: TwistSigns) -> float:
    """Twist offset at cuff 1 for the triangulation with 4 leaf ends there."""
    return delta_closed(p, PantsTriangulation((4, 1, 1), signs), 0)


def delta_asym(p: PantsMetric, signs: TwistSigns) -> float:
    """Twist offset at cuff 1 when a single leaf end spirals into it."""
    return delta_closed(p, PantsTriangulation((1, 4, 1), signs), 0)


def delta_scaled(p: PantsMetric, t: PantsTriangulation, cuff: int, s: float) -> float:
    """Twist offset with every cuff length (hence every shear) scaled by e^s."""
    return delta_closed(p.scaled(math.exp(s)), t, cuff)


def delta_scale_derivative(p: PantsMetric, t: PantsTriangulation, cuff: int, s: float = 0.0) -> float:
    """d/ds of :func:`delta_scaled` at ``s``, by complex-step differentiation.

    The offset is analytic in the scale, so an infinitesimal imaginary
    perturbation gives the exact derivative (no cancellation error).
    """
    sym, j, k = _roles(t, cuff, None)
    _check_cuff(p, cuff)
    h = 1e-100
    scale = cmath.exp(complex(s, h))
    lc = tuple(x * scale for x in p.lengths)
    return _delta_core(lc, t.signs.signs, t.ends, cuff, j, k, sym).imag / h


# ---------------------------------------------------------------------------
# constructive oracle
# ---------------------------------------------------------------------------


def _solve_monotone(f: Callable[[float], float], u0: float, u1: float, tol: float = 1e-13) -> float:
    """Secant solve of f(u) = 0 with a bisection fallback.

    The gap equations below are linear in the log-width parameter, so the
    secant step is exact; the loop guards against pathological inputs.
    """
    f0, f1 = f(u0), f(u1)
    for _ in range(80):
        if abs(f1) <= tol:
            return u1
        if f1 == f0:
            break
        u0, u1, f0 = u1, u1 - f1 * (u1 - u0) / (f1 - f0), f1
        f1 = f(u1)
    # bisection fallback on an expanding bracket
    lo, hi = -60.0, 60.0
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol:
            return mid
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise GeometryError("gap equation did not converge")


def _next_gap(prev_gap: float, sigma: float) -> float:
    """Width of the next fan/spiral gap from the constructive shear condition.

    Solved in the frame where the shared vertical line sits at 0 (shears
    are invariant under the parabolic transport fixing infinity), so tiny
    gaps are not absorbed by large coordinates.
    """
    t_prev = IdealTriangle(-prev_gap, 0.0, INF)

    def cond(u: float) -> float:
        return shear(t_prev, IdealTriangle(0.0, math.exp(u), INF), Geodesic(0.0, INF)) - sigma

    return math.exp(_solve_monotone(cond, 0.0, 1.0))


def _gap_widths(first_gap: float, shears: list[float]) -> list[float]:
    """Consecutive gap widths of one period, starting from ``first_gap``."""
    gaps = [first_gap]
    for sigma in shears:
        gaps.append(_next_gap(gaps[-1], sigma))
    return gaps


def _deck_endpoint(length: float, sign: int, target: float) -> float:
    """Axis endpoint v such that the deck translation of the given length
    along (v, inf) (contracting for left twists, expanding for right) carries
    the vertical line at 0 to the vertical line at ``target``.

    The condition is linear in v; it is solved from two evaluations of the
    actual isometry action.
    """

    def image_of_zero(v: float) -> float:
        axis = Geodesic(INF, v) if sign == 1 else Geodesic(v, INF)
        return mobius_apply(axis_translation(axis, length), 0.0)

    f0 = image_of_zero(0.0) - target
    f1 = image_of_zero(1.0) - target
    if f1 == f0:
        raise GeometryError("deck translation condition is degenerate")
    return -f0 / (f1 - f0)


def oracle_details(p: PantsMetric, t: PantsTriangulation, cuff: int) -> dict:
    """Constructive computation of the twist offset; returns intermediates.

    Builds the lifted configuration in the upper half-plane: solves the fan
    around the cuff axis from constructive shears, closes it up with the
    cuff's deck translation, passes to the frame of the first fan leaf,
    solves the spiral period around the perpendicular cuff, locates that
    cuff's axis from its deck translation, and measures the signed distance
    from the transported incircle median to the perpendicular foot.
    """
    sym, j, k = _roles(t, cuff, None)
    _check_cuff(p, cuff)
    l = p.lengths
    e = t.signs.signs
    s = shear_coords(p, t)

    def sv(i: int, jj: int) -> float:
        return s[_leaf_key(i, jj)]

    if sym == "3sym":
        fan_shears = [sv(cuff, j)]
        spiral_shears = [sv(j, k), sv(cuff, j)]
    elif sym == "2sym":
        fan_shears = [sv(cuff, j), sv(cuff, cuff), sv(cuff, k)]
        spiral_shears = [sv(cuff, j)]
    else:
        fan_shears = []
        spiral_shears = [sv(j, j), sv(j, k), sv(j, j), sv(cuff, j)]

    # fan period width from constructive shears (first gap normalized to 1)
    width = math.fsum(_gap_widths(1.0, fan_shears))

    # close the fan with the cuff's deck translation: deck(x) = x + width,
    # where deck translates along the axis by the cuff length (towards 0
    # for a left twist).  The condition is linear in x.
    def closure(x: float) -> float:
        axis = Geodesic(INF, 0.0) if e[cuff] == 1 else Geodesic(0.0, INF)
        return mobius_apply(axis_translation(axis, l[cuff]), x) - (x + width)

    c0, c1 = closure(0.0), closure(1.0)
    x = -c0 / (c1 - c0)

    # frame of the first fan leaf: phi maps the half-circle (x, x+1) to the
    # standard axis with the image of the fan triangle as (-1, 0, inf)
    phi = MobiusMap(-1.0, x, 1.0, -(x + 1.0))
    t1 = IdealTriangle(x, x + 1.0, INF)
    img = (mobius_apply(phi, INF), mobius_apply(phi, x), mobius_apply(phi, x + 1.0))
    # projectively (-1, 0, inf): the pole image may round to a huge finite value
    if abs(img[0] + 1.0) > 1e-9 or abs(img[1]) > 1e-9 or (math.isfinite(img[2]) and abs(img[2]) < 1e9):
        raise GeometryError("fan frame normalization failed")
    # spiral period width: gaps after the width-one image triangle
    w = math.fsum(_gap_widths(1.0, spiral_shears)[1:])

    # perpendicular cuff axis: second endpoint from its deck translation,
    # or the parabolic limit when that cuff is a puncture
    if l[j] < MIN_CUFF_LENGTH:
        p_star = mobius_apply(phi.inverse(), INF)
        foot = orthofoot_to_ideal(Geodesic(0.0, INF), p_star)
    else:
        v = _deck_endpoint(l[j], e[j], w)
        p_star = mobius_apply(phi.inverse(), v)
        foot = orthofoot(Geodesic(0.0, INF), Geodesic(x + 1.0, p_star))

    # shear reference point: incircle median of the first fan triangle,
    # transported to the axis along the horocycle about infinity
    med = triangle_median(t1, next(i for i in (1, 2, 3) if {t1.edge(i).a, t1.edge(i).b} == {x, INF}))
    q = H2Point(0.0, med.y)

    return {
        "x": x,
        "fan_width": width,
        "period_width": w,
        "p_star": p_star,
        "foot": foot,
        "q": q,
        "delta": e[cuff] * (math.log(foot.y) - math.log(q.y)),
    }


def delta_oracle(p: PantsMetric, t: PantsTriangulation, cuff: int) -> float:
    """Twist offset at ``cuff`` computed constructively in the half-plane."""
    return oracle_details(p, t, cuff)["delta"]
