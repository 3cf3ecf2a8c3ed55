"""Holonomy model of the once-punctured torus and a length-ratio distance estimator.

A point (l, tau) in Fenchel-Nielsen coordinates along the curve alpha is
realized as a discrete representation with generators

    A = diag(e^{l/2}, e^{-l/2})            (axis = imaginary axis)
    B = B0 * diag(e^{tau/2}, e^{-tau/2})   (twist pre-composed)

where B0 is the symmetric hyperbolic with axis the unit half-circle and
cosh(l_B/2) = coth(l/2), the unique choice (with tr B > 0) making the
commutator trace -2, i.e. the cusp relation x^2 + y^2 + z^2 = xyz for
(x, y, z) = (tr A, tr B, tr AB).

Simple closed curves correspond to extended rationals p/q (slope of B is
0, slope of A is infinity); the curve word is the Christoffel block
product prod_i A^{k_i} B with cutting-sequence exponents summing to p.
All block matrices are entrywise positive, so trace evaluation is
cancellation-free; a running log scale keeps huge words in range.

The distance estimator is the maximum of log(l_s(Y)/l_s(X)) over a
finite Stern-Brocot slope family (every reduced slope with q <= max_q
and |p| <= max_q).  It is a lower bound for the sup over all simple
closed curves, monotone in max_q, and reports raw max ratios without
any additive constant.  Optional windows of p centered at the twist
ratios tau/l tighten estimates between heavily twisted surfaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

from .stretch import FNPoint, left_spec, right_spec, stretch_point

Mat2 = tuple[tuple[float, float], tuple[float, float]]

#: commutator-trace tolerance for accepting a representation
PUNCTURE_TOL = 1e-9


def _mul(x: Mat2, y: Mat2) -> Mat2:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def _inv(x: Mat2) -> Mat2:
    det = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    return ((x[1][1] / det, -x[0][1] / det), (-x[1][0] / det, x[0][0] / det))


def _tr(x: Mat2) -> float:
    return x[0][0] + x[1][1]


@dataclass(frozen=True, slots=True)
class Slope:
    """Extended rational p/q in lowest terms; q = 0 (with p = 1) is infinity."""

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if q < 0:
            p, q = -p, -q
        if q == 0:
            if p == 0:
                raise ValueError("slope 0/0 is not a curve")
            p = 1
        else:
            g = gcd(abs(p), q)
            if g != 1:
                raise ValueError(f"slope {self.p}/{self.q} is not in lowest terms")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @staticmethod
    def of(p: int, q: int) -> "Slope":
        if q == 0:
            return Slope(1, 0)
        g = gcd(abs(p), abs(q))
        return Slope(p // g, q // g) if q > 0 else Slope(-p // g, -q // g)

    def intersection(self, other: "Slope") -> int:
        return abs(self.p * other.q - other.p * self.q)

    def __str__(self) -> str:
        return "inf" if self.q == 0 else f"{self.p}/{self.q}"


def _unimodular(x: Mat2) -> Mat2:
    det = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    if not det > 0:
        raise ValueError("generator matrices must have positive determinant")
    s = math.sqrt(det)
    return ((x[0][0] / s, x[0][1] / s), (x[1][0] / s, x[1][1] / s))


@dataclass(frozen=True, slots=True)
class TorusRep:
    """Generator holonomies of a once-punctured torus representation.

    Matrices are normalized to determinant one on construction.
    """

    A: Mat2
    B: Mat2

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", _unimodular(self.A))
        object.__setattr__(self, "B", _unimodular(self.B))
        comm = _mul(_mul(self.A, self.B), _mul(_inv(self.A), _inv(self.B)))
        # the trace is a difference of products of entry magnitude
        # ~(|A| |B|)^2, so the verifiable tolerance degrades accordingly
        na = max(abs(v) for row in self.A for v in row)
        nb = max(abs(v) for row in self.B for v in row)
        allowed = PUNCTURE_TOL + 64.0 * 2.220446049250313e-16 * (na * nb) ** 2
        if abs(_tr(comm) + 2.0) > allowed:
            raise ValueError(f"commutator trace {_tr(comm)} is not -2: not a cusped torus rep")
        if abs(_tr(self.A)) <= 2.0:
            raise ValueError("generator A must be hyperbolic")

    def commutator_trace(self) -> float:
        comm = _mul(_mul(self.A, self.B), _mul(_inv(self.A), _inv(self.B)))
        return _tr(comm)


def rep_from_fn(l: float, tau: float) -> TorusRep:
    """Representation realizing Fenchel-Nielsen coordinates (l, tau).

    At tau = 0 the B-axis is the unit half-circle, perpendicular to the
    A-axis; the twist pre-composes B with the translation by tau along
    the A-axis.  With this normalization a full twist relabels slopes by
    l_{p/q}(l, tau + l) = l_{(p+q)/q}(l, tau).
    """
    if not l > 0:
        raise ValueError("curve length must be positive")
    ch, sh = math.cosh(l / 2.0), math.sinh(l / 2.0)
    a = math.exp(l / 2.0)
    A: Mat2 = ((a, 0.0), (0.0, 1.0 / a))
    cb, sb = ch / sh, 1.0 / sh
    e = math.exp(tau / 2.0)
    # B0 @ diag(e^{tau/2}, e^{-tau/2})
    B: Mat2 = ((cb * e, sb / e), (sb * e, cb / e))
    return TorusRep(A, B)


def _eigen_diag(A: Mat2) -> tuple[Mat2, Mat2, float]:
    """(P, P^{-1}, mu) with A = P diag(mu, 1/mu) P^{-1} and |mu| > 1."""
    if A[0][1] == 0.0 and A[1][0] == 0.0:
        ident: Mat2 = ((1.0, 0.0), (0.0, 1.0))
        if abs(A[0][0]) >= 1.0:
            return ident, ident, A[0][0]
        swap: Mat2 = ((0.0, 1.0), (1.0, 0.0))
        return swap, swap, A[1][1]
    t = _tr(A)
    disc = t * t - 4.0
    if disc <= 0:
        raise ValueError("generator is not hyperbolic")
    mu = (t + math.copysign(math.sqrt(disc), t)) / 2.0
    nu = 1.0 / mu
    if A[1][0] != 0.0:
        P: Mat2 = ((mu - A[1][1], nu - A[1][1]), (A[1][0], A[1][0]))
    else:
        P = ((A[0][1], A[0][1]), (mu - A[0][0], nu - A[0][0]))
    return P, _inv(P), mu


_LOG_HUGE = 30.0


def _log_half_trace(rep: TorusRep, slope: Slope) -> float:
    """log(|trace|/2) of the curve word, stable for very long words.

    The word is the block product prod A^{k_i} B over the cutting
    sequence k_i = floor(i p / q) - floor((i-1) p / q); A^k is evaluated
    in closed form from the eigenvalue of A, with a running log scale
    absorbing the growth (the overall sign does not affect |trace|).
    """
    p, q = slope.p, slope.q
    if q == 0:
        return math.log(abs(_tr(rep.A)) / 2.0)
    P, Pi, mu = _eigen_diag(rep.A)
    log_mu = math.log(abs(mu))
    B = rep.B
    M: Mat2 = ((1.0, 0.0), (0.0, 1.0))
    logscale = 0.0
    prev = 0
    for i in range(1, q + 1):
        cur = (i * p) // q
        k = cur - prev
        prev = cur
        # A^k = mu^k * P diag(1, mu^{-2k}) P^{-1}; mu^{-2k} > 0 regardless of sign
        logscale += k * log_mu
        d = math.exp(-2.0 * k * log_mu)
        Ak = _mul(_mul(P, ((1.0, 0.0), (0.0, d))), Pi)
        M = _mul(_mul(M, Ak), B)
        m = max(abs(M[0][0]), abs(M[0][1]), abs(M[1][0]), abs(M[1][1]))
        if m == 0.0 or not math.isfinite(m):
            raise ValueError("word evaluation overflowed")
        M = ((M[0][0] / m, M[0][1] / m), (M[1][0] / m, M[1][1] / m))
        logscale += math.log(m)
    half = abs(_tr(M)) / 2.0
    if half == 0.0:
        raise ValueError("trace vanished: elliptic word")
    return logscale + math.log(half)


def _length_from_log_half_trace(lh: float, slope: Slope) -> float:
    if lh > _LOG_HUGE:
        # arccosh(y) = log(2y) - 1/(4y^2) - ...; the correction is below 1e-26
        return 2.0 * (lh + math.log(2.0))
    y = math.exp(lh)
    if y <= 1.0 + 1e-14:
        raise ValueError(f"slope {slope} word is elliptic or parabolic (|tr|/2 = {y}): rep not discrete")
    return 2.0 * math.acosh(y)


def curve_length(rep: TorusRep, slope: Slope) -> float:
    """Translation length 2 arccosh(|tr W|/2) of the slope's curve word.

    The alpha-curve (slope infinity) is read off the eigenvalue of A,
    which stays exact for very short curves where the trace would lose
    half the precision.  Raises for elliptic or parabolic words
    (|trace| <= 2), which signal a non-discrete input.
    """
    if slope.q == 0:
        _, _, mu = _eigen_diag(rep.A)
        return 2.0 * math.log(abs(mu))
    return _length_from_log_half_trace(_log_half_trace(rep, slope), slope)


def _fn_curve_length(l: float, tau: float, slope: Slope) -> float:
    """Curve length straight from Fenchel-Nielsen coordinates.

    Folds the twist into the translation blocks: the word is
    prod_i diag(e^{u_i/2}, e^{-u_i/2}) B0 with u_i = k_i l + tau, whose
    entries stay moderate even when the raw generator matrices would not,
    so the sweeps remain stable for huge twists and tiny lengths.
    """
    p, q = slope.p, slope.q
    if q == 0:
        return l
    ch, sh = math.cosh(l / 2.0), math.sinh(l / 2.0)
    cb, sb = ch / sh, 1.0 / sh
    M: Mat2 = ((1.0, 0.0), (0.0, 1.0))
    logscale = 0.0
    prev = 0
    for i in range(1, q + 1):
        cur = (i * p) // q
        k = cur - prev
        prev = cur
        u = k * l + tau
        e = math.exp(u / 2.0)
        blk: Mat2 = ((cb * e, sb * e), (sb / e, cb / e))
        M = _mul(M, blk)
        m = max(abs(M[0][0]), abs(M[0][1]), abs(M[1][0]), abs(M[1][1]))
        if m == 0.0 or not math.isfinite(m):
            raise ValueError("word evaluation overflowed")
        M = ((M[0][0] / m, M[0][1] / m), (M[1][0] / m, M[1][1] / m))
        logscale += math.log(m)
    half = abs(_tr(M)) / 2.0
    if half == 0.0:
        raise ValueError("trace vanished: elliptic word")
    return _length_from_log_half_trace(logscale + math.log(half), slope)


def candidate_slopes(max_q: int, centers: tuple[float, ...] = ()) -> list[Slope]:
    """Stern-Brocot slope family: every reduced p/q with q <= max_q and
    |p| <= max_q, plus the infinite slope.

    Optional ``centers`` (twist ratios tau/l) add windows of p around
    q*center, which tightens estimates between heavily twisted surfaces;
    the default family is the plain truncation.  Families nest as max_q
    grows, so estimators built on them are monotone in max_q.
    """
    if max_q < 1:
        raise ValueError("max_q must be at least 1")
    out = {Slope(1, 0)}
    for q in range(1, max_q + 1):
        ps = set(range(-max_q, max_q + 1))
        window = max_q // q + 2
        for c in centers:
            base = round(q * c)
            ps.update(range(base - window, base + window + 1))
        for p in ps:
            if gcd(abs(p), q) == 1:
                out.add(Slope(p, q))
    return sorted(out, key=lambda s: (s.q, s.p))


def dth_estimate(
    x: FNPoint,
    y: FNPoint,
    max_q: int = 30,
    slopes: list[Slope] | None = None,
    centers: tuple[float, ...] = (),
) -> float:
    """Lower estimate of the Thurston distance: max over the slope family
    of log(l_s(y)/l_s(x)).

    Monotone non-decreasing in max_q (the families nest).  This is a raw
    max-ratio report over a finite family; no additive marking constant is
    claimed and no exactness: the estimate certifies lower bounds only.
    """
    if x.surface != "S11" or y.surface != "S11":
        raise ValueError("the holonomy model covers the once-punctured torus only")
    if slopes is None:
        slopes = candidate_slopes(max_q, centers)
    lx, tx = x.lengths[0], x.twists[0]
    ly, ty = y.lengths[0], y.twists[0]
    best = -math.inf
    for s in slopes:
        r = math.log(_fn_curve_length(ly, ty, s)) - math.log(_fn_curve_length(lx, tx, s))
        if r > best:
            best = r
    return best


def envelope_widths(y: FNPoint, t: float, max_q: int = 30) -> tuple[float, float]:
    """(d(YL, YR), d(YR, YL)) estimates between the backward stretch endpoints.

    Uses the default slope family of :func:`dth_estimate` and shares one
    length evaluation per endpoint across the two directions.
    """
    yl, yr = _endpoints_signed(y, t)
    slopes = candidate_slopes(max_q)
    ll, tl = yl.lengths[0], yl.twists[0]
    lr, tr = yr.lengths[0], yr.twists[0]
    d_lr = -math.inf
    d_rl = -math.inf
    for s in slopes:
        a = math.log(_fn_curve_length(ll, tl, s))
        b = math.log(_fn_curve_length(lr, tr, s))
        d_lr = max(d_lr, b - a)
        d_rl = max(d_rl, a - b)
    return d_lr, d_rl


def earthquake(x: FNPoint, t: float) -> FNPoint:
    """Earthquake along alpha: shift the twist by t, lengths unchanged."""
    return FNPoint(x.surface, x.lengths, (x.twists[0] + t,) + x.twists[1:])


def short_marking(x: FNPoint, max_q: int = 30) -> tuple[Slope, Slope]:
    """(beta, beta'): the shortest slope and the shortest slope crossing it.

    Ties are broken by smaller q, then smaller |p|, then positive p.
    """
    l, tau = x.lengths[0], x.twists[0]
    slopes = candidate_slopes(max_q)
    lengths = {s: _fn_curve_length(l, tau, s) for s in slopes}

    def pick(cands: list[Slope]) -> Slope:
        lmin = min(lengths[s] for s in cands)
        tied = [s for s in cands if lengths[s] <= lmin + 1e-12]
        return min(tied, key=lambda s: (s.q, abs(s.p), s.p < 0))

    beta = pick(slopes)
    dual = pick([s for s in slopes if s.intersection(beta) >= 1])
    return beta, dual


def stretch_endpoints(y: FNPoint, t: float) -> tuple[FNPoint, FNPoint]:
    """Backward stretch endpoints (left completion, right completion) at time t.

    Both have alpha-length l_alpha(y) e^{-t}; their twist gap is the
    closed-form twist width at l0 = l_alpha(y)/2.
    """
    if not t >= 0:
        raise ValueError("t must be non-negative")
    return _endpoints_signed(y, t)


def _endpoints_signed(y: FNPoint, t: float) -> tuple[FNPoint, FNPoint]:
    yl = stretch_point(y, left_spec(y.surface), t)
    yr = stretch_point(y, right_spec(y.surface), t)
    return yl, yr
