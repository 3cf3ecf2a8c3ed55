"""Tests for the once-punctured torus holonomy model and distance estimator."""

import math
from math import gcd

import pytest

from thurston_kit.stretch import FNPoint, twist_width_closed
from thurston_kit.torus import (
    Slope,
    TorusRep,
    candidate_slopes,
    curve_length,
    dth_estimate,
    earthquake,
    envelope_widths,
    rep_from_fn,
    short_marking,
    stretch_endpoints,
    _fn_curve_length,
)

#: length of the dual curve at (l, tau) = (1, 0): 2 arccosh(coth(1/2)),
#: evaluated once and frozen
DUAL_LENGTH_GOLDEN = 2.8136582274945905

#: stabilized estimate of d(X, full twist of X) at l = 1, frozen after
#: computing with max_q up to 30
FULL_TWIST_GOLDEN = 0.20861035263064975

SQUARE_LENGTH = 2.0 * math.log(1.0 + math.sqrt(2.0))


# ------------------------------------------------------------- slopes


def test_slope_canonicalization():
    assert Slope(-1, 0) == Slope(1, 0)
    assert Slope(2, -3) == Slope(-2, 3)
    assert Slope.of(4, 6) == Slope(2, 3)
    with pytest.raises(ValueError):
        Slope(2, 4)
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_slope_intersection_number():
    assert Slope(0, 1).intersection(Slope(1, 0)) == 1
    assert Slope(1, 2).intersection(Slope(1, 2)) == 0
    assert Slope(3, 5).intersection(Slope(1, 2)) == 1


def test_candidate_families_nest():
    small = set(candidate_slopes(5, (0.0, 7.3)))
    large = set(candidate_slopes(30, (0.0, 7.3)))
    assert small <= large


# ------------------------------------------------------------- representations


def test_commutator_trace_is_minus_two():
    for l, tau in ((0.5, 0.0), (1.3, 0.7), (3.0, -2.4)):
        rep = rep_from_fn(l, tau)
        assert rep.commutator_trace() == pytest.approx(-2.0, abs=1e-9)


def test_rep_rejects_bad_input():
    with pytest.raises(ValueError):
        rep_from_fn(0.0, 1.0)
    with pytest.raises(ValueError):
        TorusRep(((2.0, 0.0), (0.0, 0.5)), ((1.0, 1.0), (0.0, 1.0)))


def test_markov_identity():
    for l, tau in ((1.2, 0.5), (0.7, -1.0), (2.5, 3.3)):
        rep = rep_from_fn(l, tau)
        x = abs(rep.A[0][0] + rep.A[1][1])
        y = abs(rep.B[0][0] + rep.B[1][1])
        z_mat = (
            rep.A[0][0] * rep.B[0][0] + rep.A[0][1] * rep.B[1][0],
            rep.A[1][0] * rep.B[0][1] + rep.A[1][1] * rep.B[1][1],
        )
        z = abs(z_mat[0] + z_mat[1])
        lhs = x * x + y * y + z * z
        assert lhs == pytest.approx(x * y * z, rel=1e-6)


# ------------------------------------------------------------- lengths


def test_alpha_length_is_l_for_all_twists():
    for tau in (-3.0, 0.0, 5.0):
        assert curve_length(rep_from_fn(1.37, tau), Slope(1, 0)) == pytest.approx(1.37, rel=1e-12)


def test_dual_length_golden_value():
    assert curve_length(rep_from_fn(1.0, 0.0), Slope(0, 1)) == pytest.approx(DUAL_LENGTH_GOLDEN, rel=1e-12)


def test_word_block_count_matches_slope():
    # the cutting sequence of p/q has q blocks whose exponents sum to p
    for p, q in ((3, 2), (-5, 3), (7, 5)):
        ks = [(i * p) // q - ((i - 1) * p) // q for i in range(1, q + 1)]
        assert len(ks) == q and sum(ks) == p


def test_full_twist_relabels_slopes():
    l, tau = 0.9, 0.37
    for q in range(1, 11):
        for p in range(-12, 13):
            if gcd(abs(p), q) != 1:
                continue
            a = curve_length(rep_from_fn(l, tau + l), Slope(p, q))
            b = curve_length(rep_from_fn(l, tau), Slope.of(p + q, q))
            assert a == pytest.approx(b, abs=1e-8)


def test_matrix_and_fn_length_paths_agree():
    for l, tau in ((1.0, 0.3), (2.5, -1.2), (0.2, 4.0)):
        rep = rep_from_fn(l, tau)
        for q in range(0, 7):
            for p in range(-8, 9):
                if q == 0 and p != 1:
                    continue
                if q > 0 and gcd(abs(p), q) != 1:
                    continue
                s = Slope(p, q)
                assert curve_length(rep, s) == pytest.approx(_fn_curve_length(l, tau, s), abs=1e-10)


def test_elliptic_guard_fires_for_non_discrete_words():
    # fabricate a non-rep pair (bypassing validation) whose commutator-type
    # word has small trace
    rep = object.__new__(TorusRep)
    object.__setattr__(rep, "A", ((2.0, 0.0), (0.0, 0.5)))
    object.__setattr__(rep, "B", ((math.cos(0.4), -math.sin(0.4)), (math.sin(0.4), math.cos(0.4))))
    with pytest.raises(ValueError):
        curve_length(rep, Slope(0, 1))


# ------------------------------------------------------------- estimator


def test_estimate_vanishes_on_equal_points():
    x = FNPoint("S11", (1.0,), (0.2,))
    assert dth_estimate(x, x, 10) == 0.0


def test_estimate_monotone_in_family_size():
    x = FNPoint("S11", (1.0,), (0.0,))
    y = FNPoint("S11", (1.5,), (0.9,))
    assert dth_estimate(x, y, 5) <= dth_estimate(x, y, 30) + 1e-15


def test_estimate_asymmetric_sum_nonnegative():
    pts = [FNPoint("S11", (l,), (tau,)) for l, tau in ((1.0, 0.0), (1.5, 0.3), (0.7, -0.6))]
    for x in pts:
        for y in pts:
            total = dth_estimate(x, y, 12) + dth_estimate(y, x, 12)
            if x == y:
                assert total == 0.0
            else:
                assert total > 0.0


def test_estimate_subadditive_on_fixed_slope_family():
    slopes = candidate_slopes(8, (0.0,))
    x = FNPoint("S11", (1.0,), (0.0,))
    y = FNPoint("S11", (1.3,), (0.5,))
    z = FNPoint("S11", (0.8,), (-0.4,))
    dxz = dth_estimate(x, z, slopes=slopes)
    dxy = dth_estimate(x, y, slopes=slopes)
    dyz = dth_estimate(y, z, slopes=slopes)
    assert dxz <= dxy + dyz + 1e-12


def test_full_twist_estimate_stabilizes():
    x = FNPoint("S11", (1.0,), (0.0,))
    y = FNPoint("S11", (1.0,), (1.0,))
    vals = [dth_estimate(x, y, mq) for mq in (5, 10, 20, 30)]
    assert vals[-1] > 0
    assert vals[-1] == pytest.approx(FULL_TWIST_GOLDEN, abs=1e-12)
    assert max(vals) - min(vals) <= 1e-12


# ------------------------------------------------------------- earthquakes


def test_earthquake_shifts_twist_only():
    x = FNPoint("S11", (1.0,), (0.2,))
    assert earthquake(x, 0.0) == x
    y = earthquake(earthquake(x, 0.3), 0.4)
    assert y.twists[0] == pytest.approx(earthquake(x, 0.7).twists[0], abs=1e-15)
    assert y.lengths == x.lengths


def test_earthquake_distance_bounded_by_collar_estimate():
    # d(X, Eq_t X) <= log(e^{l/2} t) + C for one finite C across the grid
    worst = -math.inf
    for la in (0.5, 1.0, 2.0):
        x = FNPoint("S11", (la,), (0.0,))
        for t in (0.5, 2.0, 20.0):
            d = dth_estimate(x, earthquake(x, t), 20)
            worst = max(worst, d - (0.5 * la + math.log(t)))
    assert worst < 3.0


# ------------------------------------------------------------- markings


def test_short_marking_small_length_picks_alpha():
    beta, dual = short_marking(FNPoint("S11", (0.05,), (0.0,)), 12)
    assert beta == Slope(1, 0)
    assert beta.intersection(dual) >= 1


def test_short_marking_square_torus_tie_break():
    # slopes 0 and infinity tie; the smaller-q rule picks infinity
    beta, dual = short_marking(FNPoint("S11", (SQUARE_LENGTH,), (0.0,)), 12)
    assert beta == Slope(1, 0)
    assert dual == Slope(0, 1)


def test_short_marking_duality_properties():
    beta, dual = short_marking(FNPoint("S11", (1.7,), (0.8,)), 12)
    assert beta != dual
    assert beta.intersection(dual) >= 1


# ------------------------------------------------------------- stretch endpoints


def test_stretch_endpoints_at_zero_coincide():
    y = FNPoint("S11", (2.0,), (0.45,))
    yl, yr = stretch_endpoints(y, 0.0)
    assert yl == y and yr == y


def test_stretch_endpoints_lengths_scale():
    y = FNPoint("S11", (2.0,), (0.0,))
    yl, yr = stretch_endpoints(y, 1.5)
    assert yl.lengths[0] == pytest.approx(2.0 * math.exp(-1.5), rel=1e-14)
    assert yr.lengths[0] == yl.lengths[0]


def test_stretch_endpoints_twist_gap_matches_closed_width():
    for l0 in (0.3, 1.0, 2.5):
        y = FNPoint("S11", (2.0 * l0,), (0.7,))
        for t in (0.5, 1.0, 3.0):
            yl, yr = stretch_endpoints(y, t)
            assert yl.twists[0] - yr.twists[0] == pytest.approx(twist_width_closed(l0, t), abs=1e-9)


def test_stretch_endpoints_reject_negative_time():
    with pytest.raises(ValueError):
        stretch_endpoints(FNPoint("S11", (2.0,), (0.0,)), -1.0)


def test_envelope_widths_nonnegative_and_zero_at_origin():
    y = FNPoint("S11", (2.0,), (0.0,))
    d1, d2 = envelope_widths(y, 0.0, 10)
    assert d1 == 0.0 and d2 == 0.0
    d1, d2 = envelope_widths(y, 2.0, 10)
    assert d1 > 0.0 and d2 > 0.0


def test_puncture_conservation_under_earthquake():
    x = FNPoint("S11", (1.1,), (0.3,))
    for t in (0.0, 0.6, 5.0):
        y = earthquake(x, t)
        rep = rep_from_fn(y.lengths[0], y.twists[0])
        assert rep.commutator_trace() == pytest.approx(-2.0, abs=1e-9)
