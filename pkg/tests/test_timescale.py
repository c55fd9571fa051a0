import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tscalc import (
    EmptyScale,
    FinitePoints,
    GeometricLattice,
    Interval,
    InvalidSegment,
    PointClass,
    PointNotInScale,
    UniformLattice,
    normalize,
)
from tscalc.timescale import DEFAULT_TOL


# -- normalize ---------------------------------------------------------------


def test_overlapping_intervals_merge():
    T = normalize([Interval(0, 1), Interval(0.5, 2)])
    assert T.segments == (Interval(0.0, 2.0),)


def test_segments_sorted_by_infimum():
    T = normalize([FinitePoints((3,)), Interval(0, 1)])
    assert T.segments == (Interval(0.0, 1.0), FinitePoints((3.0,)))


def test_touching_intervals_merge():
    T = normalize([Interval(1, 2), Interval(0, 1)])
    assert T.segments == (Interval(0.0, 2.0),)
    assert T.classify(1.0) is PointClass.DENSE


def test_degenerate_interval_is_a_point():
    T = normalize([Interval(2, 2)])
    assert T.segments == (FinitePoints((2.0,)),)


@pytest.mark.parametrize("bad", [
    UniformLattice(0, 0),
    UniformLattice(0, -1),
    GeometricLattice(1.5, 0, 3),
    GeometricLattice(0.5, None, None, include_zero=False),
    Interval(1, 0),
    FinitePoints((2, 1)),
    FinitePoints(()),
])
def test_invalid_segments_rejected(bad):
    with pytest.raises(InvalidSegment):
        normalize([bad])


def test_geometric_unbounded_below_index_is_closed():
    # k_min = -inf only sends points to +inf, which keeps the set closed
    T = normalize([GeometricLattice(0.5, None, 3)])
    assert T.contains(1024.0) and T.min == 0.125


def test_empty_scale():
    with pytest.raises(EmptyScale):
        normalize([])


def test_lattice_points_inside_interval_dropped():
    T = normalize([UniformLattice(0, 1, 0, 10), Interval(2.5, 5.5)])
    assert T.sigma(2.0) == 2.5
    assert T.rho(6.0) == 5.5
    assert T.classify(5.5) is PointClass.LEFT_DENSE_RIGHT_SCATTERED
    assert T.contains(4.0) and T.contains(4.2) and not T.contains(8.5)


def test_interval_touching_geometric_tail_keeps_zero_dense_from_right():
    T = normalize([Interval(-1, 0), GeometricLattice(0.5, 0, None, include_zero=True)])
    assert T.classify(0.0) is PointClass.DENSE
    assert T.sigma(0.0) == 0.0 and T.rho(0.0) == 0.0


def test_count_constructor():
    lat = UniformLattice.from_count(0, 1, 11)
    assert (lat.k_min, lat.k_max) == (0, 10)
    with pytest.raises(InvalidSegment):
        UniformLattice.from_count(0, 1)


# -- membership and jumps ------------------------------------------------------


def test_integer_membership():
    Z = normalize([UniformLattice(0, 1)])
    assert Z.contains(3.0)
    assert not Z.contains(3.4)
    assert not Z.contains(math.inf) and not Z.contains(math.nan)


def test_geometric_zero_membership():
    T = normalize([GeometricLattice(0.5, None, None, include_zero=True)])
    assert T.contains(0.0)
    assert T.contains(0.125) and not T.contains(0.3)


def test_membership_tolerance_is_relative():
    T = normalize([UniformLattice(0, 0.1)])
    assert T.contains(0.1 * 3)  # 0.30000000000000004
    assert T.contains(1e6 + 1e-4)  # within 1e-9 * 1e6
    assert not T.contains(1e6 + 1e-2)


def test_sigma_rho_examples():
    Z = normalize([UniformLattice(0, 1)])
    assert Z.sigma(3.0) == 4.0 and Z.rho(3.0) == 2.0
    assert normalize([Interval(0, 1), FinitePoints((2,))]).sigma(1.0) == 2.0
    assert normalize([Interval(0, 1)]).sigma(1.0) == 1.0
    assert normalize([FinitePoints((-1,)), Interval(0, 2)]).rho(0.0) == -1.0
    assert normalize([Interval(0, 1)]).rho(0.0) == 0.0


def test_jumps_on_q_closure(Qc):
    assert Qc.sigma(1.0) == 2.0 and Qc.rho(1.0) == 0.5
    assert Qc.sigma(0.0) == 0.0 and Qc.rho(0.0) == 0.0
    assert Qc.sigma(256.0) == 256.0


def test_point_not_in_scale(Z):
    with pytest.raises(PointNotInScale):
        Z.sigma(0.5)
    with pytest.raises(PointNotInScale):
        Z.classify(0.5)


def test_classify_examples(Z, M):
    assert normalize([Interval(0, 1)]).classify(0.5) is PointClass.DENSE
    assert Z.classify(3.0) is PointClass.ISOLATED
    assert M.classify(1.0) is PointClass.LEFT_DENSE_RIGHT_SCATTERED
    assert normalize([FinitePoints((-1,)), Interval(0, 2)]).classify(0.0) is PointClass.RIGHT_DENSE_LEFT_SCATTERED


def test_kappa_sets():
    T = normalize([UniformLattice(0, 1, 0, 10)])
    assert not T.in_kappa_kappa(10.0)
    assert not T.in_kappa_kappa(0.0)
    assert T.in_kappa_kappa(5.0)
    assert T.in_kappa_lower(10.0) and not T.in_kappa(10.0)
    assert normalize([Interval(0, 1)]).in_kappa_kappa(1.0)


def test_reflect_in_scale(Qc):
    Z = normalize([UniformLattice(0, 1)])
    assert Z.reflect_in_scale(3.0, 5.0)
    assert not Qc.reflect_in_scale(0.0, 0.25)
    assert normalize([Interval(0, 2)]).reflect_in_scale(1.0, 1.7)


def test_window_limits_points():
    Z = normalize([UniformLattice(0, 1)])
    assert Z.window(-2, 2) == [-2.0, -1.0, 0.0, 1.0, 2.0]
    assert len(Z.window(0, 1000, limit=10)) == 10


# -- properties ------------------------------------------------------------------

# small integer-valued scales so that every point can be enumerated exactly
uniform = st.builds(
    lambda s, h, c: UniformLattice(s, h, 0, c - 1),
    st.integers(-20, 20), st.sampled_from([0.5, 1.0, 2.0, 3.0]), st.integers(1, 12),
)
interval = st.builds(lambda a, w: Interval(a, a + w), st.integers(-20, 20), st.integers(0, 6))
points = st.builds(
    lambda xs: FinitePoints(tuple(sorted(set(xs)))),
    st.lists(st.integers(-30, 30).map(lambda k: k / 2), min_size=1, max_size=6),
)
geometric = st.builds(lambda a, b: GeometricLattice(0.5, a, a + b), st.integers(-4, 4), st.integers(0, 5))
segments = st.lists(st.one_of(uniform, interval, points, geometric), min_size=1, max_size=5)


def _enumerate(segs):
    """Discrete points of ``segs`` plus all interval endpoints."""
    pts, ivs = set(), []
    for s in segs:
        if isinstance(s, Interval):
            ivs.append((s.a, s.b))
            pts.update((s.a, s.b))
        elif isinstance(s, FinitePoints):
            pts.update(s.values)
        else:
            pts.update(s.point(k) for k in range(s.k_min, s.k_max + 1))
    return sorted(pts), ivs


def _oracle_sigma(pts, ivs, t):
    if any(a <= t < b for a, b in ivs):
        return t
    above = [p for p in pts if p > t + DEFAULT_TOL * max(1, abs(t))]
    return min(above) if above else t


def _oracle_rho(pts, ivs, t):
    if any(a < t <= b for a, b in ivs):
        return t
    below = [p for p in pts if p < t - DEFAULT_TOL * max(1, abs(t))]
    return max(below) if below else t


@settings(max_examples=150, deadline=None)
@given(segments)
def test_jumps_match_brute_force(segs):
    T = normalize(segs)
    pts, ivs = _enumerate(segs)
    for t in pts:
        assert T.contains(t)
        assert T.sigma(t) == pytest.approx(_oracle_sigma(pts, ivs, t), rel=1e-12)
        assert T.rho(t) == pytest.approx(_oracle_rho(pts, ivs, t), rel=1e-12)


@settings(max_examples=150, deadline=None)
@given(segments)
def test_jump_invariants(segs):
    T = normalize(segs)
    pts, _ = _enumerate(segs)
    prev = None
    for t in pts:
        s, r = T.sigma(t), T.rho(t)
        assert r <= t <= s
        assert T.contains(s) and T.contains(r)
        cls = T.classify(t)
        assert (cls is PointClass.DENSE) == (s == t and r == t)
        assert (cls is PointClass.ISOLATED) == (s > t and r < t)
        if prev is not None:
            assert T.sigma(prev) <= s and T.rho(prev) <= r
        prev = t
    assert T.min == min(pts) and T.max == max(pts)
    assert T.sigma(T.max) == T.max and T.rho(T.min) == T.min


@settings(max_examples=150, deadline=None)
@given(segments)
def test_normalize_idempotent(segs):
    T = normalize(segs)
    assert normalize(T.segments) == T


@settings(max_examples=100, deadline=None)
@given(segments)
def test_segments_sorted(segs):
    infs = [s.inf for s in normalize(segs).segments]
    assert infs == sorted(infs)


@settings(max_examples=100, deadline=None)
@given(st.integers(-40, 25))
def test_q_closure_jumps_exact(k):
    T = normalize([GeometricLattice(0.5, None, None, include_zero=True)])
    t = 0.5 ** k
    assert T.sigma(t) == 2 * t and T.rho(t) == t / 2


def test_points_below_absolute_fuzz_merge_with_zero(Qc):
    # the fuzz band is tol * max(1, |x|), so near 0 it is absolute
    assert Qc.classify(0.5 ** 40) is PointClass.DENSE
