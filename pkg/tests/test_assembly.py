import math

import numpy as np
import pytest

from sscmc.assembly import (JOIN_TOL, SMOOTH_TOL, build_complete, build_from_Iprime,
                            build_interior_only, join_I_II, join_I_IIprime,
                            join_II_Iprime, join_IIprime_Iprime, join_smoothness,
                            join_through_origin, one_sided_derivatives, origin_limits,
                            profile_uv, push_to_kruskal, reflect_time, rejected_c2)
from sscmc.domain import find_RH, find_rH, cylindrical_H, horizon_value
from sscmc.errors import ClassificationError, WrongCaseError
from sscmc.geometry import Model, Region, kruskal_uv, tortoise
from sscmc.profiles import MINUS, PLUS, BranchSpec, Profile, integrate_profile
from sscmc.verify import kruskal_invariant_error

import oracles

M1 = Model(1.0)
POINTS = 200


def _U_continuity(surface, k):
    j = surface.joins[k]
    a, b = surface.branches[j.left].kruskal, surface.branches[j.right].kruskal
    return abs(a.U[-1] - b.U[0]), abs(a.V[-1] - b.V[0])


# ------------------------------------------------------------ push-forward

def test_push_forward_at_the_horizon():
    s = build_complete(M1, 0.0, -2.0, 0.0, POINTS)
    ext = s.branches[0].kruskal
    assert ext.r[-1] == 2.0 and ext.U[-1] == 0.0 and ext.V[-1] > 0.0
    inner = s.branches[1].kruskal
    assert inner.r[0] == 2.0 and inner.U[0] == 0.0
    assert abs(ext.V[-1] - inner.V[0]) < 1e-10


@pytest.mark.parametrize("H,c,region,sign", [
    (0.0, -2.0, "I", PLUS), (0.4, 3.0, "I", PLUS), (0.0, -2.0, "II", PLUS),
    (0.3, 1.0, "IIprime", MINUS), (-0.2, 0.5, "Iprime", PLUS)])
def test_regular_push_forward_matches_chart_map(H, c, region, sign):
    p = Profile(M1, BranchSpec(region, H, c, 0.4, sign))
    lo, hi = p.interval.lo, p.interval.hi
    r = 2.5 if Region(region).exterior else 0.5 * (max(lo, 0.2) + min(hi, 1.9))
    U, V = profile_uv(p, np.array([r]))
    U0, V0 = kruskal_uv(M1, Region(region), p.t(np.array([r]))[0], r)
    np.testing.assert_allclose([U[0], V[0]], [U0, V0], rtol=1e-9)


def test_push_forward_without_regular_data():
    curve = integrate_profile(M1, BranchSpec(Region.I, 0.2, 1.0, 0.0), 2.5, 10.0, 50)
    curve.regular = None
    k = push_to_kruskal(curve)
    assert kruskal_invariant_error(M1, k) <= 1e-12


@pytest.mark.parametrize("H,c", [(0.0, -2.0), (0.0, -1.0), (0.0, 1.0), (0.5, -4.0),
                                 (-0.5, 1.0), (0.3, -2.4)])
def test_kruskal_invariant_along_surfaces(H, c):
    s = build_complete(M1, H, c, 0.3, POINTS)
    for b in s.branches:
        assert kruskal_invariant_error(M1, b.kruskal) <= 1e-10
        near = np.abs(b.kruskal.r - 2.0)
        assert near.min() <= 1e-6


# ------------------------------------------------------------ joining constants

def test_join_I_II_matches_horizon_matching():
    s = build_complete(M1, 0.0, -2.0, 0.0, POINTS)
    np.testing.assert_allclose(join_I_II(M1, 0.0, -2.0, 0.0), s.branches[1].spec.cbar,
                               atol=1e-12)
    assert _U_continuity(s, 0)[1] < 1e-10


def test_join_I_II_surface_is_anchor_independent():
    r = np.array([0.3, 1.2, 1.99])
    ts = []
    for r2 in (0.5, 1.0, 1.7):
        cbar2 = join_I_II(M1, 0.0, -2.0, 0.0, r2=r2)
        p = Profile(M1, BranchSpec(Region.II, 0.0, -2.0, cbar2, PLUS, r2))
        np.testing.assert_allclose(p.t(np.array([r2]))[0], cbar2, rtol=0, atol=0)
        ts.append(p.t(r))
    np.testing.assert_allclose(ts[0], ts[1], atol=1e-10)
    np.testing.assert_allclose(ts[2], ts[1], atol=1e-10)


def test_join_I_II_against_mpmath_formula():
    # cbar2 = cbar1 - int_{r2}^{r1} fbar' - r*(r2), every integral in mpmath
    import mpmath as mp
    H, c, r2 = 0.25, -4.0, 1.0
    r1 = oracles.tortoise_root(1.0)
    fbar = lambda x: oracles.slope(1.0, H, c, x, "I") + 1 / oracles.h(1.0, x) if x > 2 else \
        oracles.slope(1.0, H, c, x, "II", "plus") + 1 / oracles.h(1.0, x)
    integral = mp.quad(fbar, [r2, 2, r1])
    ref = 0.5 - integral - (r2 + 2 * mp.log(2 - r2))
    np.testing.assert_allclose(join_I_II(M1, H, c, 0.5, r2), float(ref), rtol=1e-11)


def test_join_II_Iprime_matches_build_and_composition():
    s = build_complete(M1, 0.0, -1.0, 0.3, POINTS)
    assert s.family == "1c"
    cbar3 = join_II_Iprime(M1, 0.0, -1.0, 0.3)
    np.testing.assert_allclose(cbar3, s.branches[3].spec.cbar, atol=1e-12)
    # composition: cbar2 at r'' then the mirror display from the II branch
    rpp = s.branches[1].spec.anchor_r
    cbar2 = join_I_II(M1, 0.0, -1.0, 0.3, rpp)
    np.testing.assert_allclose(cbar3, 2 * cbar2 - 0.3, atol=1e-12)
    U, _ = _U_continuity(s, 2)
    assert U < 1e-10


@pytest.mark.parametrize("H,c", [(0.0, 1.0), (0.3, -1.0), (-0.5, 6.0), (0.4, 0.5)])
def test_mirror_joins_match_build(H, c):
    s = build_complete(M1, H, c, 0.3, POINTS)
    np.testing.assert_allclose(join_I_IIprime(M1, H, c, 0.3), s.branches[1].spec.cbar,
                               atol=1e-12)
    assert _U_continuity(s, 0)[0] < 1e-10
    if len(s.branches) == 4:
        np.testing.assert_allclose(join_IIprime_Iprime(M1, H, c, 0.3), s.branches[3].spec.cbar,
                                   atol=1e-12)
        assert _U_continuity(s, 2)[1] < 1e-10


def test_displayed_mirror_sign_breaks_continuity():
    # the literal + sign on the integral term does not keep U continuous
    H, c, cbar1 = 0.0, 1.0, 0.3
    good = join_I_IIprime(M1, H, c, cbar1)
    p = Profile(M1, BranchSpec(Region.IIprime, H, c, 0.0, MINUS))
    r4 = p.anchor
    literal = 2 * (cbar1 + tortoise(M1, r4)) - good     # flips the integral term
    out = Profile(M1, BranchSpec(Region.I, H, c, cbar1))
    two = np.array([2.0])
    U_out = profile_uv(out, two)[0][0]
    for cbar, expect_ok in ((good, True), (literal, False)):
        inner = Profile(M1, BranchSpec(Region.IIprime, H, c, cbar, MINUS, r4))
        mis = abs(profile_uv(inner, two)[0][0] - U_out)
        assert (mis < 1e-10) == expect_ok


def test_wrong_case_errors():
    with pytest.raises(WrongCaseError):
        join_I_II(M1, 0.0, 1.0, 0.0)
    with pytest.raises(WrongCaseError):
        join_I_IIprime(M1, 0.0, -1.0, 0.0)
    with pytest.raises(WrongCaseError):
        join_II_Iprime(M1, 0.0, -2.0, 0.0)      # case (a): no turning point
    with pytest.raises(WrongCaseError):
        join_through_origin(M1, 0.5, -3.0, 0.0)
    with pytest.raises(WrongCaseError):
        join_IIprime_Iprime(M1, 0.0, 2.0, 0.0)


# ------------------------------------------------------------ origin crossing

def test_origin_straight_line():
    for cbar in (0.0, 0.3, -1.2):
        s = build_complete(M1, 0.0, 0.0, cbar, POINTS)
        assert s.family == "5"
        U, V, _ = s.kruskal_arrays()
        X, T = 0.5 * (U + V), 0.5 * (V - U)
        np.testing.assert_allclose(T, math.tanh(cbar / 4) * X, atol=1e-12 * np.abs(X).max())
    s = build_complete(M1, 0.0, 0.0, 0.0, POINTS)
    U, V, _ = s.kruskal_arrays()
    assert np.max(np.abs(V - U)) <= 1e-12 * np.abs(U).max()


@pytest.mark.parametrize("H,cbar", [(0.3, 0.2), (-0.7, -0.4), (1.0, 0.0), (0.0, 0.5)])
def test_origin_limits(H, cbar):
    s = build_complete(M1, H, horizon_value(M1, H), cbar, POINTS)
    assert s.joins[0].location == "origin" and s.joins[0].mismatch < 1e-12
    ex = origin_limits(M1, H, cbar)
    steps = (1e-3, 1e-4, 1e-5)
    for b in s.branches:
        d1, d2 = one_sided_derivatives(b.profile, s.joins[0], steps)
        assert abs(d1[-1] - ex[0]) < 1e-6
        assert abs(d2[-1] - ex[1]) < 1e-6
    sm = join_smoothness(s, 0)
    assert sm.ok


def test_origin_tolerance_band():
    H = 0.37
    crit = horizon_value(M1, H)
    assert build_complete(M1, H, crit * (1 + 5e-10), 0.0, POINTS).family == "5"
    assert build_complete(M1, H, crit * (1 + 1e-6), 0.0, POINTS).family != "5"


# ------------------------------------------------------------ families and ends

def test_case_table_examples():
    s = build_complete(M1, 0.0, -2.0, 0.0, POINTS)
    assert s.family == "1a" and s.regions == [Region.I, Region.II]
    assert [e.label for e in s.ends] == ["spatial-infinity-I", "singularity-II"]
    rH, cH = find_rH(M1, 0.1)
    s = build_complete(M1, 0.1, cH, 0.0, POINTS)
    assert s.family == "1b"
    end = s.ends[-1]
    assert end.kind == "cylinder-asymptote" and end.radius == rH
    assert abs(cylindrical_H(M1, end.radius) - 0.1) < 1e-10
    s = build_complete(M1, 0.0, 1.0, 0.0, POINTS)
    assert s.family == "3c"
    assert [e.kind for e in s.ends] == ["spatial-infinity", "spatial-infinity"]
    RH, CH = find_RH(M1, -0.2)
    s = build_complete(M1, -0.2, CH, 0.0, POINTS)
    assert s.family == "3b" and s.ends[-1].radius == RH


def test_critical_end_approaches_cylinder_monotonically():
    rH, cH = find_rH(M1, 0.1)
    s = build_complete(M1, 0.1, cH, 0.0, POINTS)
    piece = s.branches[-1]
    gap = np.abs(piece.curve.r - rH)
    # along the branch the radius closes in on r_H while t runs off monotonically
    assert np.all(np.diff(gap) <= 0)
    assert np.all(np.diff(piece.curve.t) < 0)
    assert piece.curve.t[-1] < -50
    assert gap.min() < 1e-9


def test_time_reflection_relates_mirror_pipelines():
    for H, c, cbar in ((0.3, -4.0, 0.2), (0.0, -1.0, 0.5), (0.5, -0.5, 0.0)):
        a = reflect_time(build_complete(M1, H, c, cbar, POINTS))
        b = build_complete(M1, -H, -c, -cbar, POINTS)
        assert [x.label for x in a.ends] == [x.label for x in b.ends]
        for pa, pb in zip(a.branches, b.branches):
            assert pa.kruskal.region == pb.kruskal.region
            np.testing.assert_allclose(pa.kruskal.U, pb.kruskal.U, rtol=1e-12, atol=1e-14)
            np.testing.assert_allclose(pa.kruskal.V, pb.kruskal.V, rtol=1e-12, atol=1e-14)


def test_symmetric_turning_surface_at_H0():
    # H = 0: cbar3 = -cbar1 makes the surface symmetric under X -> -X, (U, V) -> (-V, -U)
    cbar1 = -0.5 * (join_II_Iprime(M1, 0.0, -1.0, 0.0))
    s = build_complete(M1, 0.0, -1.0, cbar1, POINTS)
    np.testing.assert_allclose(s.branches[3].spec.cbar, -cbar1, atol=1e-12)
    I, Ip = s.branches[0].kruskal, s.branches[3].kruskal
    np.testing.assert_allclose(I.U[::-1], -Ip.V, rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(I.V[::-1], -Ip.U, rtol=1e-10, atol=1e-12)


def test_build_from_Iprime():
    s = build_from_Iprime(M1, 0.0, -2.0, 0.7, POINTS)
    assert s.regions == [Region.Iprime, Region.II]
    assert [e.label for e in s.ends] == ["spatial-infinity-Iprime", "singularity-II"]
    k = s.branches[0].kruskal
    assert np.all(k.U < 0) and np.all(k.V[:-1] < 0)


def test_spacelike_in_kruskal_space():
    for H, c in ((0.0, -2.0), (0.0, -1.0), (0.2, 1.0), (0.5, -4.0), (0.3, -2.4)):
        s = build_complete(M1, H, c, 0.1, POINTS)
        U, V, _ = s.kruskal_arrays()
        dU, dV = np.diff(U), np.diff(V)
        # next to r = 0 consecutive samples can share V to the last bit
        ulp = 4 * np.finfo(float).eps * np.maximum(np.abs(U[1:]), np.abs(V[1:]))
        big = (np.abs(dU) > ulp) & (np.abs(dV) > ulp)
        assert np.all(dU[big] * dV[big] > 0)
        assert np.all(dU * dV >= 0)
        assert big.mean() > 0.9


# ------------------------------------------------------------ interior-only surfaces

def test_interior_turning_surface():
    s = build_interior_only(M1, 0.0, -1.0, Region.II, 0.25, POINTS)
    assert [e.label for e in s.ends] == ["singularity-II", "singularity-II"]
    assert s.joins[0].location == "turning" and s.joins[0].mismatch == 0.0
    rp = s.joins[0].radius
    for b in s.branches:
        # dr/dt = 1/f' -> 0 from both sides of the turning point
        d = 10.0 ** -np.arange(3, 12)
        drdt = 1.0 / np.abs(b.profile.slope(rp - d))
        assert np.all(np.diff(drdt) < 0) and drdt[-1] < 1e-4
        assert 1.0 / abs(b.profile.slope(np.array([rp]))[0]) == 0.0
    a, b = s.branches
    assert np.all(a.curve.slope > 0) and np.all(b.curve.slope < 0)


def test_interior_critical_surface():
    rH, cH = find_rH(M1, 0.2)
    s = build_interior_only(M1, 0.2, cH, Region.II, 0.0, POINTS)
    assert s.ends[-1].kind == "cylinder-asymptote" and s.ends[-1].radius == rH
    assert s.ends[0].label == "singularity-II"
    RH, CH = find_RH(M1, 0.2)
    s = build_interior_only(M1, 0.2, CH, Region.IIprime, 0.0, POINTS)
    assert s.ends[-1].kind == "cylinder-asymptote" and s.ends[-1].radius == RH
    assert s.regions == [Region.IIprime]


def test_interior_only_needs_right_case():
    with pytest.raises(ClassificationError):
        build_interior_only(M1, 0.0, -2.0, Region.II)


# ------------------------------------------------------------ smoothness and controls

@pytest.mark.parametrize("H,c", [(0.0, -1.0), (0.0, 1.0), (0.6, -5.0), (-0.3, 2.0),
                                 (0.9, -7.3), (-1.0, 9.0)])
def test_join_smoothness(H, c):
    s = build_complete(M1, H, c, 0.0, POINTS)
    for k, j in enumerate(s.joins):
        assert j.mismatch < JOIN_TOL
        if j.location in ("L+", "L-", "origin"):
            sm = join_smoothness(s, k)
            assert sm.first_gap < SMOOTH_TOL and sm.second_gap < SMOOTH_TOL


@pytest.mark.parametrize("H,c", [(0.3, -3.0), (0.5, -7.0), (1.0, -9.0)])
def test_rejected_constant_breaks_continuity(H, c):
    c2 = rejected_c2(M1, H, c)
    np.testing.assert_allclose(c2, -c - 16 * H)
    s = build_complete(M1, H, c, 0.0, POINTS, c2_override=c2)
    assert s.joins[0].mismatch > 1e-3


def test_rejected_constant_inadmissible_elsewhere():
    for H, c in ((0.0, -2.0), (-0.5, 1.0), (0.3, -6.0)):
        with pytest.raises(ClassificationError):
            build_complete(M1, H, c, 0.0, POINTS, c2_override=rejected_c2(M1, H, c))
