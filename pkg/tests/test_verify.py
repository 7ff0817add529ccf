import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sscmc.assembly import build_complete
from sscmc.domain import cylindrical_H
from sscmc.errors import DomainError
from sscmc.geometry import Model, Region, tortoise
from sscmc.profiles import BranchSpec, Profile, SampledCurve
from sscmc.verify import (angular_curvature, check_null_bounds, check_spacelike,
                          cylinder_curvature_numeric, divergence_mean_curvature,
                          kruskal_invariant_error, mean_curvature_profile,
                          mean_curvature_residual, principal_curvatures, verify_surface)

import oracles

M1 = Model(1.0)
BRANCHES = [
    BranchSpec(Region.I, 0.0, -2.0, 0.0),
    BranchSpec(Region.I, 0.6, 1.0, 0.3),
    BranchSpec(Region.I, -0.4, 5.0, 0.0),
    BranchSpec(Region.II, 0.0, -2.0, 0.0, "plus", 1.0),
    BranchSpec(Region.II, 0.3, -4.0, 0.0, "minus", 1.0),
    BranchSpec(Region.IIprime, -0.2, 3.0, 0.0, "minus", 1.0),
]


def _curve(spec, points=1000):
    return Profile(M1, spec).sample(grid=points)


def test_constant_slice_has_zero_residual():
    curve = _curve(BranchSpec(Region.I, 0.0, 0.0, 0.0))
    assert np.all(curve.t == 0.0)
    assert mean_curvature_residual(curve) == 0.0


@pytest.mark.parametrize("spec", BRANCHES, ids=lambda s: "%s-%g-%g" % (s.region.value, s.H, s.c))
def test_integrated_branches_solve_the_equation(spec):
    curve = _curve(spec)
    assert mean_curvature_residual(curve) < 1e-6
    _, _, ok = mean_curvature_profile(curve)
    # interior branches lose the stretch near r = 0 where 1 - 1/|f'h| < 1e-3
    assert ok.mean() > (0.6 if spec.region.exterior else 0.35)


def test_too_few_points():
    curve = _curve(BRANCHES[0], 20)
    short = SampledCurve(curve.region, curve.r[:8], curve.t[:8], curve.spec, M1)
    with pytest.raises(DomainError):
        mean_curvature_residual(short)


@pytest.mark.parametrize("spec", BRANCHES, ids=lambda s: "%s-%g-%g" % (s.region.value, s.H, s.c))
@pytest.mark.parametrize("bump", ["sin", "cos3", "gauss"])
def test_corruption_is_detected(spec, bump):
    curve = _curve(spec)
    base = mean_curvature_residual(curve)
    r = curve.r
    pert = {"sin": np.sin(r), "cos3": np.cos(3 * r),
            "gauss": np.exp(-((r - np.median(r)) / 0.3) ** 2)}[bump]
    bad = SampledCurve(curve.region, r, curve.t + 1e-3 * pert, curve.spec, M1)
    res = mean_curvature_residual(bad)
    assert res >= 100 * max(base, 1e-12)
    if bump == "sin":
        if spec.H == 0.0 and spec.region.exterior:
            # f' ~ 0 and Q ~ 1 here, so the response is about t''/3 = 1e-3 sin(r)/3
            assert 1e-4 < res < 1e-3
        else:
            assert res > 1e-2


def test_principal_curvatures_examples():
    for H in (-1.0, 0.0, 0.7):
        s = principal_curvatures(M1, H, 0.0, 5.0)
        assert s.h11 == s.h22 == s.h33 == H
    s = principal_curvatures(M1, 0.4, 3.0, 1e8)
    np.testing.assert_allclose([s.h11, s.h33], [0.4, 0.4], atol=1e-20)
    # the closed form at r = 2 is 1/8, -1/4; r = 2M itself is outside the domain
    with pytest.raises(DomainError):
        principal_curvatures(M1, 0.0, 1.0, 2.0)
    s = principal_curvatures(M1, 0.0, 1.0, 2.0 + 1e-12)
    np.testing.assert_allclose([s.h11, s.h22, s.h33], [1 / 8, 1 / 8, -1 / 4], rtol=1e-11)


@given(H=st.floats(-5, 5), c=st.floats(-50, 50), r=st.floats(2.001, 1e4))
def test_principal_curvatures_mean_is_exact(H, c, r):
    s = principal_curvatures(M1, H, c, r)
    assert s.exact[3] == Fraction(H)
    assert s.H_mean == H


def test_angular_curvature_matches_closed_form():
    spec = BranchSpec(Region.I, 0.3, -1.5, 0.0)
    curve = _curve(spec)
    r, k = angular_curvature(curve)
    keep = (r > 2.2) & (r < 50)
    np.testing.assert_allclose(k[keep], 0.3 + (-1.5) / r[keep] ** 3, rtol=1e-7, atol=1e-9)


def test_divergence_form_agrees():
    for spec in BRANCHES[:3]:
        r, Hn = divergence_mean_curvature(_curve(spec))
        keep = (r > 2.3) & (r < 100)
        np.testing.assert_allclose(Hn[keep], spec.H, atol=1e-6)


def test_cylinder_oracle():
    for r0 in np.linspace(0.05, 1.95, 20):
        num = cylinder_curvature_numeric(M1, r0)
        assert abs(num - cylindrical_H(M1, r0)) <= 1e-10 * max(1.0, abs(num))
        assert abs(num - oracles.cylinder_H(1.0, r0)) <= 1e-10 * max(1.0, abs(num))
    with pytest.raises(DomainError):
        cylinder_curvature_numeric(M1, 2.5)


def test_spacelike_checks():
    for spec in BRANCHES:
        rep = check_spacelike(_curve(spec, 300))
        assert rep.ok and rep.exact and rep.margin > 0


def test_null_line_is_not_spacelike():
    r = np.linspace(3.0, 10.0, 300)
    line = SampledCurve(Region.I, r, r + 2 * np.log(r - 2) + 0.4, None, M1)
    rep = check_spacelike(line)
    assert not rep.ok and abs(rep.margin) < 1e-8


def test_interior_gradient_limit_at_horizon():
    # <grad F, grad F> = h f'^2 - 1/h -> -1/(-2MH - c/4M^2)^2 as r -> 2M from inside
    for H, c in ((0.0, -2.0), (0.3, -4.0), (-0.5, 1.0)):
        p = Profile(M1, BranchSpec(Region.II, H, c, 0.0, "plus", 1.99))
        r = 2.0 - 1e-7
        hr = (r - 2) / r
        fp = p.slope(np.array([r]))[0]
        target = -1.0 / (-2 * H - c / 4) ** 2
        np.testing.assert_allclose(hr * fp * fp - 1 / hr, target, rtol=1e-5)


@pytest.mark.parametrize("spec", [BranchSpec(Region.I, 0.0, -2.0, 0.0),
                                  BranchSpec(Region.I, 0.5, -1.0, 0.0),
                                  BranchSpec(Region.II, 0.0, -2.0, 0.0, "plus", 1.0),
                                  BranchSpec(Region.II, 0.2, -3.0, 0.0, "minus", 1.0)],
                         ids=["I-c<", "I-c>", "II-plus", "II-minus"])
def test_null_bounds(spec):
    p = Profile(M1, spec)
    iv = p.interval
    if spec.region.exterior:
        curve = p.sample(2.0 + 1e-13, 4.0, 1500)
    else:
        curve = p.sample(max(iv.lo, 1.0), 2.0 - 1e-13, 1500)
    rep = check_null_bounds(curve)
    assert rep.bounded and rep.monotone
    assert rep.null_sign == p.n
    assert rep.oscillation <= rep.predicted_width


def test_null_bounds_refinement_h0():
    # H = 0, c = -2: t + r* converges monotonically as r -> 2M, the same on finer grids
    p = Profile(M1, BranchSpec(Region.I, 0.0, -2.0, 0.0))
    reps = [check_null_bounds(p.sample(2.0 + 1e-13, 4.0, n)) for n in (1000, 2000, 4000)]
    for rep in reps:
        assert rep.bounded and rep.null_sign == -1
    exact = p.t(np.array([2.0 + 1e-12])) + tortoise(M1, np.array([2.0 + 1e-12]))
    for rep in reps:
        off = np.array(rep.offsets)
        k = int(np.argmin(np.abs(off - 1e-12)))
        np.testing.assert_allclose(rep.values[k], exact[0], atol=1e-8)


def test_null_bounds_preconditions():
    p = Profile(M1, BranchSpec(Region.I, 0.0, -2.0, 0.0))
    with pytest.raises(DomainError):
        check_null_bounds(p.sample(2.1, 4.0, 200))
    crit = Profile(M1, BranchSpec(Region.I, 0.25, -2.0, 0.0, anchor_r=2.0))
    with pytest.raises(DomainError, match="finite"):
        check_null_bounds(crit.sample(2.0 + 1e-12, 4.0, 200))


def test_kruskal_invariant_error_on_surface():
    s = build_complete(M1, 0.3, -4.0, 0.1, 400)
    for b in s.branches:
        assert kruskal_invariant_error(M1, b.kruskal) <= 1e-10


def test_verify_surface_report():
    rep = verify_surface(build_complete(M1, 0.0, -1.0, 0.0, 1000))
    assert rep["ok"] and rep["family"] == "1c"
    assert len(rep["branches"]) == 4 and len(rep["joins"]) == 3
    assert all(b["residual"] < 1e-6 for b in rep["branches"])
    assert math.isfinite(rep["joins"][0]["second_gap"])


def test_verify_surface_flags_rejected_constant():
    s = build_complete(M1, 0.3, -3.0, 0.0, 400, c2_override=-3.0 * -1 - 16 * 0.3)
    rep = verify_surface(s, smooth=False)
    assert not rep["ok"] and not rep["joins"][0]["ok"]


@pytest.mark.parametrize("rel", [1e-4, 1e-5])
def test_near_degenerate_constant_converges_with_refinement(rel):
    # |c + 8M^3 H| small but outside the origin band: the regular part has a plateau of width
    # (c + 8M^3 H)^2 / (2M)^3 next to the horizon that 1000 points do not fully resolve
    H = 0.37
    p = Profile(M1, BranchSpec(Region.I, H, -8 * H * (1 + rel), 0.0))
    res = [mean_curvature_residual(p.sample(grid=n)) for n in (1000, 2000, 4000)]
    assert res[0] > res[1] > res[2]
    assert res[2] < 1e-6


def test_unresolvable_piece_is_reported_unchecked():
    # interior excursion of width ~1e-12 next to r = 2M: t ~ 46 has no resolvable derivative
    H = 0.37
    s = build_complete(M1, H, -8 * H * (1 + 1e-6), 0.0, 1000)
    rep = verify_surface(s)
    inner = [b for b in rep["branches"] if b["region"] in ("II", "IIprime")]
    assert inner and all(b["checked"] == 0 and math.isnan(b["residual"]) for b in inner)
    assert not rep["ok"]
    assert min(b["checked"] for b in verify_surface(build_complete(M1, 0.3, -4.0, 0.1))["branches"]) > 100


def test_turning_radius_within_rounding_of_horizon():
    H = 0.37
    with pytest.raises(DomainError, match="rounding"):
        build_complete(M1, H, -8 * H * (1 + 1e-8), 0.0, 1000)
