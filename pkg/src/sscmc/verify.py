"""Independent checks of computed hypersurfaces.

The residual check recomputes the mean curvature of a sampled curve from
its (r, t) data alone.  The CMC equation f'' + P f' = 3 s H Q^{3/2} with
Q = 1/h - h f'^2 and P = Q (2h/r + h'/2) + h'/h is evaluated in terms of
w = t - n r* (n the null sign of the branch, r* the tortoise radius), whose
derivatives stay bounded at the horizon.  With f' = w' + n/h and n = +-1,

    Q = -w' (h w' + 2n),
    f'' + P f' = w'' + Q ((2h/r + h'/2) w' + 2n/r) - n h' w'^2 / 2,

an exact rewriting in which the 1/h poles cancel analytically.  Derivatives
are nine-point central differences in the grid index plus the chain rule.
"""
from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np
from scipy.integrate import trapezoid

from .errors import DomainError
from .geometry import Region, kruskal_product, tortoise
from .domain import horizon_value, in_critical_band
from .profiles import Profile

MARGIN = 1e-3
NOISE_TOL = 1e-7
_EPS = np.finfo(float).eps


def fd_weights(x, m=2):
    """Finite-difference weights at 0 for nodes x (shape (N, n)), Fornberg's recursion.

    Returns c with c[k, i, j] the weight of node j for the k-th derivative on
    stencil i; exact for polynomials of degree n - 1.
    """
    x = np.asarray(x, dtype=float)
    N, n = x.shape
    c = np.zeros((m + 1, N, n))
    c[0, :, 0] = 1.0
    c1 = np.ones(N)
    c4 = x[:, 0].copy()
    for i in range(1, n):
        mn = min(i, m)
        c2 = np.ones(N)
        c5 = c4
        c4 = x[:, i]
        for j in range(i):
            c3 = x[:, i] - x[:, j]
            c2 = c2 * c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[k, :, i] = c1 * (k * c[k - 1, :, i - 1] - c5 * c[k, :, i - 1]) / c2
                c[0, :, i] = -c1 * c5 * c[0, :, i - 1] / c2
            for k in range(mn, 0, -1):
                c[k, :, j] = (c4 * c[k, :, j] - k * c[k - 1, :, j]) / c3
            c[0, :, j] = c4 * c[0, :, j] / c3
        c1 = c2
    return c


HALF = 4


def _central_weights(half):
    nodes = np.arange(-half, half + 1, dtype=float)
    w = fd_weights(nodes[None, :], 2)[:, 0, :]
    return w[1], w[2]


def _index_derivatives(y):
    """First and second derivatives in the grid index (central, 2*HALF+1 points)."""
    d1, d2 = _central_weights(HALF)
    idx = np.arange(HALF, y.size - HALF)[:, None] + np.arange(-HALF, HALF + 1)[None, :]
    dy = y[idx] - y[idx[:, HALF:HALF + 1]]
    return dy @ d1, dy @ d2


def _stencil_derivatives(r, y):
    """dy/dr and d2y/dr2 at points HALF..n-1-HALF via the grid index.

    The grids are smooth images of a uniform parameter (geometric near the
    horizon, quadratic near turning points), so differencing in the index
    and applying the chain rule is accurate where differencing in r is not.
    """
    r1, r2 = _index_derivatives(r)
    y1, y2 = _index_derivatives(y)
    return y1 / r1, (y2 * r1 - y1 * r2) / r1**3


def _rstar_term(model, r, n):
    if n == 0:
        return np.zeros_like(r)
    return n * tortoise(model, r)


def _w_derivatives(r, w):
    if r.size < 2 * HALF + 1:
        raise DomainError("curve needs at least %d points" % (2 * HALF + 1), points=int(r.size))
    wp, wpp = _stencil_derivatives(r, w)
    return r[HALF:-HALF], wp, wpp


def curve_derivatives(curve, n=0):
    """(r, f', f'') at the interior stencil points of a sampled curve."""
    M = curve.model.mass
    r, wp, wpp = _w_derivatives(curve.r, curve.t - _rstar_term(curve.model, curve.r, n))
    h = (r - 2.0 * M) / r
    return r, wp + n / h, wpp - n * (2.0 * M / r**2) / h**2


def _curve_params(curve, H, sign, n):
    if curve.spec is not None:
        H = curve.spec.H if H is None else H
        sign = curve.spec.slope_sign if sign is None else sign
        if n is None:
            n = Profile(curve.model, curve.spec).n
    if H is None or sign is None:
        raise DomainError("curve without a branch spec needs H and the slope sign")
    return H, sign, (0 if n is None else int(n))


def _H_from_w(M, region, s, n, r, wp, wpp):
    h = (r - 2.0 * M) / r
    hp = 2.0 * M / r**2
    with np.errstate(divide="ignore", invalid="ignore"):
        if n == 0:
            fh = wp * h
            Q = 1.0 / h - wp * wp * h
            lhs = wpp + (Q * (2.0 * h / r + 0.5 * hp) + hp / h) * wp
        else:
            fh = wp * h + n
            Q = -wp * (wp * h + 2.0 * n)
            lhs = wpp + Q * ((2.0 * h / r + 0.5 * hp) * wp + 2.0 * n / r) - 0.5 * n * hp * wp * wp
        Hn = s * lhs / (3.0 * Q**1.5)
        if Region(region).exterior:
            m = 1.0 - np.abs(fh)
        else:
            m = 1.0 - 1.0 / np.abs(fh)
    return Hn, m


def mean_curvature_profile(curve, H=None, sign=None, n=None, margin=MARGIN):
    """Pointwise H_num and the mask of points where the check is meaningful.

    A point is kept when its spacelike margin (1 - |f'h| outside the horizon,
    1 - 1/|f'h| inside) lies in (margin, 1 - margin) and when H_num is not
    dominated by rounding: re-evaluating with the data perturbed by an
    alternating pattern of a few ulps must move H_num by less than NOISE_TOL (relative to max(1, |H|)).
    """
    H, s, n = _curve_params(curve, H, sign, n)
    M = curve.model.mass
    w = curve.t - _rstar_term(curve.model, curve.r, n)
    r, wp, wpp = _w_derivatives(curve.r, w)
    Hn, m = _H_from_w(M, curve.region, s, n, r, wp, wpp)
    noise = 4.0 * _EPS * (np.abs(curve.t) + np.abs(w) + 1.0)
    noise = noise * (-1.0) ** np.arange(w.size)
    _, wp2, wpp2 = _w_derivatives(curve.r, w + noise)
    Hn2, _ = _H_from_w(M, curve.region, s, n, r, wp2, wpp2)
    with np.errstate(invalid="ignore"):
        stable = np.abs(Hn2 - Hn) <= NOISE_TOL * max(1.0, abs(H))
    ok = (m > margin) & np.isfinite(Hn) & stable
    if not curve.region.exterior:
        ok &= m < 1.0 - margin
    return r, Hn, ok


def mean_curvature_residual(curve, H=None, sign=None, n=None, margin=MARGIN):
    """max |H_num - H| over the admissible interior grid points.

    NaN when no point is admissible (nothing was checked).
    """
    H, s, n = _curve_params(curve, H, sign, n)
    _, Hn, ok = mean_curvature_profile(curve, H, s, n, margin)
    if not np.any(ok):
        return math.nan
    return float(np.max(np.abs(Hn[ok] - H)))


def checked_points(curve, margin=MARGIN):
    """Number of grid points at which the residual check is meaningful."""
    return int(np.count_nonzero(mean_curvature_profile(curve, margin=margin)[2]))


def divergence_mean_curvature(curve, sign=None):
    """H from the divergence of the unit normal, 3H = s r^-2 d/dr (r^2 h f'/sqrt(Q)).

    Uses only first derivatives of t, then one more difference; a second
    route to the mean curvature besides the CMC equation.
    """
    s = sign if sign is not None else curve.spec.slope_sign
    M = curve.model.mass
    r, fp, _ = curve_derivatives(curve)
    h = (r - 2.0 * M) / r
    Q = 1.0 / h - fp * fp * h
    with np.errstate(invalid="ignore"):    # Q < 0 only at rounding level next to r = 2M
        g = r * r * h * fp / np.sqrt(Q)
    g1, _ = _stencil_derivatives(r, g)
    return r[HALF:-HALF], s * g1 / (3.0 * r[HALF:-HALF] ** 2)


@dataclass(frozen=True)
class CurvatureSample:
    r: float
    h11: float
    h22: float
    h33: float
    H_mean: float
    exact: tuple = None


def principal_curvatures(model, H, c1, r):
    """h11 = h22 = H + c1/r^3 and h33 = H - 2 c1/r^3 on a region I branch.

    The values are formed in exact rational arithmetic from the floats H and
    c1/r^3, so the mean of the three is exactly H.
    """
    if not r > 2.0 * model.mass:
        raise DomainError("principal curvatures are tabulated for r > 2M", r=r)
    q = Fraction(c1 / r**3)
    Hf = Fraction(H)
    a, b = Hf + q, Hf - 2 * q
    mean = (a + a + b) / 3
    return CurvatureSample(float(r), float(a), float(a), float(b), float(mean), (a, a, b, mean))


def angular_curvature(curve, sign=None):
    """Angular principal curvature s h f' / (r sqrt(Q)) from the curve data."""
    s = sign if sign is not None else curve.spec.slope_sign
    M = curve.model.mass
    r, fp, _ = curve_derivatives(curve)
    h = (r - 2.0 * M) / r
    Q = 1.0 / h - fp * fp * h
    with np.errstate(invalid="ignore"):
        return r, s * h * fp / (r * np.sqrt(Q))


def cylinder_curvature_numeric(model, r0, step=None):
    """Mean curvature of the slice r = r0 inside the horizon from 3H = div N.

    N is the future unit normal of the level set r = const, N^r = -sqrt(-h),
    N^t = 0, and div N = r^-2 d/dr (r^2 N^r); the derivative is a central
    difference with one Richardson step.
    """
    M = model.mass
    if not 0.0 < r0 < 2.0 * M:
        raise DomainError("cylinder radius must lie in (0, 2M)", r0=r0)
    eps = step if step is not None else 1e-3 * min(r0, 2.0 * M - r0)

    def flux(r):
        h = (r - 2.0 * M) / r
        grad_r = h * 1.0              # g^rr dF/dr for the level function F = r
        norm = math.sqrt(-grad_r * 1.0)
        return r * r * grad_r / norm

    def central(e):
        return (flux(r0 + e) - flux(r0 - e)) / (2.0 * e)

    d = (4.0 * central(eps / 2.0) - central(eps)) / 3.0
    return d / (3.0 * r0 * r0)


@dataclass(frozen=True)
class SpacelikeReport:
    ok: bool
    margin: float
    exact: bool


def check_spacelike(curve, tol=1e-8):
    """Spacelike test: |f'h| < 1 outside, (f'h)^2 > 1 inside the horizon.

    With a branch spec the margin comes from the closed-form slope (exact
    sign, valid up to the horizon); otherwise from finite differences, and a
    margin below ``tol`` counts as null.
    """
    if curve.spec is not None:
        p = Profile(curve.model, curve.spec)
        m = float(np.min(p.spacelike_margin(curve.r)))
        return SpacelikeReport(bool(m > 0.0), m, True)
    r, fp, _ = curve_derivatives(curve)
    fh = fp * (1.0 - 2.0 * curve.model.mass / r)
    if curve.region.exterior:
        m = float(np.min(1.0 - np.abs(fh)))
    else:
        m = float(np.min(fh * fh - 1.0))
    return SpacelikeReport(bool(m > tol), m, False)


@dataclass(frozen=True)
class NullBoundReport:
    bounded: bool
    monotone: bool
    null_sign: int
    oscillation: float
    predicted_width: float
    offsets: tuple
    values: tuple


def check_null_bounds(curve, decades=None):
    """Trapping between two null lines near r = 2M.

    psi = t - n r* (n = +-1 the crossing sign) is sampled on the data points
    nearest to r = 2M + 10^-k M; the curve is trapped when psi converges
    monotonically with decaying increments and its total oscillation stays
    below the integral of r^4 / (2 A^2) over the tail (the bound f-bar' <=
    r^4 / (2 A^2)).
    """
    model = curve.model
    M = model.mass
    M2 = 2.0 * M
    off = np.abs(curve.r - M2)
    if off.min() > 1e-4 * M:
        raise DomainError("curve must reach within 1e-4 M of the horizon",
                          closest=float(off.min()))
    spec = curve.spec
    if spec is not None and in_critical_band(spec.c, horizon_value(model, spec.H)):
        raise DomainError("null bounds do not apply when c = -8M^3 H; t(2M) is finite")
    if spec is not None:
        n = Profile(model, spec).n
    else:
        i = np.argsort(off)[:2]
        n = int(np.sign((curve.t[i[0]] - curve.t[i[1]]) /
                        (tortoise(model, curve.r[i[0]]) - tortoise(model, curve.r[i[1]]))))
    psi = curve.t - n * tortoise(model, curve.r)
    if decades is None:
        lo = int(math.ceil(-math.log10(off.min() / M) - 1e-9))
        decades = range(4, min(lo, 15) + 1)
    idx = [int(np.argmin(np.abs(off - 10.0 ** (-k) * M))) for k in decades]
    vals = psi[idx]
    inc = np.abs(np.diff(vals))
    monotone = bool(np.all(np.diff(vals) >= 0) or np.all(np.diff(vals) <= 0))
    decaying = bool(np.all(inc[1:] <= inc[:-1] * 0.5 + 1e-13)) if inc.size > 1 else True
    osc = float(vals.max() - vals.min())
    # bound on the regular integrand over the tail
    if spec is not None:
        H, c = spec.H, spec.c
        rt = np.linspace(min(curve.r[idx].min(), curve.r[idx].max()),
                         max(curve.r[idx].min(), curve.r[idx].max()), 2001)
        A = H * rt**3 + c
        g = rt**4 / (2.0 * A * A)
        if not curve.region.exterior:
            eps = np.max(rt**3 * np.abs(rt - M2) / (A * A))
            g = g / (1.0 - eps) ** 2
        width = float(trapezoid(g, rt)) * (1.0 + 1e-6) + 1e-12
    else:
        width = math.inf
    bounded = bool(np.all(np.isfinite(vals)) and monotone and decaying and osc <= width)
    return NullBoundReport(bounded, monotone, n, osc, width,
                           tuple(float(curve.r[i] - M2) for i in idx), tuple(float(v) for v in vals))


def kruskal_invariant_error(model, kcurve):
    """max relative |UV - (r - 2M) e^{r/2M}| along a Kruskal curve."""
    UV = kcurve.U * kcurve.V
    ref = kruskal_product(model, kcurve.r)
    ref = np.atleast_1d(ref)
    scale = np.abs(ref)
    err = np.abs(UV - ref)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(scale > 0, err / scale, np.where(err == 0, 0.0, np.inf))
    return float(np.max(rel))


def verify_surface(surface, residual_tol=1e-6, join_tol=1e-8, smooth=True):
    """Summary of every check on a glued surface (plain dict, JSON ready)."""
    from .assembly import SMOOTH_TOL, join_smoothness
    branches = []
    ok = True
    for b in surface.branches:
        res = mean_curvature_residual(b.curve) if b.spec else math.nan
        checked = checked_points(b.curve) if b.spec else 0
        sp = check_spacelike(b.curve)
        kinv = kruskal_invariant_error(surface.model, b.kruskal)
        good = bool(res < residual_tol and sp.ok and kinv <= 1e-10)
        ok &= good
        branches.append({"region": b.spec.region.value if b.spec else b.curve.region.value,
                         "sign": b.spec.sign if b.spec else None,
                         "cbar": b.spec.cbar if b.spec else None,
                         "points": len(b.curve), "checked": checked, "residual": res,
                         "spacelike_margin": sp.margin, "kruskal_invariant": kinv, "ok": good})
    joins = []
    for k, j in enumerate(surface.joins):
        entry = {"location": j.location, "radius": j.radius, "mismatch": j.mismatch}
        good = j.mismatch < join_tol
        # derivatives across a discontinuous join carry no information
        if smooth and good and surface.branches[j.left].profile is not None:
            sm = join_smoothness(surface, k)
            entry.update(first_gap=sm.first_gap, second_gap=sm.second_gap)
            good = good and sm.first_gap < SMOOTH_TOL and sm.second_gap < SMOOTH_TOL
        entry["ok"] = bool(good)
        ok &= good
        joins.append(entry)
    return {"family": surface.family, "H": surface.H, "c": surface.c, "cbar": surface.cbar,
            "ends": [e.label for e in surface.ends], "branches": branches, "joins": joins,
            "ok": bool(ok)}
