"""Profile functions t = f(r) of SS-CMC hypersurfaces and their integration.

Every branch has slope

    f'(r) = s * A / (h sqrt(D)),   A = H r^3 + c,   D = A^2 + r^3 (r - 2M),

with slope factor s = +1 in region I, -1 in region I', +1 / -1 for the
plus / minus branch in region II and -1 / +1 for the plus / minus branch in
region II'.  Near r = 2M the pole of 1/h is split off exactly,

    f' = s * (sigma / h + G_sigma),   G_sigma = (A / sqrt(D) - sigma) / h,

with sigma = sign(A(2M)); G_{-1} is f-bar' and G_{+1} is f-tilde'.  Then
t = cbar + n (r* - r*(anchor)) + s * int_anchor^r G_sigma with n = s * sigma
and r* the tortoise radius, so t - n r* is finite at the horizon.
"""
from dataclasses import dataclass, field, replace
import math

import numpy as np

from ._quad import cumulative
from .domain import (CASE_TOL, CRITICAL, Interval, classify_interior,
                     find_rH, horizon_value, in_critical_band)
from .errors import DivergenceError, DomainError
from .geometry import Model, Region, anchor_r1, tortoise

PLUS, MINUS = "plus", "minus"
QUAD_EPSREL = 1e-12
QUAD_EPSABS = 1e-15


def _arr(r):
    return np.asarray(r, dtype=float)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _exterior(model, r):
    r = _arr(r)
    if np.any(~(r > 2.0 * model.mass)):
        raise DomainError("exterior formula needs r > 2M", mass=model.mass)
    return r


def _interior(model, r):
    r = _arr(r)
    if np.any(~((r > 0) & (r < 2.0 * model.mass))):
        raise DomainError("interior formula needs 0 < r < 2M", mass=model.mass)
    return r


def _h(model, r):
    return (r - 2.0 * model.mass) / r


def l1(model, H, c1, r):
    r = _exterior(model, r)
    return _out((H * r + c1 / r**2) / np.sqrt(_h(model, r)))


def f1_prime(model, H, c1, r):
    """Slope of the region I profile; |f1' h| < 1."""
    r = _exterior(model, r)
    A = H * r**3 + c1
    D = A * A + r**3 * (r - 2.0 * model.mass)
    return _out(A / (_h(model, r) * np.sqrt(D)))


def f3_prime(model, H, c3, r):
    """Slope of the region I' profile, equal to -f1'."""
    r = _exterior(model, r)
    l3 = (-H * r - c3 / r**2) / np.sqrt(_h(model, r))
    return _out(l3 / _h(model, r) / np.sqrt(1.0 + l3 * l3))


def l2(model, H, c2, r):
    r = _interior(model, r)
    return _out((-H * r - c2 / r**2) / np.sqrt(-_h(model, r)))


def l4(model, H, c4, r):
    r = _interior(model, r)
    return _out((H * r + c4 / r**2) / np.sqrt(-_h(model, r)))


def _interior_slope(model, lval, r, sign, strict):
    lval = _arr(lval)
    if strict:
        if np.any(lval == 1.0):
            raise DivergenceError("turning point: slope is infinite")
        if np.any(~(lval > 1.0)):
            raise DomainError("interior branch needs l > 1")
    elif np.any(~(lval * lval > 1.0)):
        raise DomainError("interior magnitude formula needs l^2 > 1")
    mag = np.sqrt(lval * lval / (lval * lval - 1.0)) / (-_h(model, r))
    return _out(mag if _sign_value(sign) > 0 else -mag)


def f2_prime(model, H, c2, r, sign=PLUS, strict=True):
    """Slope of a region II branch (plus branch positive, minus negative).

    ``strict=False`` evaluates the magnitude formula whenever l2^2 > 1,
    which is what a sign-blind construction would do.
    """
    r = _interior(model, r)
    return _interior_slope(model, l2(model, H, c2, r), r, sign, strict)


def f4_prime(model, H, c4, r, sign=PLUS, strict=True):
    """Slope of a region II' branch (plus branch positive, minus negative)."""
    r = _interior(model, r)
    return _interior_slope(model, l4(model, H, c4, r), r, sign, strict)


def _regular_part(sigma, A, sqrtD, h, r):
    """(A/sqrt(D) - sigma)/h in a form free of cancellation."""
    with np.errstate(divide="ignore", invalid="ignore"):
        if sigma == 0:
            return A / (h * sqrtD)
        if sigma < 0:
            safe = r**4 / (sqrtD * (sqrtD - A))
            other = (1.0 + A / sqrtD) / h
            return np.where(A <= 0, safe, other)
        safe = -r**4 / (sqrtD * (sqrtD + A))
        other = (A / sqrtD - 1.0) / h
        return np.where(A >= 0, safe, other)


def _plain_AD(model, H, c, r):
    A = H * r**3 + c
    D = A * A + r**3 * (r - 2.0 * model.mass)
    if np.any(~(D > 0)):
        raise DomainError("radius outside the branch domain (D <= 0)")
    return A, np.sqrt(D)


def barf_prime(model, H, c1, r):
    """Regular part f-bar' = f' + 1/h of a branch with A(2M) < 0; finite at 2M."""
    r = _arr(r)
    if np.any(~(r > 0)):
        raise DomainError("radius must be positive")
    A, sqrtD = _plain_AD(model, H, c1, r)
    return _out(_regular_part(-1, A, sqrtD, _h(model, r), r))


def tildef_prime(model, H, c1, r):
    """Regular part f-tilde' = f' - 1/h of a branch with A(2M) > 0; finite at 2M."""
    r = _arr(r)
    if np.any(~(r > 0)):
        raise DomainError("radius must be positive")
    A, sqrtD = _plain_AD(model, H, c1, r)
    return _out(_regular_part(1, A, sqrtD, _h(model, r), r))


def _sign_value(sign):
    if sign in (PLUS, "+", 1, "+1"):
        return 1
    if sign in (MINUS, "-", -1, "-1"):
        return -1
    raise DomainError("branch sign must be 'plus' or 'minus'", sign=sign)


def slope_factor(region, sign=PLUS):
    region = Region(region)
    if region == Region.I:
        return 1
    if region == Region.Iprime:
        return -1
    sv = _sign_value(sign)
    return sv if region == Region.II else -sv


@dataclass(frozen=True)
class BranchSpec:
    """One branch: region, mean curvature H, constant c, offset cbar.

    ``sign`` selects the plus (f*) or minus (f**) branch inside the horizon
    and is ignored outside.  ``anchor_r`` is the radius where t = cbar up to
    the exact tortoise term; None selects the default anchor.
    """
    region: Region
    H: float
    c: float
    cbar: float = 0.0
    sign: str = PLUS
    anchor_r: float = None

    def __post_init__(self):
        object.__setattr__(self, "region", Region(self.region))
        object.__setattr__(self, "sign", PLUS if _sign_value(self.sign) > 0 else MINUS)
        for name in ("H", "c", "cbar"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError("%s must be finite" % name)

    @property
    def slope_sign(self):
        return slope_factor(self.region, self.sign)


@dataclass
class SampledCurve:
    """Monotone radial grid with t values; optional exact slope data.

    ``regular`` holds t - null_sign * r*, which stays finite at the horizon.
    """
    region: Region
    r: np.ndarray
    t: np.ndarray
    spec: BranchSpec = None
    model: Model = field(default_factory=Model)
    slope: np.ndarray = None
    regular: np.ndarray = None
    null_sign: int = 0

    def __post_init__(self):
        self.region = Region(self.region)
        self.r = _arr(self.r)
        self.t = _arr(self.t)
        if self.r.ndim != 1 or self.r.shape != self.t.shape or self.r.size < 2:
            raise DomainError("curve needs matching r and t arrays of length >= 2")
        d = np.diff(self.r)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise DomainError("curve radii must be strictly monotone")

    def __len__(self):
        return self.r.size


# ---------------------------------------------------------------- integrand

class _Kernel:
    """Regular integrand G_sigma in one integration chart.

    chart 'plain': x = r; 'shift': r = 2M + x; 'sqrt': r = rho + d x^2;
    'log': r = rho + d e^x.  The shift chart keeps r - 2M to full relative
    precision next to the horizon and forms A = A(2M) + H (r - 2M) q(r)
    without cancellation.  ``deflate`` = 1 or 2 divides D by
    (r - rho)^deflate so that sqrt(D) is computed from the exact offset;
    ``arooted`` additionally factors A = (r - 2M) H q(r) for the branch with
    A(2M) = 0, where q(r) = r^2 + 2Mr + 4M^2.
    """

    def __init__(self, model, H, c, sigma, chart="plain", rho=None, d=1,
                 deflate=0, arooted=False):
        self.M = model.mass
        self.H, self.c, self.sigma = H, c, sigma
        self.chart, self.rho, self.d = chart, rho, d
        self.deflate, self.arooted = deflate, arooted
        if chart == "shift":
            self.rho = 2.0 * self.M
            self.A2 = H * self.rho**3 + c
        if deflate:
            M = self.M
            coef = np.array([H * H, 0.0, 1.0, 2.0 * H * c - 2.0 * M, 0.0, 0.0, c * c])
            div = np.array([1.0, -rho]) if deflate == 1 else np.array([1.0, -2.0 * rho, rho * rho])
            self.q = np.polydiv(coef, div)[0]

    def parts(self, r, delta=None):
        """A, sqrt(D), h at radii r (delta = r - rho when a chart root exists)."""
        M, H, c = self.M, self.H, self.c
        if delta is None and self.rho is not None:
            delta = r - self.rho
        if self.arooted:
            q = r * r + 2.0 * M * r + 4.0 * M * M
            A = delta * H * q
            E = H * H * delta * q * q + r**3
            sqrtD = np.sqrt(np.abs(delta)) * np.sqrt(E)
            return A, sqrtD, delta / r
        if self.chart == "shift":
            A = self.A2 + H * delta * (r * r + 2.0 * M * r + 4.0 * M * M)
            return A, np.sqrt(A * A + r**3 * delta), delta / r
        A = H * r**3 + c
        if self.deflate == 1:
            sqrtD = np.sqrt(np.abs(delta)) * np.sqrt(np.abs(np.polyval(self.q, r)))
        elif self.deflate == 2:
            sqrtD = np.abs(delta) * np.sqrt(np.abs(np.polyval(self.q, r)))
        else:
            sqrtD = np.sqrt(A * A + r**3 * (r - 2.0 * M))
        return A, sqrtD, (r - 2.0 * M) / r

    def G(self, r, delta=None):
        A, sqrtD, h = self.parts(r, delta)
        if self.arooted:
            q = r * r + 2.0 * self.M * r + 4.0 * self.M**2
            E = self.H**2 * delta * q * q + r**3
            # A / (h sqrt D) with the common factor delta cancelled
            return self.H * q * r / (np.sqrt(np.abs(delta)) * np.sqrt(E))
        return _regular_part(self.sigma, A, sqrtD, h, r)

    def x_of_r(self, r):
        if self.chart == "plain":
            return r
        if self.chart == "shift":
            return r - self.rho
        off = np.abs(r - self.rho)
        if self.chart == "sqrt":
            return np.sqrt(off)
        with np.errstate(divide="ignore"):
            return np.log(off)

    def integrand(self, x):
        if self.chart == "plain":
            return self.G(x)
        if self.chart == "shift":
            return self.G(self.rho + x, x)
        if self.chart == "sqrt":
            delta = self.d * x * x
            r = self.rho + delta
            if self.arooted:
                q = r * r + 2.0 * self.M * r + 4.0 * self.M**2
                E = self.H**2 * delta * q * q + r**3
                return 2.0 * self.H * q * r / np.sqrt(E)
            A, sqrtD, h = self.parts(r, delta)
            # G ~ |delta|^{-1/2}; multiply the Jacobian 2 d x analytically
            if self.sigma == 0:
                return 2.0 * self.d * A * r / ((r - 2.0 * self.M) * np.sqrt(np.abs(np.polyval(self.q, r))))
            g = _regular_part(self.sigma, A, sqrtD, h, r)
            return g * 2.0 * self.d * x
        e = np.exp(x)
        delta = self.d * e
        return self.G(self.rho + delta, delta) * delta


# ---------------------------------------------------------------- grids

def _feature_value(kind, rho, scale, r, L):
    if kind == "log_left":
        return np.log((r - rho) / L)
    if kind == "log_right":
        return -np.log((rho - r) / L)
    if kind == "sqrt_left":
        return np.sqrt(np.maximum(r - rho, 0.0) / L)
    if kind == "sqrt_right":
        return -np.sqrt(np.maximum(rho - r, 0.0) / L)
    if kind == "asinh":
        return np.arcsinh((r - rho) / scale)
    if kind == "logr":
        return np.log(r)
    raise ValueError(kind)


_FEATURE_WEIGHT = {"log_left": 1.0, "log_right": 1.0, "sqrt_left": 8.0,
                   "sqrt_right": 8.0, "asinh": 3.0, "logr": 8.0}


def _weight(feat):
    return feat[3] if len(feat) > 3 else _FEATURE_WEIGHT[feat[0]]


def radial_grid(lo, hi, n, features=()):
    """Increasing grid on [lo, hi], uniform in a smooth stretched coordinate.

    ``features`` are (kind, rho, scale[, weight]) tuples: 'log_left' /
    'log_right' concentrate points geometrically toward an end at rho,
    'sqrt_left' / 'sqrt_right' make r - rho quadratic in the index, 'asinh'
    refines around an interior radius over width ``scale``, 'logr' is
    geometric in r.
    """
    if not (hi > lo and n >= 2):
        raise DomainError("grid needs lo < hi and at least two points", lo=lo, hi=hi)
    L = hi - lo

    def stretch(r, W):
        u = W * (r - lo) / L
        for f in features:
            u = u + _weight(f) * _feature_value(f[0], f[1], f[2], r, L)
        return u

    span = sum(_weight(f) * (_feature_value(f[0], f[1], f[2], hi, L)
                             - _feature_value(f[0], f[1], f[2], lo, L)) for f in features)
    W = max(LINEAR_WEIGHT, LINEAR_SHARE * float(span))
    u_lo, u_hi = stretch(np.float64(lo), W), stretch(np.float64(hi), W)
    target = np.linspace(u_lo, u_hi, n)[1:-1]
    a = np.full(target.shape, float(lo))
    b = np.full(target.shape, float(hi))
    for _ in range(120):
        mid = 0.5 * (a + b)
        below = stretch(mid, W) < target
        a = np.where(below, mid, a)
        b = np.where(below, b, mid)
    out = np.concatenate(([lo], 0.5 * (a + b), [hi]))
    # intervals only a few thousand ulps wide cannot hold n distinct radii
    return np.unique(out)


LINEAR_WEIGHT = 8.0
EXTERIOR_LOG_WEIGHT = 4.0
ZERO_SCALE = 0.5
PLATEAU_SCALE = 1e-4
LINEAR_SHARE = 1.0


@dataclass(frozen=True)
class GridPolicy:
    """Grid size and cut-offs (radii in units of M)."""
    points: int = 1000
    horizon_offset: float = 1e-10
    critical_offset: float = 1e-10
    r_min: float = 1e-6
    r_max: float = 20.0

    def __post_init__(self):
        if self.points < 5:
            raise DomainError("grid needs at least 5 points", points=self.points)
        if not (0 < self.horizon_offset < 1 and 0 < self.critical_offset < 1):
            raise DomainError("offsets must lie in (0, 1)")
        if not (0 < self.r_min < 2.0 < self.r_max):
            raise DomainError("need 0 < r_min < 2 < r_max (units of M)")


# ---------------------------------------------------------------- profiles

class Profile:
    """A single branch t = f(r) on one connected radial interval.

    Evaluates t, the horizon-regular part t - n r*, and the exact slope at
    arbitrary radii of the interval, integrating from the anchor.
    """

    def __init__(self, model, spec, tol=CASE_TOL):
        self.model = model
        self.spec = spec
        M = model.mass
        M2 = 2.0 * M
        region = spec.region
        H, c = spec.H, spec.c
        self.s = spec.slope_sign
        self.report = None
        crit = horizon_value(model, H)
        if region.exterior:
            if in_critical_band(c, crit, tol):
                c = crit
            self.interval = Interval(M2, math.inf, "horizon", "infinity")
            A2 = H * M2**3 + c
            self.sigma = 0 if A2 == 0.0 else (1 if A2 > 0 else -1)
            if self.sigma == 0:
                self.kernel = _Kernel(model, H, c, 0, "sqrt", M2, 1, arooted=True)
                default_anchor = M2
            else:
                self.kernel = _Kernel(model, H, c, self.sigma, "shift")
                default_anchor = anchor_r1(model)
        else:
            rep = classify_interior(model, H, c, region, tol)
            self.report = rep
            if rep.case == CRITICAL:
                c = find_rH(model, H if region == Region.II else -H)[1]
                c = c if region == Region.II else -c
            if spec.anchor_r is not None:
                iv = rep.interval_containing(spec.anchor_r)
                if iv is None and spec.anchor_r == M2:
                    iv = next((v for v in rep.valid_intervals if v.hi_end == "horizon"), None)
                if iv is None:
                    raise DomainError("anchor radius outside the branch domain",
                                      anchor_r=spec.anchor_r, region=region.value)
            else:
                iv = next((v for v in rep.valid_intervals if v.hi_end == "horizon"),
                          rep.valid_intervals[0])
            self.interval = iv
            if iv.hi_end == "horizon":
                A2 = H * M2**3 + c
                self.sigma = 1 if A2 > 0 else -1
            else:
                self.sigma = 0
            if iv.lo_end == "turning":
                self.kernel = _Kernel(model, H, c, self.sigma, "sqrt", iv.lo, 1, deflate=1)
                default_anchor = iv.lo
            elif iv.hi_end == "turning":
                self.kernel = _Kernel(model, H, c, self.sigma, "sqrt", iv.hi, -1, deflate=1)
                default_anchor = iv.hi
            elif iv.lo_end == "critical":
                self.kernel = _Kernel(model, H, c, self.sigma, "log", iv.lo, 1, deflate=2)
                default_anchor = 0.5 * (iv.lo + iv.hi)
            elif iv.hi_end == "critical":
                self.kernel = _Kernel(model, H, c, self.sigma, "log", iv.hi, -1, deflate=2)
                default_anchor = 0.5 * (iv.lo + iv.hi)
            else:
                self.kernel = _Kernel(model, H, c, self.sigma, "shift")
                default_anchor = M
        self.c = c
        self.n = self.s * self.sigma
        self.anchor = default_anchor if spec.anchor_r is None else float(spec.anchor_r)
        self._check(np.array([self.anchor]))
        if self.n != 0 and self.anchor == M2:
            raise DomainError("anchor at r = 2M needs A(2M) = 0", anchor_r=self.anchor)
        self._rstar_anchor = 0.0 if self.n == 0 else tortoise(model, self.anchor)

    @property
    def region(self):
        return self.spec.region

    @property
    def cbar(self):
        return self.spec.cbar

    def _check(self, r):
        iv = self.interval
        lo_ok = (r >= iv.lo) if iv.lo_end in ("turning", "horizon") else (r > iv.lo)
        hi_ok = (r <= iv.hi) if iv.hi_end in ("turning", "horizon") else (r < iv.hi)
        bad = ~(lo_ok & hi_ok & (r > 0))
        if np.any(bad):
            raise DomainError("radius outside the branch interval (%g, %g)" % (iv.lo, iv.hi),
                              region=self.region.value, lo=iv.lo, hi=iv.hi,
                              r=float(_arr(r)[bad][0]))
        if self.kernel.chart == "log" and np.any(r == self.kernel.rho):
            raise DivergenceError("t diverges at the critical radius", r=self.kernel.rho)

    def integral(self, r):
        """int_anchor^r G_sigma dr."""
        r = _arr(r)
        self._check(r)
        k = self.kernel
        x = k.x_of_r(r)
        x0 = k.x_of_r(np.float64(self.anchor))
        return cumulative(k.integrand, x, x0, epsrel=QUAD_EPSREL, epsabs=QUAD_EPSABS)

    def regular(self, r):
        """t - n r*: finite everywhere on the closed interval, including r = 2M."""
        return self.cbar - self.n * self._rstar_anchor + self.s * self.integral(r)

    def t(self, r):
        r = _arr(r)
        w = self.regular(r)
        if self.n == 0:
            return w
        if np.any(r == 2.0 * self.model.mass):
            raise DivergenceError("t diverges at r = 2M on this branch; use the "
                                  "horizon-regular part", region=self.region.value)
        return w + self.n * tortoise(self.model, r)

    def slope(self, r):
        """Exact f'(r)."""
        r = _arr(r)
        k = self.kernel
        with np.errstate(divide="ignore", invalid="ignore"):
            if k.arooted:
                return self.s * k.G(r, r - k.rho)
            A, sqrtD, h = k.parts(r)
            return self.s * A / (h * sqrtD)

    def spacelike_margin(self, r):
        """1 - |f'h| outside the horizon, (f'h)^2 - 1 inside; positive iff spacelike."""
        r = _arr(r)
        k = self.kernel
        if k.arooted:
            # common factor r - 2M cancelled; equals 1 at the horizon
            delta = r - k.rho
            q = r * r + 2.0 * k.M * r + 4.0 * k.M**2
            E = k.H**2 * delta * q * q + r**3
            return r**3 / (np.sqrt(E) * (np.sqrt(E) + np.sqrt(delta) * np.abs(k.H * q)))
        A, sqrtD, _ = k.parts(r)
        g = r**3 * (r - 2.0 * self.model.mass)
        with np.errstate(divide="ignore"):
            if self.region.exterior:
                return g / (sqrtD * (sqrtD + np.abs(A)))
            return -g / (sqrtD * sqrtD)

    def end_features(self, lo, hi):
        """Grid features adapted to the singular ends of [lo, hi]."""
        M = self.model.mass
        near = 1e-3 * M
        feats = []
        k = self.kernel
        M2 = 2.0 * M
        for end, side in ((lo, "left"), (hi, "right")):
            if k.chart in ("sqrt", "log") and abs(end - k.rho) <= near:
                feats.append(("%s_%s" % (k.chart, side), k.rho, None))
            elif abs(end - M2) <= near:
                kind = "%s_%s" % ("log" if self.n else "sqrt", side)
                if self.region.exterior and self.n:
                    feats.append((kind, M2, None, EXTERIOR_LOG_WEIGHT))
                else:
                    feats.append((kind, M2, None))
        if self.region.exterior:
            feats.append(("logr", None, None))
        elif lo <= near:
            feats.append(("log_left", 0.0, None))
        rep = self.report
        if rep is not None and rep.case != CRITICAL and lo < rep.critical_r < hi:
            ell = math.sqrt(abs(self.c - rep.critical_value)) * math.sqrt(M)
            if ell < 0.1 * M:
                feats.append(("asinh", rep.critical_r, max(ell, 1e-12 * M)))
        # A = H r^3 + c changes sign: A / sqrt(D) switches over a width
        # sqrt(r^3 |r - 2M|) / |A'|, narrow close to the horizon
        H, c = self.spec.H, self.c
        if H != 0.0:
            ra = float(np.cbrt(-c / H))
            if lo < ra < hi:
                ell = math.sqrt(ra**3 * abs(ra - M2)) / abs(3.0 * H * ra * ra)
                if ell < ZERO_SCALE * M:
                    feats.append(("asinh", ra, max(ell, 1e-12 * M)))
        # small A(2M): the regular part sits on a plateau r^4 / (2 A^2) for
        # |r - 2M| below A(2M)^2 / (2M)^3 and turns into the 1/h pole above
        A2 = H * M2**3 + c
        scale = A2 * A2 / M2**3
        if self.n and (lo <= M2 + near and hi >= M2 - near) and scale < PLATEAU_SCALE * M:
            feats.append(("asinh", M2, max(scale, 1e-14 * M)))
        return feats

    def default_range(self, policy=GridPolicy()):
        """The largest sampled radial range allowed by ``policy``."""
        M = self.model.mass
        iv = self.interval
        if self.region.exterior:
            lo = iv.lo if self.n == 0 else iv.lo + policy.horizon_offset * M
            return lo, policy.r_max * M
        ends = []
        # offsets never exceed half the interval (r'' can sit within 1e-12 M of 2M)
        half = 0.5 * (iv.hi - iv.lo)
        for val, kind, sgn in ((iv.lo, iv.lo_end, 1), (iv.hi, iv.hi_end, -1)):
            if kind == "singularity":
                ends.append(min(policy.r_min * M, half))
            elif kind == "turning":
                ends.append(val)
            elif kind == "critical":
                ends.append(val + sgn * min(policy.critical_offset * M, half))
            else:
                ends.append(val + sgn * min(policy.horizon_offset * M, half))
        return ends[0], ends[1]

    def sample(self, r_from=None, r_to=None, grid=None):
        """SampledCurve between two radii (defaults from the grid policy).

        ``grid`` is a GridPolicy, a number of points, or an explicit array of
        radii (then r_from/r_to are ignored).
        """
        if grid is None or isinstance(grid, (int, np.integer)):
            grid = GridPolicy() if grid is None else GridPolicy(points=int(grid))
        if isinstance(grid, GridPolicy):
            lo, hi = self.default_range(grid)
            a = lo if r_from is None else float(r_from)
            b = hi if r_to is None else float(r_to)
            r = radial_grid(min(a, b), max(a, b), grid.points, self.end_features(min(a, b), max(a, b)))
            if a > b:
                r = r[::-1].copy()
        else:
            r = _arr(grid)
        w = self.regular(r)
        if self.n != 0 and np.any(r == 2.0 * self.model.mass):
            raise DivergenceError("requested endpoint r = 2M where t diverges",
                                  region=self.region.value)
        t = w if self.n == 0 else w + self.n * tortoise(self.model, r)
        return SampledCurve(self.region, r, t, self.spec, self.model,
                            slope=self.slope(r), regular=w, null_sign=self.n)


def integrate_profile(model, spec, r_from=None, r_to=None, grid=None):
    """Integrate one branch between two radii; see Profile.sample."""
    return Profile(model, spec).sample(r_from, r_to, grid)


def with_cbar(spec, cbar):
    return replace(spec, cbar=float(cbar))
