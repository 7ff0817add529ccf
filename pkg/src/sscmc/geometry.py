"""Schwarzschild metric data and the maps between (t, r) and Kruskal charts.

Conventions: u = t - r*, v = t + r* with the tortoise radius
r* = r + 2M ln|r - 2M|.  Null Kruskal coordinates satisfy
|U| = exp(-u/4M), |V| = exp(v/4M) with the sign pattern of the region,
and X = (U + V)/2, T = (V - U)/2, so that X^2 - T^2 = UV = (r - 2M) e^{r/2M}.
"""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from ._roots import newton_bisect
from .errors import DomainError


@dataclass(frozen=True)
class Model:
    """Schwarzschild black hole of mass ``mass`` (geometric units)."""
    mass: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise DomainError("mass must be positive", mass=self.mass)

    @property
    def horizon(self):
        return 2.0 * self.mass


class Region(str, Enum):
    I = "I"
    II = "II"
    Iprime = "Iprime"
    IIprime = "IIprime"

    @property
    def exterior(self):
        return self in (Region.I, Region.Iprime)

    @property
    def signs(self):
        """Signs of (U, V) inside the region."""
        return _SIGNS[self]

    @classmethod
    def parse(cls, text):
        key = str(text).replace("'", "prime").replace("′", "prime")
        for reg in cls:
            if reg.value.lower() == key.lower():
                return reg
        raise DomainError("unknown region %r" % (text,), region=text)


_SIGNS = {Region.I: (1, 1), Region.II: (-1, 1),
          Region.Iprime: (-1, -1), Region.IIprime: (1, -1)}


@dataclass(frozen=True)
class KruskalPoint:
    X: float
    T: float

    @property
    def U(self):
        return self.X - self.T

    @property
    def V(self):
        return self.X + self.T


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError("radius must be positive")
    return r


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def h(model, r):
    """Metric factor 1 - 2M/r."""
    r = _check_r(r)
    return _out((r - 2.0 * model.mass) / r)


def tortoise(model, r):
    """r + 2M ln|r - 2M|; -inf at the horizon."""
    r = _check_r(r)
    with np.errstate(divide="ignore"):
        out = r + 2.0 * model.mass * np.log(np.abs(r - 2.0 * model.mass))
    return _out(out)


def null_uv(model, t, r):
    """Tortoise null pair (u, v) = (t - r*, t + r*)."""
    r = _check_r(r)
    if np.any(r == 2.0 * model.mass):
        raise DomainError("null coordinates are singular at r = 2M", r=2.0 * model.mass)
    rs = tortoise(model, r)
    t = np.asarray(t, dtype=float)
    return _out(t - rs), _out(t + rs)


def _check_side(model, region, r):
    M2 = 2.0 * model.mass
    if region.exterior:
        bad = ~(r > M2)
    else:
        bad = ~((r > 0) & (r < M2))
    if np.any(bad):
        raise DomainError("radius on the wrong side of r = 2M for region %s" % region.value,
                          region=region.value)


def kruskal_uv(model, region, t, r):
    """Null Kruskal coordinates (U, V) of chart points; vectorized."""
    region = Region(region)
    r = _check_r(r)
    _check_side(model, region, r)
    t = np.asarray(t, dtype=float)
    M4 = 4.0 * model.mass
    root = np.sqrt(np.abs(r - 2.0 * model.mass))
    sU, sV = region.signs
    U = sU * root * np.exp((r - t) / M4)
    V = sV * root * np.exp((r + t) / M4)
    return _out(U), _out(V)


def to_kruskal(model, region, t, r):
    """Kruskal point (X, T) of the chart point (t, r) in ``region``."""
    U, V = kruskal_uv(model, region, t, r)
    if np.ndim(U) == 0:
        return KruskalPoint(0.5 * (U + V), 0.5 * (V - U))
    return 0.5 * (U + V), 0.5 * (V - U)


def kruskal_product(model, r):
    """(r - 2M) e^{r/2M}, the value of UV = X^2 - T^2 at radius r."""
    r = np.asarray(r, dtype=float)
    return _out((r - 2.0 * model.mass) * np.exp(r / (2.0 * model.mass)))


def radius_from_product(model, p):
    """Invert p = (r - 2M) e^{r/2M} for r > 0 (requires p > -2M)."""
    M = model.mass
    if not p > -2.0 * M:
        raise DomainError("point lies on or beyond the singularity hyperbola", product=p)
    if p == 0.0:
        return 2.0 * M
    # in y = r/2M - 1 the equation reads y e^{y} = z with z = p / (2M e)
    z = p / (2.0 * M * math.e)
    if z > 0:
        y0 = math.log1p(z) if z < math.e else math.log(z) - math.log(math.log(z))
        lo, hi = 0.0, max(2.0 * y0 + 1.0, 1.0)
    else:
        y0 = z
        lo, hi = -1.0, 0.0

    def g(y):
        return y * math.exp(y) - z

    def dg(y):
        return (1.0 + y) * math.exp(y)

    y = newton_bisect(g, dg, lo, hi, xtol=1e-16, rtol=1e-15)
    return 2.0 * M * (1.0 + y)


def from_kruskal(model, X, T):
    """Recover (region, t, r) from a Kruskal point off the horizons."""
    U, V = X - T, X + T
    if U == 0.0 or V == 0.0:
        raise DomainError("point lies on a horizon; t is undefined", X=X, T=T)
    sU, sV = (1 if U > 0 else -1), (1 if V > 0 else -1)
    region = next(reg for reg, s in _SIGNS.items() if s == (sU, sV))
    r = radius_from_product(model, U * V)
    t = 2.0 * model.mass * math.log(abs(V / U))
    return region, t, r


def anchor_r1(model):
    """Root of r + 2M ln(r - 2M) = 0 on (2M, inf)."""
    M = model.mass
    M2 = 2.0 * M

    def g(r):
        return r + M2 * math.log(r - M2)

    def dg(r):
        return 1.0 + M2 / (r - M2)

    # g(2M + 1) = 2M + 1 > 0 and g(2M + eps) < 0 for this eps at every mass
    eps = max(min(math.exp(-2.0), 1e-3 * M), 4.0 * math.ulp(M2))
    if g(M2 + eps) >= 0.0:
        raise DomainError("mass too large to resolve the anchor radius", mass=M)
    return newton_bisect(g, dg, M2 + eps, M2 + 1.0, xtol=0.0, rtol=1e-16)
