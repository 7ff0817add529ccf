"""Validity domains of the interior branches.

Inside the horizon a branch with constant c exists where
k_H(r) = -H r^3 - r^{3/2} (2M - r)^{1/2} > c   (region II), or where
k~_H(r) = -H r^3 + r^{3/2} (2M - r)^{1/2} < c  (region II').
Since k~_H = -k_{-H}, region II' is handled as region II with (H, c) -> (-H, -c).
"""
from dataclasses import dataclass, field
import math

import numpy as np

from ._roots import newton_bisect
from .errors import ClassificationError, DomainError
from .geometry import Region

FULL = "FullInterval"
CRITICAL = "CriticalAsymptote"
TURNING = "TurningPoints"

CASE_TOL = 1e-9


@dataclass(frozen=True)
class Interval:
    """Radial interval with the nature of each end.

    End kinds: 'singularity' (r = 0), 'horizon' (r = 2M), 'turning'
    (closed end where the slope blows up), 'critical' (open end at r_H,
    approached asymptotically).
    """
    lo: float
    hi: float
    lo_end: str
    hi_end: str

    def contains(self, r, closed=True):
        lo_ok = r >= self.lo if (closed and self.lo_end == "turning") else r > self.lo
        hi_ok = r <= self.hi if (closed and self.hi_end == "turning") else r < self.hi
        return lo_ok and hi_ok


@dataclass(frozen=True)
class DomainReport:
    which: Region
    H: float
    c: float
    case: str
    critical_r: float
    critical_value: float
    turning_lower: float = None
    turning_upper: float = None
    valid_intervals: tuple = field(default_factory=tuple)

    def interval_containing(self, r):
        for iv in self.valid_intervals:
            if iv.contains(r):
                return iv
        return None

    def to_dict(self):
        return {
            "region": self.which.value, "H": self.H, "c": self.c, "case": self.case,
            "critical_r": self.critical_r, "critical_value": self.critical_value,
            "turning_lower": self.turning_lower, "turning_upper": self.turning_upper,
            "valid_intervals": [[iv.lo, iv.hi, iv.lo_end, iv.hi_end]
                                for iv in self.valid_intervals],
        }


def _interior(model, r):
    r = np.asarray(r, dtype=float)
    if np.any(~((r > 0) & (r < 2.0 * model.mass))):
        raise DomainError("radius must lie in (0, 2M)")
    return r


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def k_H(model, H, r):
    r = _interior(model, r)
    return _out(-H * r**3 - r**1.5 * np.sqrt(2.0 * model.mass - r))


def ktilde_H(model, H, r):
    r = _interior(model, r)
    return _out(-H * r**3 + r**1.5 * np.sqrt(2.0 * model.mass - r))


def k_H_prime(model, H, r):
    """Derivative of k_H; vanishes only at r_H."""
    r = _interior(model, r)
    M = model.mass
    q = np.sqrt(2.0 * M - r)
    return _out(-3.0 * H * r**2 - np.sqrt(r) * (3.0 * M - 2.0 * r) / q)


def _phi(M, H, r):
    # k_H'(r) = -sqrt(r / (2M - r)) * phi(r); phi(0) = 3M, phi(2M) = -M
    return 3.0 * H * r**1.5 * math.sqrt(max(2.0 * M - r, 0.0)) - (2.0 * r - 3.0 * M)


def _dphi(M, H, r):
    q = math.sqrt(max(2.0 * M - r, 0.0))
    if q == 0.0 or r <= 0.0:
        return float("nan")
    return 3.0 * H * math.sqrt(r) * (3.0 * M - 2.0 * r) / q - 2.0


def find_rH(model, H):
    """Unique minimum point r_H of k_H on (0, 2M) and the minimum c_H."""
    M = model.mass
    if H == 0.0:
        r = 1.5 * M
    else:
        r = newton_bisect(lambda x: _phi(M, H, x), lambda x: _dphi(M, H, x),
                          0.0, 2.0 * M, xtol=0.0, rtol=2e-16)
    return r, k_H(model, H, r)


def find_RH(model, H):
    """Unique maximum point R_H of k~_H on (0, 2M) and the maximum C_H."""
    r, c = find_rH(model, -H)
    return r, -c


def cylindrical_H(model, r0):
    """Mean curvature of the constant-r slice r = r0 inside the horizon."""
    r0 = _interior(model, r0)
    M = model.mass
    return _out((2.0 * r0 - 3.0 * M) / (3.0 * np.sqrt(r0**3 * (2.0 * M - r0))))


def horizon_value(model, H):
    """Common limit -8 M^3 H of k_H and k~_H at r = 2M."""
    return -8.0 * model.mass**3 * H


def in_critical_band(c, c_crit, tol=CASE_TOL):
    return abs(c - c_crit) <= tol * max(1.0, abs(c_crit))


def _level_root(model, H, c, a, b):
    M = model.mass

    def g(r):
        return k_H(model, H, r) - c if 0.0 < r < 2.0 * M else (
            -c if r <= 0.0 else horizon_value(model, H) - c)

    def dg(r):
        if not 0.0 < r < 2.0 * M:
            return float("nan")
        return k_H_prime(model, H, r)

    return newton_bisect(g, dg, a, b, xtol=0.0, rtol=2e-16)


def turning_radii(model, H, c):
    """Roots r' < r_H < r'' of k_H(r) = c (None where absent)."""
    M = model.mass
    rH, cH = find_rH(model, H)
    lower = upper = None
    if cH < c < 0.0:
        lower = _level_root(model, H, c, 0.0, rH)
    if cH < c < horizon_value(model, H):
        upper = _level_root(model, H, c, rH, 2.0 * M)
    return lower, upper


def check_admissible(model, H, c, which):
    which = Region(which)
    if which == Region.II:
        bound = max(0.0, horizon_value(model, H))
        if not c < bound:
            raise ClassificationError(
                "region II requires c < max(0, -8M^3 H) = %.17g" % bound,
                region="II", H=H, c=c, bound=bound)
    elif which == Region.IIprime:
        bound = min(0.0, horizon_value(model, H))
        if not c > bound:
            raise ClassificationError(
                "region IIprime requires c > min(0, -8M^3 H) = %.17g" % bound,
                region="IIprime", H=H, c=c, bound=bound)
    else:
        raise ClassificationError("interior classification needs region II or IIprime",
                                  region=which.value)


def classify_interior(model, H, c, which=Region.II, tol=CASE_TOL):
    """Case (a) full interval, (b) critical asymptote or (c) turning points."""
    which = Region(which)
    check_admissible(model, H, c, which)
    if which == Region.IIprime:
        rep = classify_interior(model, -H, -c, Region.II, tol)
        return DomainReport(Region.IIprime, H, c, rep.case, rep.critical_r,
                            -rep.critical_value, rep.turning_lower, rep.turning_upper,
                            rep.valid_intervals)
    M2 = 2.0 * model.mass
    rH, cH = find_rH(model, H)
    if in_critical_band(c, cH, tol):
        ivs = (Interval(0.0, rH, "singularity", "critical"),
               Interval(rH, M2, "critical", "horizon"))
        return DomainReport(which, H, c, CRITICAL, rH, cH, valid_intervals=ivs)
    if c < cH:
        return DomainReport(which, H, c, FULL, rH, cH,
                            valid_intervals=(Interval(0.0, M2, "singularity", "horizon"),))
    lower, upper = turning_radii(model, H, c)
    ivs = []
    if lower is not None:
        ivs.append(Interval(0.0, lower, "singularity", "turning"))
    if upper is not None:
        ivs.append(Interval(upper, M2, "turning", "horizon"))
    return DomainReport(which, H, c, TURNING, rH, cH, lower, upper, tuple(ivs))
