"""Complete SS-CMC hypersurfaces in the Kruskal extension.

Branches are glued across the horizons by choosing each offset cbar so the
surviving null coordinate is continuous.  Every branch ending at r = 2M is
pushed forward with the horizon-regular part w = t - n r* (see profiles):

    |U| = exp(-w/4M) * E(1 - n),   |V| = exp(w/4M) * E(1 + n),
    E(k) = exp(k r*/4M),  E(0) = 1,  E(1) = sqrt|r-2M| e^{r/4M},  E(2) = |r-2M| e^{r/2M},

which is exact and finite up to and including r = 2M.
"""
from dataclasses import dataclass, field, replace
import math

import numpy as np

from .domain import (CASE_TOL, CRITICAL, FULL, TURNING, classify_interior,
                     horizon_value, in_critical_band)
from .errors import ClassificationError, DomainError, WrongCaseError
from .geometry import Model, Region, kruskal_uv, tortoise
from .profiles import (MINUS, PLUS, BranchSpec, GridPolicy, Profile,
                       SampledCurve)

JOIN_TOL = 1e-8
SMOOTH_TOL = 1e-5
SMOOTH_STEPS = (1e-2, 1e-3, 1e-4)


@dataclass
class KruskalCurve:
    region: Region
    r: np.ndarray
    U: np.ndarray
    V: np.ndarray

    @property
    def X(self):
        return 0.5 * (self.U + self.V)

    @property
    def T(self):
        return 0.5 * (self.V - self.U)

    def __len__(self):
        return self.r.size


def _E(model, k, r):
    M = model.mass
    if k == 0:
        return np.ones_like(r)
    if k == 1:
        return np.sqrt(np.abs(r - 2.0 * M)) * np.exp(r / (4.0 * M))
    return np.abs(r - 2.0 * M) * np.exp(r / (2.0 * M))


def regular_uv(model, region, w, n, r):
    """(U, V) from the horizon-regular part w = t - n r*."""
    r = np.asarray(r, dtype=float)
    w = np.asarray(w, dtype=float)
    M4 = 4.0 * model.mass
    sU, sV = Region(region).signs
    U = sU * np.exp(-w / M4) * _E(model, 1 - n, r)
    V = sV * np.exp(w / M4) * _E(model, 1 + n, r)
    return U, V


def push_to_kruskal(curve, model=None):
    """KruskalCurve of a SampledCurve.

    Uses the horizon-regular data when the curve carries it, else the plain
    chart map (valid away from r = 2M).
    """
    model = model or curve.model
    if curve.regular is not None:
        U, V = regular_uv(model, curve.region, curve.regular, curve.null_sign, curve.r)
    else:
        U, V = kruskal_uv(model, curve.region, curve.t, curve.r)
        U, V = np.atleast_1d(U), np.atleast_1d(V)
    return KruskalCurve(curve.region, curve.r.copy(), U, V)


def profile_uv(profile, r):
    """(U, V) of a profile at radii r, including r = 2M where allowed."""
    r = np.asarray(r, dtype=float)
    return regular_uv(profile.model, profile.region, profile.regular(r), profile.n, r)


# ------------------------------------------------------------ join constants

def _ext_profile(model, H, c1, cbar1, anchor=None):
    return Profile(model, BranchSpec(Region.I, H, c1, cbar1, anchor_r=anchor))


def join_I_II(model, H, c1, cbar1, r2=None):
    """Offset of the region II plus branch anchored at r2 (default: M or r'').

    cbar2 = cbar1 - int_{r2}^{r1} fbar' - r*(r2), with r1 the tortoise root.
    """
    if not c1 < horizon_value(model, H) or in_critical_band(c1, horizon_value(model, H)):
        raise WrongCaseError("joining I to II needs c1 < -8M^3 H", H=H, c1=c1)
    inner = Profile(model, BranchSpec(Region.II, H, c1, 0.0, PLUS, r2))
    outer = _ext_profile(model, H, c1, cbar1)
    M2 = np.array([2.0 * model.mass])
    integral = -outer.integral(M2)[0] + inner.integral(M2)[0]   # int_{r2}^{r1} fbar'
    return cbar1 - integral - tortoise(model, inner.anchor)


def join_II_Iprime(model, H, c1, cbar1, turning_upper=None):
    """Offset cbar3 of the region I' branch in the turning-point case.

    cbar3 = cbar1 - 2 int_{r''}^{r1} fbar' - 2 r*(r'').
    """
    rep = classify_interior(model, H, c1, Region.II)
    if rep.case != TURNING or rep.turning_upper is None or not c1 < horizon_value(model, H):
        raise WrongCaseError("joining II to I' needs c_H < c1 < -8M^3 H", H=H, c1=c1)
    rpp = rep.turning_upper if turning_upper is None else turning_upper
    inner = Profile(model, BranchSpec(Region.II, H, c1, 0.0, PLUS, rpp))
    outer = _ext_profile(model, H, c1, cbar1)
    M2 = np.array([2.0 * model.mass])
    integral = -outer.integral(M2)[0] + inner.integral(M2)[0]
    return cbar1 - 2.0 * integral - 2.0 * tortoise(model, rpp)


def join_I_IIprime(model, H, c1, cbar1, r4=None):
    """Offset cbar4' of the region II' minus branch anchored at r4.

    cbar4' = cbar1 - int_{r4}^{r1} ftilde' + r*(r4), the value that keeps
    U = exp(-(t - r*)/4M) continuous across L-.
    """
    if not c1 > horizon_value(model, H) or in_critical_band(c1, horizon_value(model, H)):
        raise WrongCaseError("joining I to II' needs c1 > -8M^3 H", H=H, c1=c1)
    inner = Profile(model, BranchSpec(Region.IIprime, H, c1, 0.0, MINUS, r4))
    outer = _ext_profile(model, H, c1, cbar1)
    M2 = np.array([2.0 * model.mass])
    integral = -outer.integral(M2)[0] + inner.integral(M2)[0]   # int_{r4}^{r1} ftilde'
    return cbar1 - integral + tortoise(model, inner.anchor)


def join_IIprime_Iprime(model, H, c1, cbar1, turning_upper=None):
    """Offset cbar3 of the region I' branch in the mirrored turning-point case.

    cbar3 = cbar1 - 2 int_{R''}^{r1} ftilde' + 2 r*(R'').
    """
    rep = classify_interior(model, H, c1, Region.IIprime)
    if rep.case != TURNING or rep.turning_upper is None or not c1 > horizon_value(model, H):
        raise WrongCaseError("joining II' to I' needs -8M^3 H < c1 < C_H", H=H, c1=c1)
    rpp = rep.turning_upper if turning_upper is None else turning_upper
    inner = Profile(model, BranchSpec(Region.IIprime, H, c1, 0.0, MINUS, rpp))
    outer = _ext_profile(model, H, c1, cbar1)
    M2 = np.array([2.0 * model.mass])
    integral = -outer.integral(M2)[0] + inner.integral(M2)[0]
    return cbar1 - 2.0 * integral + 2.0 * tortoise(model, rpp)


def join_through_origin(model, H, c1, cbar1, tol=CASE_TOL):
    """Offset of the region I' branch through the Kruskal origin (anchors at 2M)."""
    if not in_critical_band(c1, horizon_value(model, H), tol):
        raise WrongCaseError("origin crossing needs c1 = -8M^3 H", H=H, c1=c1)
    return float(cbar1)


def rejected_c2(model, H, c1):
    """The sign-flipped constant c2 = -c1 - 16 M^3 H that cannot be joined."""
    return -c1 - 16.0 * model.mass**3 * H


# ------------------------------------------------------------ glued surfaces

@dataclass(frozen=True)
class End:
    kind: str          # 'spatial-infinity', 'singularity', 'cylinder-asymptote'
    region: Region
    radius: float = None

    @property
    def label(self):
        if self.kind == "cylinder-asymptote":
            return "cylinder-asymptote(r=%.12g)" % self.radius
        return "%s-%s" % (self.kind, self.region.value)


@dataclass
class JoinRecord:
    location: str      # 'L+', 'L-', 'origin', 'turning'
    left: int
    right: int
    radius: float
    point: tuple
    mismatch: float
    smoothness_order_checked: int = 2


@dataclass
class BranchPiece:
    spec: BranchSpec
    curve: SampledCurve
    kruskal: KruskalCurve
    profile: Profile = field(repr=False, default=None)


@dataclass
class GluedHypersurface:
    model: Model
    H: float
    c: float
    cbar: float
    family: str
    branches: list
    joins: list
    ends: list

    @property
    def regions(self):
        return [b.kruskal.region for b in self.branches]

    @property
    def max_join_mismatch(self):
        return max((j.mismatch for j in self.joins), default=0.0)

    def kruskal_arrays(self):
        """Concatenated (U, V, r) along the surface, join points listed once."""
        Us, Vs, rs = [], [], []
        for i, b in enumerate(self.branches):
            k = b.kruskal
            s = 1 if i > 0 else 0
            Us.append(k.U[s:])
            Vs.append(k.V[s:])
            rs.append(k.r[s:])
        return np.concatenate(Us), np.concatenate(Vs), np.concatenate(rs)


def _piece(profile, lo_hi, policy, include_horizon):
    """Sample a profile from r_a to r_b; add the exact horizon point if asked.

    include_horizon: 'start' / 'end' / None says where r = 2M is attached.
    """
    a, b = lo_hi
    curve = profile.sample(a, b, policy)
    kc = push_to_kruskal(curve)
    if include_horizon:
        M2 = np.array([2.0 * profile.model.mass])
        U0, V0 = profile_uv(profile, M2)
        if include_horizon == "start":
            kc = KruskalCurve(kc.region, np.concatenate((M2, kc.r)),
                              np.concatenate((U0, kc.U)), np.concatenate((V0, kc.V)))
        else:
            kc = KruskalCurve(kc.region, np.concatenate((kc.r, M2)),
                              np.concatenate((kc.U, U0)), np.concatenate((kc.V, V0)))
    return BranchPiece(profile.spec, curve, kc, profile)


def _endpoint_mismatch(k1, k2):
    p = np.array([k1.U[-1], k1.V[-1]])
    q = np.array([k2.U[0], k2.V[0]])
    scale = max(1.0, float(np.max(np.abs(p))))
    return float(np.max(np.abs(p - q))) / scale, (float(q[0]), float(q[1]))


def _record(pieces, i, location, radius):
    mis, pt = _endpoint_mismatch(pieces[i].kruskal, pieces[i + 1].kruskal)
    return JoinRecord(location, i, i + 1, radius, pt, mis)


def _match_horizon(prev, spec_next, strict=True):
    """cbar making the regular part of ``spec_next`` equal prev's at r = 2M.

    strict=False skips the check that both branches cross the same null
    boundary (used only by the negative control).
    """
    M2 = np.array([2.0 * prev.model.mass])
    target = prev.regular(M2)[0]
    trial = Profile(prev.model, replace(spec_next, cbar=0.0))
    if strict and trial.n != prev.n:
        raise ClassificationError("branches do not share a horizon crossing",
                                  prev=prev.region.value, next=spec_next.region.value)
    return target - trial.regular(M2)[0]


def _policy(policy):
    if policy is None:
        return GridPolicy()
    if isinstance(policy, (int, np.integer)):
        return GridPolicy(points=int(policy))
    return policy


def build_complete(model, H, c1, cbar1=0.0, policy=None, tol=CASE_TOL, c2_override=None):
    """Complete surface containing the region I branch (H, c1, cbar1).

    c1 < -8M^3 H: region I glued to region II (then possibly II and I');
    c1 > -8M^3 H: mirrored through region II'; c1 = -8M^3 H (within a
    relative band): through the Kruskal origin into region I'.
    ``c2_override`` replaces the interior constant (negative control only).
    """
    policy = _policy(policy)
    M = model.mass
    M2 = 2.0 * M
    crit = horizon_value(model, H)
    if c2_override is not None:
        return _build_rejected(model, H, c1, cbar1, c2_override, policy, tol)
    if in_critical_band(c1, crit, tol):
        return _build_origin(model, H, crit, cbar1, policy)
    c_in = c1
    below = c1 < crit
    inner = Region.II if below else Region.IIprime
    out_sign = PLUS if below else MINUS      # branch continuing from region I
    back_sign = MINUS if below else PLUS     # branch returning toward region I'
    hor = "L+" if below else "L-"
    back_hor = "L-" if below else "L+"
    rep = classify_interior(model, H, c_in, inner, tol)
    if rep.case == CRITICAL:
        c1 = c_in = rep.critical_value
    ext = Profile(model, BranchSpec(Region.I, H, c1, cbar1))
    pieces = [_piece(ext, (policy.r_max * M, M2 + policy.horizon_offset * M), policy, "end")]
    if rep.case == TURNING:
        anchor = rep.turning_upper
    elif rep.case == CRITICAL:
        anchor = 0.5 * (rep.critical_r + M2)
    else:
        anchor = M
    spec_in = BranchSpec(inner, H, c_in, 0.0, out_sign, anchor)
    cbar2 = _match_horizon(ext, spec_in)
    p_in = Profile(model, replace(spec_in, cbar=cbar2))
    lo_in, hi_in = p_in.default_range(policy)
    if not lo_in < hi_in < M2:
        raise DomainError("upper turning radius lies within rounding of r = 2M; the interior "
                          "excursion cannot be sampled in the (t, r) chart",
                          H=H, c=c1, turning_upper=anchor, gap=M2 - anchor)
    pieces.append(_piece(p_in, (hi_in, lo_in), policy, "start"))
    joins = [_record(pieces, 0, hor, M2)]
    ends = [End("spatial-infinity", Region.I)]
    if rep.case == FULL:
        ends.append(End("singularity", inner))
        family = "1a" if below else "3a"
    elif rep.case == CRITICAL:
        ends.append(End("cylinder-asymptote", inner, rep.critical_r))
        family = "1b" if below else "3b"
    else:
        p_back = Profile(model, BranchSpec(inner, H, c_in, cbar2, back_sign, anchor))
        pieces.append(_piece(p_back, (anchor, p_back.default_range(policy)[1]), policy, "end"))
        joins.append(_record(pieces, 1, "turning", anchor))
        spec_out = BranchSpec(Region.Iprime, H, c1, 0.0)
        cbar3 = _match_horizon(p_back, spec_out)
        p_out = Profile(model, replace(spec_out, cbar=cbar3))
        pieces.append(_piece(p_out, (M2 + policy.horizon_offset * M, policy.r_max * M),
                             policy, "start"))
        joins.append(_record(pieces, 2, back_hor, M2))
        ends.append(End("spatial-infinity", Region.Iprime))
        family = "1c" if below else "3c"
    return GluedHypersurface(model, H, c1, cbar1, family, pieces, joins, ends)


def _build_rejected(model, H, c1, cbar1, c2, policy, tol):
    """Region I branch followed by an interior branch with constant c2.

    Negative control: the interior piece is built as if it continued the
    exterior one.  If it reaches r = 2M its offset matches only the finite
    parts of the slopes there, blind to which null boundary it hits;
    otherwise it runs from the valid radius nearest the horizon with the
    exterior's offset.  Either way continuity fails unless c2 = c1.
    """
    M = model.mass
    M2 = 2.0 * M
    below = c1 < horizon_value(model, H)
    inner = Region.II if below else Region.IIprime
    sign = PLUS if below else MINUS
    rep = classify_interior(model, H, c2, inner, tol)
    ext = Profile(model, BranchSpec(Region.I, H, c1, cbar1))
    pieces = [_piece(ext, (policy.r_max * M, M2 + policy.horizon_offset * M), policy, "end")]
    iv = max(rep.valid_intervals, key=lambda v: v.hi)
    if iv.hi_end == "horizon":
        anchor = 0.5 * (iv.lo + iv.hi)
        spec = BranchSpec(inner, H, c2, 0.0, sign, anchor)
        spec = replace(spec, cbar=_match_horizon(ext, spec, strict=False))
        p_in = Profile(model, spec)
        lo, hi = p_in.default_range(policy)
        pieces.append(_piece(p_in, (hi, lo), policy, "start"))
    else:
        p_in = Profile(model, BranchSpec(inner, H, c2, cbar1, sign, iv.hi))
        lo, hi = p_in.default_range(policy)
        pieces.append(_piece(p_in, (hi, lo), policy, None))
    joins = [_record(pieces, 0, "L+" if below else "L-", M2)]
    ends = [End("spatial-infinity", Region.I), End("singularity", inner)]
    return GluedHypersurface(model, H, c1, cbar1, "rejected", pieces, joins, ends)


def _build_origin(model, H, c1, cbar1, policy):
    M = model.mass
    M2 = 2.0 * M
    ext = Profile(model, BranchSpec(Region.I, H, c1, cbar1, anchor_r=M2))
    cbar3 = join_through_origin(model, H, c1, cbar1)
    out = Profile(model, BranchSpec(Region.Iprime, H, c1, cbar3, anchor_r=M2))
    pieces = [_piece(ext, (policy.r_max * M, M2), policy, None),
              _piece(out, (M2, policy.r_max * M), policy, None)]
    joins = [_record(pieces, 0, "origin", M2)]
    ends = [End("spatial-infinity", Region.I), End("spatial-infinity", Region.Iprime)]
    return GluedHypersurface(model, H, c1, cbar1, "5", pieces, joins, ends)


def build_interior_only(model, H, c, which=Region.II, cbar=0.0, policy=None, tol=CASE_TOL):
    """Surfaces lying inside one interior region.

    Case (b): the piece on (0, r_H) between the singularity and the cylinder
    r = r_H.  Case (c) with a lower turning radius r': plus and minus branches
    on (0, r'] joined at r', both ends at the singularity.
    """
    policy = _policy(policy)
    which = Region(which)
    rep = classify_interior(model, H, c, which, tol)
    M = model.mass
    if rep.case == CRITICAL:
        anchor = 0.5 * rep.critical_r
        p = Profile(model, BranchSpec(which, H, rep.critical_value, cbar, PLUS, anchor))
        lo, hi = p.default_range(policy)
        pieces = [_piece(p, (lo, hi), policy, None)]
        ends = [End("singularity", which), End("cylinder-asymptote", which, rep.critical_r)]
        return GluedHypersurface(model, H, rep.critical_value, cbar, "interior-b",
                                 pieces, [], ends)
    if rep.case == TURNING and rep.turning_lower is not None:
        rp = rep.turning_lower
        p1 = Profile(model, BranchSpec(which, H, c, cbar, PLUS, rp))
        p2 = Profile(model, BranchSpec(which, H, c, cbar, MINUS, rp))
        lo = policy.r_min * M
        pieces = [_piece(p1, (lo, rp), policy, None), _piece(p2, (rp, lo), policy, None)]
        joins = [_record(pieces, 0, "turning", rp)]
        ends = [End("singularity", which), End("singularity", which)]
        return GluedHypersurface(model, H, c, cbar, "interior-c", pieces, joins, ends)
    raise ClassificationError("interior-only surfaces need case (b) or a lower turning radius",
                              H=H, c=c, case=rep.case)


# ------------------------------------------------------------ reflections

def reflect_time(surface):
    """Image under T -> -T, i.e. (U, V) -> (V, U); swaps II and II'."""
    swap = {Region.I: Region.I, Region.Iprime: Region.Iprime,
            Region.II: Region.IIprime, Region.IIprime: Region.II}
    return _reflect(surface, swap, lambda U, V: (V, U), -1)


def reflect_space(surface):
    """Image under X -> -X, i.e. (U, V) -> (-V, -U); swaps I and I'."""
    swap = {Region.I: Region.Iprime, Region.Iprime: Region.I,
            Region.II: Region.II, Region.IIprime: Region.IIprime}
    return _reflect(surface, swap, lambda U, V: (-V, -U), 1)


def _reflect(surface, swap, uvmap, hsign):
    pieces = []
    for b in surface.branches:
        k = b.kruskal
        U, V = uvmap(k.U, k.V)
        reg = swap[k.region]
        c = b.curve
        curve = SampledCurve(reg, c.r.copy(), -c.t, None, c.model)
        pieces.append(BranchPiece(None, curve, KruskalCurve(reg, k.r.copy(), U, V), None))
    ends = [End(e.kind, swap[e.region], e.radius) for e in surface.ends]
    joins = [replace(j, point=uvmap(*j.point)) for j in surface.joins]
    return GluedHypersurface(surface.model, hsign * surface.H, hsign * surface.c,
                             -surface.cbar, surface.family + "-reflected", pieces, joins, ends)


def build_from_Iprime(model, H, c3, cbar3, policy=None):
    """Complete surface containing the region I' branch (H, c3, cbar3).

    Obtained as the X -> -X image of the surface through region I with the
    same H and c and offset -cbar3 (both anchored at r1).
    """
    surf = reflect_space(build_complete(model, H, c3, -cbar3, policy))
    surf.cbar = cbar3
    return surf


# ------------------------------------------------------------ smoothness

def _side_profile(surface, idx):
    p = surface.branches[idx].profile
    if p is None:
        raise DomainError("smoothness check needs the branch profiles")
    return p


def _probe_offsets(profile, join, steps):
    M = profile.model.mass
    if join.location in ("L+", "L-"):
        d = 1.0 if profile.region.exterior else -1.0
        return [d * p * M for p in steps]
    if join.location == "origin":
        return [p * p * M for p in steps]
    iv = profile.interval
    d = 1.0 if (iv.lo_end == "turning" and iv.lo == join.radius) else -1.0
    return [d * p * p * M for p in steps]


def _probe_radii(profile, join, steps):
    return [join.radius + o for o in _probe_offsets(profile, join, steps)]


def _step_scale(profile, join, base_steps):
    """Factor on the base steps keeping every probe inside the branch interval."""
    iv = profile.interval
    rho = join.radius
    room = max(abs(iv.lo - rho), abs(iv.hi - rho))
    reach = max(abs(o) for o in _probe_offsets(profile, join, base_steps))
    f = min(1.0, 0.25 * room / reach)
    return f if join.location in ("L+", "L-") else math.sqrt(f)


def one_sided_derivatives(profile, join, base_steps=SMOOTH_STEPS):
    """Richardson-extrapolated first and second derivatives at a join.

    Returns (d1, d2) of y(x) with (x, y) = (U, V) except at L- where
    (x, y) = (V, U).  One value per base step; the last is the finest.
    """
    steps = []
    for p in base_steps:
        steps += [p, p / 2, p / 4]
    r = np.array(_probe_radii(profile, join, steps))
    rho = np.array([join.radius])
    U, V = profile_uv(profile, np.concatenate((rho, r)))
    x, y = (V, U) if join.location == "L-" else (U, V)
    dx = x[1:] - x[0]
    dy = y[1:] - y[0]
    d1, d2 = [], []
    # probes that collapse onto the join give nan, which fails the smoothness check
    with np.errstate(invalid="ignore", divide="ignore"):
        for k in range(len(base_steps)):
            a, b, c = 3 * k, 3 * k + 1, 3 * k + 2
            s1, s2 = dy[a] / dx[a], dy[b] / dx[b]
            d1.append(s2 + (s2 - s1) * dx[b] / (dx[a] - dx[b]))
            q1 = 2.0 * (dy[a] / dx[a] - dy[b] / dx[b]) / (dx[a] - dx[b])
            q2 = 2.0 * (dy[b] / dx[b] - dy[c] / dx[c]) / (dx[b] - dx[c])
            sg1, sg2 = dx[a] + dx[b], dx[b] + dx[c]
            d2.append(q2 + (q2 - q1) * sg2 / (sg1 - sg2))
    return np.array(d1), np.array(d2)


@dataclass
class SmoothnessReport:
    location: str
    first: tuple
    second: tuple
    first_gap: float
    second_gap: float

    @property
    def ok(self):
        return self.first_gap < SMOOTH_TOL and self.second_gap < SMOOTH_TOL


def _gap(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def join_smoothness(surface, k, base_steps=SMOOTH_STEPS):
    """Compare one-sided first and second derivatives across join ``k``."""
    join = surface.joins[k]
    pa = _side_profile(surface, join.left)
    pb = _side_profile(surface, join.right)
    f = min(_step_scale(pa, join, base_steps), _step_scale(pb, join, base_steps))
    base_steps = tuple(f * p for p in base_steps)
    a1, a2 = one_sided_derivatives(pa, join, base_steps)
    b1, b2 = one_sided_derivatives(pb, join, base_steps)
    return SmoothnessReport(join.location, (a1[-1], b1[-1]), (a2[-1], b2[-1]),
                            _gap(a1[-1], b1[-1]), _gap(a2[-1], b2[-1]))


def origin_limits(model, H, cbar1):
    """Closed-form dV/dU and d2V/dU2 at the origin crossing (anchors at 2M).

    dV/dU = exp(cbar1/2M); d2V/dU2 = 2 sqrt(2M) F1(2M)/M exp((3 cbar1 - 2M)/4M)
    with F1(2M) = lim sqrt(h) f1' = 6 M H.
    """
    M = model.mass
    F1 = 6.0 * M * H
    return (math.exp(cbar1 / (2.0 * M)),
            2.0 * math.sqrt(2.0 * M) * F1 / M * math.exp((3.0 * cbar1 - 2.0 * M) / (4.0 * M)))
