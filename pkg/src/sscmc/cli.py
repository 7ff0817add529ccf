"""Command line front end.

    sscmc solve     one branch as CSV (r,t) or JSON
    sscmc classify  interior domain report as JSON
    sscmc glue      complete surface: per-branch CSV, Kruskal CSV, SVG, report
    sscmc verify    checks on CSV curves or on a freshly built surface
    sscmc export    SVG of several surfaces sharing H
    sscmc sweep     summary table over an (H, c) grid

Exit codes: 0 ok, 1 verification failure, 2 usage or domain error.  Errors
are written to stderr as JSON {"error", "message", "context"}.  Relative
output paths resolve against $SSCMC_OUTPUT_DIR when it is set.
"""
import argparse
import concurrent.futures
import csv
import dataclasses
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .assembly import (JOIN_TOL, SMOOTH_TOL, build_complete, push_to_kruskal,
                       rejected_c2)
from .domain import find_RH, find_rH, horizon_value, classify_interior
from .errors import ClassificationError, DomainError, SSCMCError
from .geometry import Model, Region
from .profiles import BranchSpec, GridPolicy, Profile, SampledCurve
from .svg import surface_svg
from .verify import (check_spacelike, checked_points, kruskal_invariant_error,
                     mean_curvature_residual, verify_surface)

OUTPUT_ENV = "SSCMC_OUTPUT_DIR"
FLOAT = "%.17g"


@dataclasses.dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-6
    join: float = JOIN_TOL
    smooth: float = SMOOTH_TOL


@dataclasses.dataclass(frozen=True)
class RunConfig:
    mass: float = 1.0
    H: float = 0.0
    c: float = 0.0
    cbar: float = 0.0
    r_min: float = 1e-6
    r_max: float = 20.0
    points: int = 1000
    tolerances: Tolerances = Tolerances()
    format: str = "csv"
    output: str = None

    def __post_init__(self):
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise DomainError("mass must be positive", mass=self.mass)
        for name in ("H", "c", "cbar", "r_min", "r_max"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError("%s must be finite" % name)
        if self.points < 16:
            raise DomainError("grid needs at least 16 points", points=self.points)
        if not 0 < self.r_min < self.r_max:
            raise DomainError("need 0 < r_min < r_max", r_min=self.r_min, r_max=self.r_max)
        for k, v in dataclasses.asdict(self.tolerances).items():
            if not v > 0:
                raise DomainError("tolerances must be positive", name=k, value=v)
        if self.format not in ("csv", "json", "svg"):
            raise DomainError("format must be csv, json or svg", format=self.format)

    @property
    def model(self):
        return Model(self.mass)

    @property
    def policy(self):
        M = self.mass
        return GridPolicy(points=self.points, r_min=self.r_min / M, r_max=self.r_max / M)

    @classmethod
    def from_sources(cls, args, config=None):
        """Config file values overridden by explicitly given flags."""
        data = dict(config or {})
        tol = dict(data.pop("tolerances", {}) or {})
        for key in ("mass", "H", "c", "cbar", "r_min", "r_max", "points", "format", "output"):
            val = getattr(args, key, None)
            if val is not None:
                data[key] = val
        for key in ("residual", "join", "smooth"):
            val = getattr(args, "tol_" + key, None)
            if val is not None:
                tol[key] = val
        known = {f.name for f in dataclasses.fields(cls)}
        extra = sorted(set(data) - known)
        if extra:
            raise DomainError("unknown config keys", keys=extra)
        try:
            return cls(tolerances=Tolerances(**tol), **data)
        except TypeError as exc:
            raise DomainError("bad config: %s" % exc) from None


# ------------------------------------------------------------ serialization

def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, Region):
        return x.value
    return x


def dumps(obj):
    return json.dumps(_plain(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def csv_text(header, columns):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in zip(*columns):
        buf.write(",".join(FLOAT % v for v in row) + "\n")
    return buf.getvalue()


def curve_csv(curve):
    return csv_text(("r", "t"), (curve.r, curve.t))


def kruskal_csv(U, V, r):
    U, V, r = map(np.asarray, (U, V, r))
    return csv_text(("U", "V", "X", "T", "r"), (U, V, 0.5 * (U + V), 0.5 * (V - U), r))


def read_columns(path, names):
    """Named float columns from a CSV file with a header row."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DomainError("cannot read %s: %s" % (path, exc.strerror), path=str(path)) from None
    if not rows:
        raise DomainError("empty CSV", path=str(path))
    header = [h.strip() for h in rows[0]]
    missing = [n for n in names if n not in header]
    if missing:
        raise DomainError("missing columns", path=str(path), missing=missing, header=header)
    idx = [header.index(n) for n in names]
    try:
        data = np.array([[float(row[i]) for i in idx] for row in rows[1:] if row], dtype=float)
    except (ValueError, IndexError):
        raise DomainError("non-numeric or short row", path=str(path)) from None
    return data.reshape(-1, len(names)).T


def output_path(name):
    p = Path(name)
    base = os.environ.get(OUTPUT_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def emit(text, name=None):
    if name is None:
        sys.stdout.write(text)
        return None
    p = output_path(name)
    with open(p, "w", newline="") as fh:
        fh.write(text)
    return str(p)


# ------------------------------------------------------------ commands

def _spec(cfg, args):
    return BranchSpec(Region.parse(args.region), cfg.H, cfg.c, cfg.cbar, args.sign)


def curve_report(curve, model, tol):
    res = mean_curvature_residual(curve)
    checked = checked_points(curve)
    sp = check_spacelike(curve)
    kinv = kruskal_invariant_error(model, push_to_kruskal(curve)) if curve.spec else None
    ok = res < tol.residual and sp.ok
    return {"region": curve.region.value, "points": len(curve), "checked": checked,
            "residual": res,
            "spacelike_margin": sp.margin, "kruskal_invariant": kinv, "ok": bool(ok)}


def cmd_solve(args, cfg):
    spec = _spec(cfg, args)
    curve = Profile(cfg.model, spec).sample(grid=cfg.policy)
    if cfg.format == "json":
        text = dumps({"region": spec.region.value, "sign": spec.sign, "H": cfg.H, "c": spec.c,
                      "cbar": cfg.cbar, "mass": cfg.mass, "r": curve.r, "t": curve.t})
    else:
        text = curve_csv(curve)
    emit(text, cfg.output)
    return 0


def _classify_c(model, H, value, region):
    if value == "auto-critical":
        if region == Region.II:
            return find_rH(model, H)[1]
        return find_RH(model, H)[1]
    if value == "-8M3H-equal":
        return horizon_value(model, H)
    try:
        return float(value)
    except ValueError:
        raise DomainError("--c must be a number, auto-critical or -8M3H-equal",
                          value=value) from None


def cmd_classify(args, cfg):
    model = cfg.model
    region = Region.parse(args.region)
    c = _classify_c(model, cfg.H, args.c_text, region)
    rep = classify_interior(model, cfg.H, c, region)
    rH, cH = find_rH(model, cfg.H)
    RH, CH = find_RH(model, cfg.H)
    out = rep.to_dict()
    out.update(r_H=rH, c_H=cH, R_H=RH, C_H=CH, horizon_value=horizon_value(model, cfg.H))
    emit(dumps(out), cfg.output)
    return 0


def _build(cfg, sabotage=False):
    c2 = rejected_c2(cfg.model, cfg.H, cfg.c) if sabotage else None
    return build_complete(cfg.model, cfg.H, cfg.c, cfg.cbar, cfg.policy, c2_override=c2)


def _surface_report(surf, tol):
    rep = verify_surface(surf, residual_tol=tol.residual, join_tol=tol.join)
    for j in rep["joins"]:
        if "first_gap" in j:
            j["ok"] = bool(j["mismatch"] < tol.join and j["first_gap"] < tol.smooth
                           and j["second_gap"] < tol.smooth)
    rep["ok"] = bool(all(b["ok"] for b in rep["branches"]) and all(j["ok"] for j in rep["joins"]))
    return rep


def cmd_glue(args, cfg):
    try:
        surf = _build(cfg, args.sabotage_c2)
    except ClassificationError as exc:
        if not args.sabotage_c2:
            raise
        # the substituted constant admits no interior branch at all
        sys.stdout.write(dumps({"ok": False, "sabotaged": True, "error": exc.to_dict()}))
        return 1
    rep = _surface_report(surf, cfg.tolerances)
    files = []
    if cfg.output:
        for i, b in enumerate(surf.branches):
            name = "%s_branch%d_%s_%s.csv" % (cfg.output, i, b.spec.region.value, b.spec.sign)
            files.append(emit(curve_csv(b.curve), name))
        files.append(emit(kruskal_csv(*surf.kruskal_arrays()), cfg.output + "_kruskal.csv"))
    if args.plot:
        label = "H=%g c=%g family %s" % (cfg.H, surf.c, surf.family)
        files.append(emit(surface_svg([surf], cfg.mass, [label]),
                          (cfg.output or "glue") + ".svg"))
    rep["files"] = files
    rep["sabotaged"] = bool(args.sabotage_c2)
    sys.stdout.write(dumps(rep))
    return 0 if rep["ok"] else 1


def cmd_verify(args, cfg):
    tol = cfg.tolerances
    if not args.files:
        rep = _surface_report(_build(cfg), tol)
        sys.stdout.write(dumps(rep))
        return 0 if rep["ok"] else 1
    if args.region is None:
        raise DomainError("verifying CSV curves needs --region")
    spec = _spec(cfg, args)
    reports = []
    for path in args.files:
        r, t = read_columns(path, ("r", "t"))
        curve = SampledCurve(spec.region, r, t, spec, cfg.model)
        entry = curve_report(curve, cfg.model, tol)
        entry["file"] = str(path)
        reports.append(entry)
    ok = all(e["ok"] for e in reports)
    sys.stdout.write(dumps({"curves": reports, "ok": ok}))
    return 0 if ok else 1


def cmd_export(args, cfg):
    cs = args.c_values if args.c_values else [cfg.c]
    surfs = [build_complete(cfg.model, cfg.H, c, cfg.cbar, cfg.policy) for c in cs]
    labels = ["H=%g" % cfg.H] + ["c=%g: %s" % (c, s.family) for c, s in zip(cs, surfs)]
    emit(surface_svg(surfs, cfg.mass, labels), cfg.output)
    return 0


def _sweep_one(task):
    mass, H, c, cbar, points, tol = task
    cfg = RunConfig(mass=mass, H=H, c=c, cbar=cbar, points=points, tolerances=Tolerances(*tol))
    surf = _build(cfg)
    rep = _surface_report(surf, cfg.tolerances)
    res = max((b["residual"] for b in rep["branches"]),
              key=lambda v: math.inf if math.isnan(v) else v)
    return [H, c, surf.family, "|".join(e.label for e in surf.ends),
            surf.max_join_mismatch, res, int(rep["ok"])]


def cmd_sweep(args, cfg):
    Hs = np.linspace(*args.H_range[:2], int(args.H_range[2]))
    cs = np.linspace(*args.c_range[:2], int(args.c_range[2]))
    tol = dataclasses.astuple(cfg.tolerances)
    tasks = [(cfg.mass, float(H), float(c), cfg.cbar, cfg.points, tol) for H in Hs for c in cs]
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(_sweep_one, tasks))
    else:
        rows = [_sweep_one(t) for t in tasks]
    buf = io.StringIO()
    buf.write("H,c,family,ends,join_mismatch,max_residual,ok\n")
    for H, c, fam, ends, mis, res, ok in rows:
        buf.write("%s,%s,%s,%s,%s,%s,%d\n" % (FLOAT % H, FLOAT % c, fam, ends,
                                             FLOAT % mis, FLOAT % res, ok))
    emit(buf.getvalue(), cfg.output)
    return 0 if all(r[-1] for r in rows) else 1


# ------------------------------------------------------------ parser

def _common(p, c_number=True):
    p.add_argument("--config", help="JSON file with RunConfig fields")
    p.add_argument("--mass", type=float)
    p.add_argument("--H", type=float, dest="H")
    if c_number:
        p.add_argument("--c", type=float)
    p.add_argument("--cbar", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--r-min", type=float, dest="r_min")
    p.add_argument("--r-max", type=float, dest="r_max")
    p.add_argument("--tol-residual", type=float)
    p.add_argument("--tol-join", type=float)
    p.add_argument("--tol-smooth", type=float)
    p.add_argument("--out", dest="output", help="output path (stdout when omitted)")


def build_parser():
    parser = argparse.ArgumentParser(prog="sscmc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="integrate one branch")
    _common(p)
    p.add_argument("--region", required=True, choices=[r.value for r in Region])
    p.add_argument("--sign", default="plus", choices=["plus", "minus"])
    p.add_argument("--format", choices=["csv", "json"])
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="interior domain classification")
    _common(p, c_number=False)
    p.add_argument("--c", dest="c_text", required=True,
                   help="number, auto-critical or -8M3H-equal")
    p.add_argument("--region", default="II", choices=["II", "IIprime"])
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("glue", help="build a complete surface")
    _common(p)
    p.add_argument("--plot", action="store_true", help="also write an SVG")
    p.add_argument("--sabotage-c2", action="store_true",
                   help="use the sign-flipped interior constant (negative control)")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("verify", help="check CSV curves or a built surface")
    _common(p)
    p.add_argument("files", nargs="*", help="CSV files with columns r,t")
    p.add_argument("--region", choices=[r.value for r in Region])
    p.add_argument("--sign", default="plus", choices=["plus", "minus"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="SVG of surfaces with one H")
    _common(p)
    p.add_argument("--c-values", type=float, nargs="+")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("sweep", help="build and check an (H, c) grid")
    _common(p)
    p.add_argument("--H-range", type=float, nargs=3, default=[-1.0, 1.0, 5],
                   metavar=("LO", "HI", "N"))
    p.add_argument("--c-range", type=float, nargs=3, default=[-10.0, 10.0, 5],
                   metavar=("LO", "HI", "N"))
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def _load_config(path):
    if path is None:
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError("cannot load config: %s" % exc, path=path) from None
    if not isinstance(data, dict):
        raise DomainError("config must be a JSON object", path=path)
    return data


def _join_dash_values(argv):
    # "--c -8M3H-equal" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a == "--c" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append("--c=" + argv[i + 1])
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_dash_values(argv))
    try:
        cfg = RunConfig.from_sources(args, _load_config(args.config))
        return args.func(args, cfg)
    except SSCMCError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return 1 if exc.code == "verification" else 2


if __name__ == "__main__":
    sys.exit(main())
