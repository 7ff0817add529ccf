"""Every surface family for one H, drawn into a single Kruskal diagram.

    python3 demos/family_gallery.py [H] [out.svg]
"""
import sys

from sscmc import Model, build_complete, find_RH, find_rH, verify_surface
from sscmc.domain import horizon_value
from sscmc.svg import surface_svg

H = float(sys.argv[1]) if len(sys.argv) > 1 else 0.2
out = sys.argv[2] if len(sys.argv) > 2 else "family_gallery.svg"
model = Model(1.0)

crit = horizon_value(model, H)
cH = find_rH(model, H)[1]
CH = find_RH(model, H)[1]
constants = [cH - 1.0, cH, 0.5 * (cH + crit), crit, 0.5 * (crit + CH), CH, CH + 1.0]

surfaces, labels = [], ["H = %g" % H]
print("%10s  %-6s %-55s %10s %10s" % ("c1", "family", "ends", "residual", "mismatch"))
for c in constants:
    s = build_complete(model, H, c, 0.0)
    rep = verify_surface(s, smooth=False)
    res = max(b["residual"] for b in rep["branches"])
    print("%10.5f  %-6s %-55s %10.1e %10.1e"
          % (c, s.family, " | ".join(rep["ends"]), res, s.max_join_mismatch))
    surfaces.append(s)
    labels.append("c1=%.3f: %s" % (c, s.family))

with open(out, "w") as fh:
    fh.write(surface_svg(surfaces, model.mass, labels))
print("wrote", out)
