"""The interior constant c2 = c1 against the rejected alternative -c1 - 16M^3 H.

Both make the finite parts of the slopes agree at r = 2M, but only c2 = c1
continues the exterior branch across the same null boundary.

    python3 demos/negative_control.py
"""
import numpy as np

from sscmc import ClassificationError, Model, build_complete
from sscmc.assembly import rejected_c2

model = Model(1.0)
print("%6s %7s %9s %12s %12s" % ("H", "c1", "c2 alt", "c2 = c1", "c2 = alt"))
for H in (0.3, 0.5, 1.0):
    for c1 in np.linspace(-16 * H, -8 * H, 5)[1:-1]:
        good = build_complete(model, H, c1, 0.0).joins[0].mismatch
        alt = rejected_c2(model, H, c1)
        try:
            bad = "%12.3e" % build_complete(model, H, c1, 0.0, c2_override=alt).joins[0].mismatch
        except ClassificationError:
            bad = "%12s" % "inadmissible"
        print("%6.2f %7.3f %9.3f %12.1e %s" % (H, c1, alt, good, bad))
