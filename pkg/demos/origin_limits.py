"""One-sided dV/dU and d2V/dU2 at the Kruskal origin against the closed forms.

For c1 = -8M^3 H the surface runs from region I straight through U = V = 0
into region I'.  The probes sit at r = 2M + p^2 M, so the one-sided
estimates should approach the limits like p^2.

    python3 demos/origin_limits.py
"""
from sscmc import Model, build_complete
from sscmc.assembly import one_sided_derivatives, origin_limits
from sscmc.domain import horizon_value

model = Model(1.0)
for H, cbar in ((0.3, 0.0), (-0.7, 0.4), (1.0, -0.5)):
    s = build_complete(model, H, horizon_value(model, H), cbar)
    d1_exact, d2_exact = origin_limits(model, H, cbar)
    print("H = %g, cbar1 = %g: dV/dU -> %.12f, d2V/dU2 -> %.12f" % (H, cbar, d1_exact, d2_exact))
    for steps in ((1e-2, 1e-3), (1e-3, 1e-4), (1e-4, 1e-5)):
        for b in s.branches:
            d1, d2 = one_sided_derivatives(b.profile, s.joins[0], steps)
            print("  %-7s p >= %.0e  |d1 err| %.1e  |d2 err| %.1e"
                  % (b.kruskal.region.value, steps[-1], abs(d1[-1] - d1_exact),
                     abs(d2[-1] - d2_exact)))
