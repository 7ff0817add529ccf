"""Safeguarded Newton iteration on a sign-changing bracket."""
import math


def newton_bisect(f, fprime, a, b, xtol=1e-15, rtol=4e-16, maxiter=200):
    """Root of ``f`` in ``[a, b]``; ``f(a)`` and ``f(b)`` must differ in sign.

    A Newton step is accepted only when it stays strictly inside the current
    bracket and shrinks the step, otherwise a bisection step is taken.
    """
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise ValueError("root not bracketed: f(%r)=%r, f(%r)=%r" % (a, fa, b, fb))
    # orient so that f(lo) < 0 < f(hi)
    lo, hi = (a, b) if fa < 0 else (b, a)
    x = 0.5 * (a + b)
    dx_old = abs(b - a)
    dx = dx_old
    fx = f(x)
    for _ in range(maxiter):
        if fx == 0.0:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        d = fprime(x) if fprime is not None else 0.0
        newton_ok = False
        if d != 0.0 and math.isfinite(d):
            step = fx / d
            xn = x - step
            if min(lo, hi) < xn < max(lo, hi) and abs(2.0 * step) < dx_old:
                newton_ok = True
        if newton_ok:
            dx_old, dx = dx, abs(step)
            x = xn
        else:
            dx_old = dx
            xn = 0.5 * (lo + hi)
            dx = abs(xn - x)
            x = xn
        tol = xtol + rtol * abs(x)
        if dx <= tol or abs(hi - lo) <= tol:
            return x
        fx = f(x)
    return x
