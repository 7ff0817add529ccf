"""Vectorized adaptive Gauss-Legendre quadrature over many cells at once.

Every cell is integrated with 10- and 20-point Gauss-Legendre rules in a
single call of the integrand; cells whose two estimates disagree are
bisected and retried.  The integrands handed in here are analytic on each
cell (singular ends are removed by a change of variable beforehand), so
the 20-point value is far more accurate than the disagreement suggests.
If rounding noise in the integrand keeps cells from converging, refinement
stops once MAX_CELLS cells are active and their 20-point values are kept.
"""
import numpy as np

_X20, _W20 = np.polynomial.legendre.leggauss(20)
_X10, _W10 = np.polynomial.legendre.leggauss(10)
_U = 0.5 * (np.concatenate((_X20, _X10)) + 1.0)
MAX_ROUNDS = 60
MAX_CELLS = 1 << 17


def cell_integrals(func, edges, epsrel=1e-12, epsabs=1e-15):
    """Integrals of ``func`` over [edges[i], edges[i+1]] for every i.

    ``func`` must accept an array of abscissae and return an array of the
    same shape.
    """
    edges = np.asarray(edges, dtype=float)
    out = np.zeros(max(edges.size - 1, 0))
    a, w = edges[:-1], np.diff(edges)
    owner = np.arange(a.size)
    for _ in range(MAX_ROUNDS):
        if a.size == 0:
            break
        if a.size > MAX_CELLS:
            f = func(a[:, None] + w[:, None] * _U[None, :20])
            np.add.at(out, owner, 0.5 * w * (f @ _W20))
            break
        f = func(a[:, None] + w[:, None] * _U[None, :])
        hw = 0.5 * w
        i20 = hw * (f[:, :20] @ _W20)
        i10 = hw * (f[:, 20:] @ _W10)
        err = np.abs(i20 - i10)
        done = (err <= np.maximum(epsabs, epsrel * np.abs(i20))) | (hw <= 4e-16 * np.abs(a))
        np.add.at(out, owner[done], i20[done])
        keep = ~done
        a, hw, owner = a[keep], hw[keep], owner[keep]
        a = np.concatenate((a, a + hw))
        w = np.concatenate((hw, hw))
        owner = np.concatenate((owner, owner))
    else:
        if a.size:
            f = func(a[:, None] + w[:, None] * _U[None, :20])
            np.add.at(out, owner, 0.5 * w * (f @ _W20))
    return out


def cumulative(func, x, x0, **kw):
    """Values of the integral of ``func`` from ``x0`` to each entry of ``x``."""
    x = np.asarray(x, dtype=float)
    nodes, inv = np.unique(np.append(x.ravel(), x0), return_inverse=True)
    cum = np.concatenate(([0.0], np.cumsum(cell_integrals(func, nodes, **kw))))
    vals = cum[inv]
    return (vals[:-1] - vals[-1]).reshape(x.shape)
