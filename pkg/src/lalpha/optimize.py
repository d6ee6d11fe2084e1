import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_min(func, lo, hi, tol=1e-10, max_iter=200):
    """Golden-section minimization on a batch of brackets at once.

    ``func`` maps an array of abscissae to an array of values; ``lo``/``hi``
    are broadcast to a common shape. The bracket endpoints compete with the
    interior estimate so a monotone function returns its endpoint. Ties go
    to the smaller abscissa. Returns (x, f(x)) arrays.
    """
    a, b = np.broadcast_arrays(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float))
    a, b = a.copy(), b.copy()
    a0, b0 = a.copy(), b.copy()
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = func(x1), func(x2)
    for _ in range(max_iter):
        if np.all(b - a <= tol):
            break
        left = f1 <= f2
        a, b = np.where(left, a, x1), np.where(left, x2, b)
        x1_new = np.where(left, b - INV_PHI * (b - a), x2)
        x2_new = np.where(left, x1, a + INV_PHI * (b - a))
        fp = func(np.where(left, x1_new, x2_new))
        f1, f2 = np.where(left, fp, f2), np.where(left, f1, fp)
        x1, x2 = x1_new, x2_new
    xm = 0.5 * (a + b)
    cands = np.stack([a0, xm, b0])
    vals = np.stack([func(a0), func(xm), func(b0)])
    k = np.argmin(vals, axis=0)
    return np.choose(k, cands), np.choose(k, vals)


def golden_max(func, lo, hi, tol=1e-10, max_iter=200):
    x, v = golden_min(lambda t: -func(t), lo, hi, tol, max_iter)
    return x, -v
