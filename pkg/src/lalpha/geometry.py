import numpy as np

from . import kernels

INSET_TOL = 1e-9


def containment(points, curve, tol=INSET_TOL):
    """Test which points lie in the closed region bounded by a simple closed curve.

    ``curve`` is a sampled boundary (last vertex joins the first). A point is
    inside when the winding number is +-1, or when it sits within ``tol`` of the
    curve. Returns (inside, signed_distance) where the distance is positive
    for interior points.
    """
    points = np.ascontiguousarray(np.atleast_1d(points), dtype=np.complex128)
    curve = np.ascontiguousarray(curve, dtype=np.complex128)
    wn, dist = kernels.winding(points, curve)
    enclosed = np.abs(np.rint(wn)) == 1
    inside = enclosed | (dist <= tol)
    return inside, np.where(enclosed, dist, -dist)
