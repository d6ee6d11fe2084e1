"""Loop-form kernels compiled with numba.

Every function here has a vectorized twin in ``_vector`` with the same
signature; ``kernels`` picks one of the two at import time.
"""

import cmath
import math

import numpy as np

from ._accel import njit
from ._tableau import (
    A21, A31, A32, A41, A42, A43, A51, A52, A53, A54, A61, A62, A63, A64, A65,
    B1, B3, B4, B5, B6, E1, E3, E4, E5, E6, E7,
    SAFETY, MIN_FACTOR, MAX_FACTOR,
    DONE, BUFFER_FULL, ESCAPED, STEP_UNDERFLOW,
    SERIES_RADIUS, SERIES_EPS, SERIES_MAX_TERMS,
)


@njit
def h_scalar(z, order):
    """d^order/dz^order of -log(1-z)/z, order in {0, 1, 2}."""
    if abs(z) <= SERIES_RADIUS:
        total = 0j
        zn = 1.0 + 0j
        n = order
        for _ in range(SERIES_MAX_TERMS):
            if order == 0:
                c = 1.0 / (n + 1)
            elif order == 1:
                c = n / (n + 1.0)
            else:
                c = n * (n - 1.0) / (n + 1.0)
            term = c * zn
            total += term
            if n > order and abs(term) < SERIES_EPS:
                break
            zn *= z
            n += 1
        return total
    L = cmath.log(1.0 - z)
    if order == 0:
        return -L / z
    if order == 1:
        return 1.0 / (z * (1.0 - z)) + L / (z * z)
    return (
        -(1.0 - 2.0 * z) / (z * z * (1.0 - z) ** 2)
        - 1.0 / ((1.0 - z) * z * z)
        - 2.0 * L / (z * z * z)
    )


@njit
def h_array(z, order):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = h_scalar(z[i], order)
    return out


@njit
def _p_scalar(alpha, rot, weights, z):
    # p(z) = sum_j w_j phi_alpha(z * conj(zeta_j)); rot holds conj(zeta_j)
    acc = 0j
    for j in range(rot.shape[0]):
        acc += weights[j] * (h_scalar(z * rot[j], 0) - 1.0)
    return 1.0 + 2.0 * (1.0 + alpha) * acc


@njit
def _fprime_scalar(alpha, rot, weights, z):
    acc = 0j
    for j in range(rot.shape[0]):
        u = z * rot[j]
        phi = 1.0 + 2.0 * (1.0 + alpha) * (h_scalar(u, 0) - 1.0)
        acc += weights[j] * (phi + u * 2.0 * (1.0 + alpha) * h_scalar(u, 1))
    return acc


@njit
def synth_p(alpha, rot, weights, z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = _p_scalar(alpha, rot, weights, z[i])
    return out


@njit
def synth_fprime(alpha, rot, weights, z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = _fprime_scalar(alpha, rot, weights, z[i])
    return out


@njit
def winding(points, poly):
    """Winding number of the closed polygon ``poly`` around each point, and
    the distance from each point to the polygon."""
    n = poly.shape[0]
    wn = np.empty(points.shape[0])
    dist = np.empty(points.shape[0])
    for i in range(points.shape[0]):
        p = points[i]
        total = 0.0
        dmin = np.inf
        for k in range(n):
            a = poly[k] - p
            b = poly[(k + 1) % n] - p
            total += math.atan2((b * a.conjugate()).imag, (b * a.conjugate()).real)
            e = b - a
            ee = e.real * e.real + e.imag * e.imag
            if ee > 0.0:
                t = -(a.real * e.real + a.imag * e.imag) / ee
                t = min(1.0, max(0.0, t))
            else:
                t = 0.0
            d = abs(a + t * e)
            if d < dmin:
                dmin = d
        wn[i] = total / (2.0 * math.pi)
        dist[i] = dmin
    return wn, dist


@njit
def fs_scan(c, thetas, ws):
    """max |m2 - c m1^2| over two-atom measures w*delta(t1) + (1-w)*delta(t2)."""
    best = -1.0
    bi = bj = bk = 0
    nt = thetas.shape[0]
    e1 = np.empty(nt, dtype=np.complex128)
    e2 = np.empty(nt, dtype=np.complex128)
    for i in range(nt):
        e1[i] = cmath.exp(-1j * thetas[i])
        e2[i] = e1[i] * e1[i]
    for i in range(nt):
        for j in range(nt):
            for k in range(ws.shape[0]):
                w = ws[k]
                m1 = w * e1[i] + (1.0 - w) * e1[j]
                m2 = w * e2[i] + (1.0 - w) * e2[j]
                v = abs(m2 - c * m1 * m1)
                if v > best:
                    best = v
                    bi, bj, bk = i, j, k
    return best, bi, bj, bk


@njit
def _rhs(alpha, rot, weights, spin, w):
    return -spin * w * _p_scalar(alpha, rot, weights, w)


@njit
def dopri_run(alpha, rot, weights, spin, w0, s0, s_end, h, rtol, atol,
              escape_r, max_step, out_s, out_w, out_dw):
    """Integrate w' = -spin * f(w) from (s0, w0) towards s_end.

    Accepted steps are written to the output buffers. Returns
    (n_written, status, s, w, h_next).
    """
    cap = out_s.shape[0]
    n = 0
    s = s0
    w = w0
    k1 = _rhs(alpha, rot, weights, spin, w)
    status = BUFFER_FULL
    while n < cap:
        if s >= s_end:
            status = DONE
            break
        h = min(h, max_step)
        last = s + h >= s_end
        if last:
            h = s_end - s
        k2 = _rhs(alpha, rot, weights, spin, w + h * A21 * k1)
        k3 = _rhs(alpha, rot, weights, spin, w + h * (A31 * k1 + A32 * k2))
        k4 = _rhs(alpha, rot, weights, spin, w + h * (A41 * k1 + A42 * k2 + A43 * k3))
        k5 = _rhs(alpha, rot, weights, spin,
                  w + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))
        k6 = _rhs(alpha, rot, weights, spin,
                  w + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))
        w5 = w + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
        k7 = _rhs(alpha, rot, weights, spin, w5)
        errv = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7)
        scale = atol + rtol * max(abs(w), abs(w5))
        err = abs(errv) / scale
        if not math.isfinite(err):
            h *= MIN_FACTOR
            if h < 1e-14 * max(1.0, abs(s)):
                status = STEP_UNDERFLOW
                break
            continue
        if err <= 1.0:
            s = s_end if last else s + h
            w = w5
            k1 = k7
            out_s[n] = s
            out_w[n] = w
            out_dw[n] = k7
            n += 1
            if err == 0.0:
                h *= MAX_FACTOR
            else:
                h *= min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * err ** -0.2))
            if abs(w) > escape_r:
                status = ESCAPED
                break
        else:
            h *= max(MIN_FACTOR, SAFETY * err ** -0.2)
            if h < 1e-14 * max(1.0, abs(s)):
                status = STEP_UNDERFLOW
                break
    if status == BUFFER_FULL and s >= s_end:
        status = DONE
    return n, status, s, w, h
