"""Pure-numpy twins of the kernels in ``_loops``.

Grid kernels are broadcast over arrays. The integrator is a scalar Python
loop since a single trajectory has no vector dimension to exploit.
"""

import cmath
import math

import numpy as np

from ._tableau import (
    A21, A31, A32, A41, A42, A43, A51, A52, A53, A54, A61, A62, A63, A64, A65,
    B1, B3, B4, B5, B6, E1, E3, E4, E5, E6, E7,
    SAFETY, MIN_FACTOR, MAX_FACTOR,
    DONE, BUFFER_FULL, ESCAPED, STEP_UNDERFLOW,
    SERIES_RADIUS, SERIES_EPS, SERIES_MAX_TERMS,
)


def _series(z, order):
    total = np.zeros_like(z)
    zn = np.ones_like(z)
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
        if n > order and np.all(np.abs(term) < SERIES_EPS):
            break
        zn = zn * z
        n += 1
    return total


def h_array(z, order):
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty_like(z)
    small = np.abs(z) <= SERIES_RADIUS
    if small.any():
        out[small] = _series(z[small], order)
    big = ~small
    if big.any():
        zb = z[big]
        L = np.log(1.0 - zb)
        if order == 0:
            out[big] = -L / zb
        elif order == 1:
            out[big] = 1.0 / (zb * (1.0 - zb)) + L / zb**2
        else:
            out[big] = (
                -(1.0 - 2.0 * zb) / (zb**2 * (1.0 - zb) ** 2)
                - 1.0 / ((1.0 - zb) * zb**2)
                - 2.0 * L / zb**3
            )
    return out


def synth_p(alpha, rot, weights, z):
    u = np.multiply.outer(z, rot)
    h = h_array(u.ravel(), 0).reshape(u.shape)
    return 1.0 + 2.0 * (1.0 + alpha) * ((h - 1.0) @ weights)


def synth_fprime(alpha, rot, weights, z):
    u = np.multiply.outer(z, rot)
    flat = u.ravel()
    phi = 1.0 + 2.0 * (1.0 + alpha) * (h_array(flat, 0) - 1.0)
    dphi = 2.0 * (1.0 + alpha) * h_array(flat, 1)
    return ((phi + flat * dphi).reshape(u.shape)) @ weights


def winding(points, poly, chunk=256):
    points = np.asarray(points, dtype=np.complex128)
    nxt = np.roll(poly, -1)
    wn = np.empty(points.shape[0])
    dist = np.empty(points.shape[0])
    for lo in range(0, points.shape[0], chunk):
        p = points[lo:lo + chunk, None]
        a = poly[None, :] - p
        b = nxt[None, :] - p
        wn[lo:lo + chunk] = np.angle(b * a.conj()).sum(axis=1) / (2.0 * np.pi)
        e = (nxt - poly)[None, :]
        ee = np.abs(e) ** 2
        with np.errstate(invalid="ignore", divide="ignore"):
            t = np.where(ee > 0, -(a.real * e.real + a.imag * e.imag) / ee, 0.0)
        t = np.clip(t, 0.0, 1.0)
        dist[lo:lo + chunk] = np.abs(a + t * e).min(axis=1)
    return wn, dist


def fs_scan(c, thetas, ws):
    e1 = np.exp(-1j * thetas)
    e2 = e1 * e1
    w = ws[None, None, :]
    m1 = w * e1[:, None, None] + (1.0 - w) * e1[None, :, None]
    m2 = w * e2[:, None, None] + (1.0 - w) * e2[None, :, None]
    v = np.abs(m2 - c * m1 * m1)
    idx = int(np.argmax(v))
    i, j, k = np.unravel_index(idx, v.shape)
    return float(v.flat[idx]), int(i), int(j), int(k)


def _h0(z):
    if abs(z) <= SERIES_RADIUS:
        total, zn = 0j, 1.0 + 0j
        for n in range(SERIES_MAX_TERMS):
            term = zn / (n + 1)
            total += term
            if n > 0 and abs(term) < SERIES_EPS:
                break
            zn *= z
        return total
    return -cmath.log(1.0 - z) / z


def _rhs(alpha, rot, weights, spin, w):
    acc = 0j
    for r, wt in zip(rot, weights):
        acc += wt * (_h0(w * r) - 1.0)
    return -spin * w * (1.0 + 2.0 * (1.0 + alpha) * acc)


def dopri_run(alpha, rot, weights, spin, w0, s0, s_end, h, rtol, atol,
              escape_r, max_step, out_s, out_w, out_dw):
    rot = [complex(r) for r in rot]
    weights = [float(x) for x in weights]
    alpha = float(alpha)
    spin = complex(spin)
    f = lambda v: _rhs(alpha, rot, weights, spin, v)  # noqa: E731

    cap = out_s.shape[0]
    n = 0
    s, w = float(s0), complex(w0)
    k1 = f(w)
    status = BUFFER_FULL
    while n < cap:
        if s >= s_end:
            status = DONE
            break
        h = min(h, max_step)
        last = s + h >= s_end
        if last:
            h = s_end - s
        try:
            k2 = f(w + h * A21 * k1)
            k3 = f(w + h * (A31 * k1 + A32 * k2))
            k4 = f(w + h * (A41 * k1 + A42 * k2 + A43 * k3))
            k5 = f(w + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))
            k6 = f(w + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))
            w5 = w + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
            k7 = f(w5)
            errv = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7)
            err = abs(errv) / (atol + rtol * max(abs(w), abs(w5)))
        except (ValueError, ZeroDivisionError, OverflowError):
            err = math.inf
        if not math.isfinite(err):
            h *= MIN_FACTOR
            if h < 1e-14 * max(1.0, abs(s)):
                status = STEP_UNDERFLOW
                break
            continue
        if err <= 1.0:
            s = s_end if last else s + h
            w, k1 = w5, k7
            out_s[n], out_w[n], out_dw[n] = s, w, k7
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
