"""Semigroup flows dw/ds = -e^{i psi} f(w), w(0) = z.

psi = 0 is the ordinary Cauchy problem in real time; psi != 0 follows the
complex-time ray t = s e^{i psi}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from ._tableau import DONE, ESCAPED, STEP_UNDERFLOW
from .classes import generator_test
from .errors import DomainError, EscapeError, StepLimitError
from .report import VerificationReport


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 1_000_000
    escape_radius: float = 1.0 - 1e-12
    max_step: float = math.inf
    n_out: int = 64
    chunk: int = 1024

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainError("tolerances must be positive")
        if not 0 < self.escape_radius < 1:
            raise DomainError("escape_radius must lie in (0, 1)")
        if not self.max_step > 0:
            raise DomainError("max_step must be positive")
        if self.n_out < 2:
            raise DomainError("n_out must be >= 2")

    def tightened(self, factor=10.0):
        return replace(self, rel_tol=self.rel_tol / factor, abs_tol=self.abs_tol / factor)


DEFAULT_CONFIG = IntegratorConfig()


def _hermite(s, ns, nw, ndw, nd2w):
    """Quintic Hermite interpolant through values, first and second derivatives."""
    s = np.asarray(s, dtype=float)
    i = np.clip(np.searchsorted(ns, s, side="right") - 1, 0, len(ns) - 2)
    h = ns[i + 1] - ns[i]
    t = (s - ns[i]) / h
    t2 = t * t
    t3 = t2 * t
    t4 = t3 * t
    t5 = t4 * t
    return ((1 - 10 * t3 + 15 * t4 - 6 * t5) * nw[i]
            + (t - 6 * t3 + 8 * t4 - 3 * t5) * h * ndw[i]
            + 0.5 * (t2 - 3 * t3 + 3 * t4 - t5) * h * h * nd2w[i]
            + 0.5 * (t3 - 2 * t4 + t5) * h * h * nd2w[i + 1]
            + (-4 * t3 + 7 * t4 - 3 * t5) * h * ndw[i + 1]
            + (10 * t3 - 15 * t4 + 6 * t5) * nw[i + 1])


@dataclass
class FlowTrajectory:
    times: np.ndarray          # real ray parameter s
    points: np.ndarray
    ray_angle: float
    steps_taken: int
    accepted: bool
    node_s: np.ndarray = field(repr=False)
    node_w: np.ndarray = field(repr=False)
    node_dw: np.ndarray = field(repr=False)
    node_d2w: np.ndarray = field(repr=False)

    @property
    def complex_times(self):
        return self.times * np.exp(1j * self.ray_angle)

    @property
    def final(self):
        return complex(self.points[-1])

    def at(self, s):
        """Dense output between accepted steps."""
        s = np.asarray(s, dtype=float)
        if np.any(s < self.node_s[0]) or np.any(s > self.node_s[-1]):
            raise DomainError("requested time outside the integrated range")
        if len(self.node_s) == 1:
            return np.full(s.shape, self.node_w[0]) if s.ndim else complex(self.node_w[0])
        out = _hermite(s, self.node_s, self.node_w, self.node_dw, self.node_d2w)
        return complex(out) if out.ndim == 0 else out

    def to_csv(self):
        t = self.complex_times
        lines = ["s,t_re,t_im,w_re,w_im,w_abs"]
        for s, tt, w in zip(self.times, t, self.points):
            lines.append(",".join(format(float(v), ".17g") for v in
                                  (s, tt.real, tt.imag, w.real, w.imag, abs(w))))
        return "\n".join(lines) + "\n"


def _initial_step(rhs0, w0, cfg, span):
    sc = cfg.abs_tol + cfg.rel_tol * abs(w0)
    d0, d1 = abs(w0) / sc, abs(rhs0) / sc
    h = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    return min(h, span)


def flow(f, z0, t_end, psi=0.0, cfg=DEFAULT_CONFIG, check_psi=True):
    """Integrate the semigroup along the ray of angle psi up to s = t_end.

    Raises EscapeError when |w| passes cfg.escape_radius; the error carries
    the escape parameter and the partial trajectory.
    """
    z0 = complex(z0)
    if not abs(z0) < 1.0:
        raise DomainError(f"|z0| = {abs(z0)} is not inside the unit disk")
    if not t_end > 0:
        raise DomainError("t_end must be positive")
    if check_psi and not abs(psi) < math.pi / 2:
        raise DomainError(f"|psi| = {abs(psi)} must be < pi/2")
    alpha, mu = f.canonical()
    rot, weights = mu.conj_points, mu.weights
    spin = complex(math.cos(psi), math.sin(psi))
    rhs0 = -spin * z0 * complex(kernels.synth_p(alpha, rot, weights, np.array([z0]))[0])

    chunks_s, chunks_w, chunks_dw = [np.array([0.0])], [np.array([z0])], [np.array([rhs0])]
    s, w = 0.0, z0
    h = _initial_step(rhs0, z0, cfg, t_end)
    steps = 0
    while True:
        cap = min(cfg.chunk, cfg.max_steps - steps)
        if cap <= 0:
            raise StepLimitError(f"more than {cfg.max_steps} steps before s = {t_end}")
        out_s = np.empty(cap)
        out_w = np.empty(cap, dtype=np.complex128)
        out_dw = np.empty(cap, dtype=np.complex128)
        n, status, s, w, h = kernels.dopri_run(alpha, rot, weights, spin, w, s, float(t_end), h,
                                               cfg.rel_tol, cfg.abs_tol, cfg.escape_radius,
                                               cfg.max_step,
                                               out_s, out_w, out_dw)
        steps += n
        chunks_s.append(out_s[:n])
        chunks_w.append(out_w[:n])
        chunks_dw.append(out_dw[:n])
        if status == DONE:
            break
        if status == STEP_UNDERFLOW:
            raise StepLimitError(f"step size underflow at s = {s}")
        if status == ESCAPED:
            break
    ns, nw, ndw = (np.concatenate(chunks_s), np.concatenate(chunks_w),
                   np.concatenate(chunks_dw))
    # w'' = -spin f'(w) w'
    nd2w = -spin * kernels.synth_fprime(alpha, rot, weights, nw) * ndw
    nodes = (ns, nw, ndw, nd2w)

    if status == ESCAPED:
        s_esc = _escape_time(nodes, cfg.escape_radius)
        grid = np.linspace(0.0, s_esc, cfg.n_out)
        traj = FlowTrajectory(grid, _hermite(grid, *nodes), psi, steps, False, *nodes)
        raise EscapeError(f"trajectory from z0 = {z0} reached |w| = {cfg.escape_radius} "
                          f"at s = {s_esc:.12g}", s_esc, traj)

    grid = np.linspace(0.0, t_end, cfg.n_out)
    grid[-1] = t_end
    pts = _hermite(grid, *nodes) if len(ns) > 1 else np.full(grid.shape, z0)
    pts[-1] = nw[-1]
    return FlowTrajectory(grid, pts, psi, steps, True, *nodes)


def _escape_time(nodes, radius):
    ns, nw = nodes[0], nodes[1]
    if len(ns) < 2:
        return float(ns[-1])
    lo, hi = float(ns[-2]), float(ns[-1])
    if abs(nw[-2]) > radius:
        return lo
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if abs(_hermite(mid, *nodes)) > radius:
            hi = mid
        else:
            lo = mid
    return hi


def _endpoint(f, z, t, cfg):
    return complex(z) if t == 0 else flow(f, z, t, 0.0, cfg).final


def semigroup_law_check(f, z_grid, t, s, cfg=DEFAULT_CONFIG, require_generator=True):
    """max over z of |phi_{t+s}(z) - phi_t(phi_s(z))|."""
    if t < 0 or s < 0:
        raise DomainError("semigroup times must be nonnegative")
    if require_generator and not generator_test(f).passed:
        raise DomainError("f is not a generator (inf Re f(z)/z < 0)")
    err = 0.0
    for z in np.atleast_1d(z_grid):
        lhs = _endpoint(f, z, t + s, cfg)
        rhs = _endpoint(f, _endpoint(f, z, s, cfg), t, cfg)
        err = max(err, abs(lhs - rhs))
    return err


def squeezing_check(f, k, z_grid, t_grid, cfg=DEFAULT_CONFIG, tol=1e-8, schwarz_tol=1e-10):
    """|phi_t(z)| <= e^{-kt}|z| on the (z, t) grid, with the observed rate.

    The summary records the smallest observed rate -log(|phi_t(z)|/|z|)/t,
    which approaches the sharp ratio from above near the minimizer of
    Re f(z)/z.
    """
    if k < 0:
        raise DomainError("squeezing ratio must be >= 0")
    report = VerificationReport("squeezing", config={
        "k": k, "tol": tol, "schwarz_tol": schwarz_tol,
        "rel_tol": cfg.rel_tol, "abs_tol": cfg.abs_tol})
    rate_min, where = math.inf, None
    for iz, z in enumerate(np.atleast_1d(z_grid)):
        z = complex(z)
        for t in t_grid:
            traj = flow(f, z, t, 0.0, cfg)
            w = traj.final
            excess = abs(w) - math.exp(-k * t) * abs(z)
            params = {"z": z, "t": float(t)}
            report.add("squeezing", params, excess, tol, excess <= tol)
            grow = float(np.max(np.abs(traj.points)) - abs(z))
            report.add("schwarz", params, grow, schwarz_tol, grow <= schwarz_tol)
            if z != 0 and w != 0:
                rate = -math.log(abs(w) / abs(z)) / t
                if rate < rate_min:
                    rate_min, where = rate, {"z_index": iz, "z": z, "t": float(t)}
    report.summary["rate_min"] = rate_min
    report.summary["rate_min_at"] = where
    return report


def sector_rays(B, delta):
    if not 0 <= B < 1:
        raise DomainError("B must lie in [0, 1)")
    half = math.pi / 2 * (1.0 - B)
    if not 0 < delta < half:
        raise DomainError(f"delta must lie in (0, {half})")
    return (half - delta, -(half - delta))


def sector_extension_check(f, B, delta, z_grid, s_end=20.0, cfg=DEFAULT_CONFIG, psis=None):
    """Flow along the rays psi = +-(pi/2 (1 - B) - delta) and record escapes.

    ``psis`` overrides the rays, e.g. to probe directions outside any
    admissible sector; those rays are integrated without the |psi| < pi/2
    precondition.
    """
    rays = sector_rays(B, delta) if psis is None else tuple(float(p) for p in psis)
    report = VerificationReport("sector", config={
        "B": B, "delta": delta, "s_end": s_end, "rays": list(rays),
        "rel_tol": cfg.rel_tol, "abs_tol": cfg.abs_tol, "escape_radius": cfg.escape_radius})
    for psi in rays:
        for iz, z in enumerate(np.atleast_1d(z_grid)):
            params = {"psi": psi, "z_index": iz, "z": complex(z)}
            try:
                traj = flow(f, z, s_end, psi, cfg, check_psi=psis is None)
            except EscapeError as exc:
                report.add("stays_in_disk", params, exc.time, s_end, False,
                           note=f"escaped at s = {exc.time:.12g}")
            except StepLimitError as exc:
                report.add("stays_in_disk", params, float("nan"), s_end, False, note=str(exc))
            else:
                report.add("stays_in_disk", params, float(np.max(np.abs(traj.points))),
                           cfg.escape_radius, traj.accepted)
    return report
