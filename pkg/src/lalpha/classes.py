"""Class-level analytics for L_alpha = {f in A : Re f'(z) >= -alpha}.

Infima over the disk are estimated on circles hugging the boundary (the
functionals are harmonic) and refined by golden-section search in the angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .corekit import check_alpha, varphi, varphi_coeff, varphi_deriv
from .errors import DomainError, MembershipError
from .geometry import containment
from .herglotz import Extremal, FunctionModel, Rotated, synth_eval
from .optimize import golden_max, golden_min
from .report import VerificationReport

LOG2 = math.log(2.0)


def alpha_star():
    """Largest alpha for which every member of L_alpha is a semigroup generator."""
    return (2.0 * LOG2 - 1.0) / (2.0 - 2.0 * LOG2)


ALPHA_STAR = alpha_star()


def K_closed(alpha):
    """Sharp lower bound of Re f(z)/z over L_alpha: phi_alpha(-1)."""
    alpha = check_alpha(alpha)
    return -(1.0 + 2.0 * alpha) + 2.0 * (1.0 + alpha) * LOG2


@dataclass(frozen=True)
class GridConfig:
    radii: tuple = (0.9, 0.99, 1.0 - 1e-4)
    n_theta: int = 4096
    refine_tol: float = 1e-10
    n_refine: int = 3


DEFAULT_GRID = GridConfig()


class Verdict(NamedTuple):
    passed: bool
    margin: float

    def __bool__(self):
        return self.passed


def _inf_on_circles(func, cfg=DEFAULT_GRID):
    """Estimate inf over the disk of a real function of z (array -> array).

    Samples every circle in ``cfg.radii``, then refines around the
    ``cfg.n_refine`` smallest samples on the outermost circle.
    """
    theta = 2.0 * np.pi * np.arange(cfg.n_theta) / cfg.n_theta
    ring = np.exp(1j * theta)
    r_out = max(cfg.radii)
    best = math.inf
    for r in cfg.radii:
        vals = func(r * ring)
        best = min(best, float(np.min(vals)))
        if r == r_out:
            outer = vals
    idx = np.argsort(outer, kind="stable")[: cfg.n_refine]
    step = 2.0 * np.pi / cfg.n_theta
    _, refined = golden_min(lambda t: func(r_out * np.exp(1j * t)),
                            theta[idx] - step, theta[idx] + step, tol=cfg.refine_tol)
    return min(best, float(np.min(refined)))


def inf_re_deriv(f: FunctionModel, cfg=DEFAULT_GRID):
    """Estimate inf_{z in D} Re f'(z)."""
    alpha, mu = f.canonical()
    rot, w = mu.conj_points, mu.weights
    return _inf_on_circles(lambda z: kernels.synth_fprime(alpha, rot, w, z).real, cfg)


def membership(f, alpha, tol=1e-6, cfg=DEFAULT_GRID):
    """Is f in L_alpha? margin = inf Re f' + alpha."""
    alpha = check_alpha(alpha)
    margin = inf_re_deriv(f, cfg) + alpha
    return Verdict(margin >= -tol, margin)


def K_numeric(alpha, cfg=DEFAULT_GRID):
    """inf Re phi_alpha over the disk, estimated on the sampling circles."""
    alpha = check_alpha(alpha)
    return _inf_on_circles(lambda z: np.real(varphi(alpha, z)), cfg)


def generator_test(f: FunctionModel, tol=1e-6, cfg=DEFAULT_GRID):
    """f(z)/z in the Caratheodory class (closed form): inf Re f(z)/z >= -tol."""
    alpha, mu = f.canonical()
    rot, w = mu.conj_points, mu.weights
    margin = _inf_on_circles(lambda z: kernels.synth_p(alpha, rot, w, z).real, cfg)
    return Verdict(margin >= -tol, margin)


@dataclass(frozen=True)
class ClassConstants:
    alpha: float
    K: float
    alpha_star: float
    B_normalized: float
    theta_argmax: float
    arg_sup: float


def _boundary_arg(alpha):
    return lambda t: np.angle(varphi(alpha, np.exp(1j * np.asarray(t))))


def B_numeric(alpha, n_grid=2048, tol=1e-10, edge=1e-6):
    """Maximize arg phi_alpha(e^{i theta}) over theta in [edge, pi - edge].

    Grid scan followed by golden-section refinement on the neighbouring
    cells. B_normalized = (2/pi) * arg_sup.
    """
    alpha = check_alpha(alpha)
    if alpha > ALPHA_STAR + 1e-12:
        raise DomainError(f"alpha = {alpha} exceeds alpha* = {ALPHA_STAR}; the image of "
                          "phi_alpha contains the origin and arg is not defined")
    arg = _boundary_arg(alpha)
    theta = np.linspace(edge, np.pi - edge, n_grid)
    vals = arg(theta)
    i = int(np.argmax(vals))
    lo, hi = theta[max(i - 1, 0)], theta[min(i + 1, n_grid - 1)]
    t_ref, v_ref = golden_max(arg, lo, hi, tol=tol)
    t_ref, v_ref = float(t_ref), float(v_ref)
    if vals[i] >= v_ref:
        t_ref, v_ref = float(theta[i]), float(vals[i])
    return ClassConstants(alpha=alpha, K=K_closed(alpha), alpha_star=ALPHA_STAR,
                          B_normalized=2.0 / np.pi * v_ref, theta_argmax=t_ref, arg_sup=v_ref)


# --- Fekete-Szego ----------------------------------------------------------

class FSComparison(NamedTuple):
    direct: float
    paper_claim: float


def fs_varphi(alpha, lam):
    """|rho_3 - lam rho_2^2| from the coefficients, next to the closed form
    (1+alpha)/18 |9 - 8 lam| quoted for it. They agree only at alpha = 0."""
    alpha = check_alpha(alpha)
    lam = complex(lam)
    direct = abs(varphi_coeff(alpha, 3) - lam * varphi_coeff(alpha, 2) ** 2)
    claim = (1.0 + alpha) / 18.0 * abs(9.0 - 8.0 * lam)
    return FSComparison(direct, claim)


def fs_paper_bound(alpha, lam):
    return 2.0 * (1.0 + alpha) / 3.0 * max(1.0, abs(6.0 * complex(lam) - 1.0))


def fs_analytic_candidate(alpha, lam):
    """Sharp bound from a_2 = (1+a) m_1, a_3 = 2(1+a)/3 m_2 and the classical
    estimate max |m_2 - c m_1^2| = max(1, |c - 1|) over probability measures."""
    return 2.0 * (1.0 + alpha) / 3.0 * max(1.0, abs(1.5 * complex(lam) * (1.0 + alpha) - 1.0))


@dataclass(frozen=True)
class FSOracleResult:
    alpha: float
    lam: complex
    value: float
    paper_bound: float
    analytic_candidate: float
    atoms: tuple  # (theta1, theta2, weight of theta1)
    samples: int
    paper_bound_attained: bool = field(default=False)


def fs_class_oracle(alpha, lam, samples=64, sweeps=4, attain_tol=1e-3):
    """Brute-force sup of |a_3 - lam a_2^2| over L_alpha.

    The functional only sees the first two moments, so two-atom measures
    suffice. Scans a samples^3 grid over (theta1, theta2, w), then refines
    the best cell by cyclic golden-section sweeps.
    """
    alpha = check_alpha(alpha)
    lam = complex(lam)
    scale = 2.0 * (1.0 + alpha) / 3.0
    c = 1.5 * lam * (1.0 + alpha)
    thetas = 2.0 * np.pi * np.arange(samples) / samples
    ws = np.linspace(0.0, 1.0, samples)
    best, i, j, k = kernels.fs_scan(c, thetas, ws)

    def value(t1, t2, w):
        e1, e2 = np.exp(-1j * t1), np.exp(-1j * t2)
        m1 = w * e1 + (1.0 - w) * e2
        m2 = w * e1 * e1 + (1.0 - w) * e2 * e2
        return np.abs(m2 - c * m1 * m1)

    x = [thetas[i], thetas[j], ws[k]]
    dt, dw = 2.0 * np.pi / samples, 1.0 / max(samples - 1, 1)
    lows = [x[0] - dt, x[1] - dt, max(0.0, x[2] - dw)]
    highs = [x[0] + dt, x[1] + dt, min(1.0, x[2] + dw)]
    for _ in range(sweeps):
        for d in range(3):
            def along(t, d=d):
                y = [np.full_like(t, v) for v in x]
                y[d] = t
                return value(*y)
            xd, vd = golden_max(along, lows[d], highs[d], tol=1e-12)
            if float(vd) >= float(value(*x)):
                x[d] = float(xd)
    refined = max(best, float(value(*x)))
    val = scale * refined
    bound = fs_paper_bound(alpha, lam)
    return FSOracleResult(alpha=alpha, lam=lam, value=val, paper_bound=bound,
                          analytic_candidate=fs_analytic_candidate(alpha, lam),
                          atoms=(float(np.mod(x[0], 2 * np.pi)), float(np.mod(x[1], 2 * np.pi)),
                                 float(x[2])),
                          samples=samples,
                          paper_bound_attained=abs(bound - val) <= attain_tol)


# --- geometry of phi_alpha -------------------------------------------------

def _ring(n):
    return np.exp(2j * np.pi * np.arange(n) / n)


def subordination_check(alpha, beta, n=4096, r_inner=0.999, r_outer=0.999999):
    """phi_alpha(D) inside phi_beta(D), tested on sampled boundary curves.

    margin is the smallest distance of an inner-curve sample from the outer
    curve (negative when a sample lies outside).
    """
    alpha, beta = check_alpha(alpha), check_alpha(beta)
    if alpha <= -1.0 or alpha >= beta:
        raise DomainError("need -1 < alpha < beta")
    ring = _ring(n)
    inner = varphi(alpha, r_inner * ring)
    outer = varphi(beta, r_outer * ring)
    inside, signed = containment(inner, outer)
    return Verdict(bool(np.all(inside)), float(np.min(signed)))


class ConvexityResult(NamedTuple):
    min_value: float
    theta_at_min: float
    convex: bool


def convexity_check(alpha, n=4096, r=0.999, tol=1e-6):
    """min over |z| = r of Re(1 + z phi''(z) / phi'(z))."""
    alpha = check_alpha(alpha)
    theta = 2.0 * np.pi * np.arange(n) / n
    z = r * np.exp(1j * theta)
    d1 = varphi_deriv(alpha, z, 1)
    zero = np.flatnonzero(np.abs(d1) == 0.0)
    if zero.size:
        raise DomainError(f"phi_alpha' vanishes at theta = {theta[zero[0]]:.6g}, r = {r}")
    vals = np.real(1.0 + z * varphi_deriv(alpha, z, 2) / d1)
    i = int(np.argmin(vals))
    return ConvexityResult(float(vals[i]), float(theta[i]), bool(vals[i] >= -tol))


# --- extremality and filtration --------------------------------------------

@dataclass(frozen=True)
class ExtremalityReport:
    alpha: float
    lambda_grid_size: int
    r_grid: tuple
    worst_margin: float
    verdict: bool
    worst_location: dict


def _circle_min_re(values_fn, lams, r, n_theta, tol):
    """min over |z| = r of Re(lam * g(z)) for each lam, grid + golden refinement."""
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    g = values_fn(r * np.exp(1j * theta))
    re = np.real(np.multiply.outer(lams, g))
    i = np.argmin(re, axis=1)
    grid_min = re[np.arange(lams.size), i]
    step = 2.0 * np.pi / n_theta

    def along(t):
        return np.real(lams * values_fn(r * np.exp(1j * t)))

    _, refined = golden_min(along, theta[i] - step, theta[i] + step, tol=tol)
    return np.minimum(grid_min, refined)


def totally_extremal_check(alpha, candidates, lambda_count=64,
                           r_grid=(0.25, 0.5, 0.75, 0.99), n_theta=4096,
                           tol=1e-6, membership_tol=1e-6):
    """Compare min_{|z|=r} Re(lam f(z)/z) of each candidate with f_alpha.

    |lam| = 1 suffices since positive scaling acts on both sides alike.
    """
    alpha = check_alpha(alpha)
    failures = []
    for idx, f in enumerate(candidates):
        v = membership(f, alpha, tol=membership_tol)
        if not v.passed:
            failures.append((idx, f.describe(), v.margin))
    if failures:
        raise MembershipError(f"{len(failures)} candidate(s) are not in L_{alpha:g}", failures)
    lams = np.exp(2j * np.pi * np.arange(lambda_count) / lambda_count)
    ext = Extremal(alpha)
    worst = math.inf
    where = {}
    for r in r_grid:
        ref = _circle_min_re(ext.over_z, lams, r, n_theta, 1e-12)
        for idx, f in enumerate(candidates):
            got = _circle_min_re(f.over_z, lams, r, n_theta, 1e-12)
            margins = got - ref
            k = int(np.argmin(margins))
            if margins[k] < worst:
                worst = float(margins[k])
                where = {"r": float(r), "lambda_index": k, "candidate": idx}
    return ExtremalityReport(alpha, lambda_count, tuple(float(r) for r in r_grid),
                             worst, worst >= -tol, where)


def strictness_check(alpha_grid, delta=1e-3, rotations=(0.0, 1.0, 2.0, 4.0),
                     tol=1e-6, margin_tol=5e-4):
    """f_alpha and its rotations lie in L_alpha but in no L_s with s < alpha."""
    report = VerificationReport("strictness", config={
        "delta": delta, "membership_tol": tol, "infimum_tol": margin_tol,
        "rotations": list(rotations)})
    for a in alpha_grid:
        a = check_alpha(a)
        if a > ALPHA_STAR + 1e-12:
            raise DomainError(f"alpha = {a} outside [-1, alpha*]")
        models = [("extremal", Extremal(a))] + [
            (f"rotated({t:g})", Rotated(t, Extremal(a))) for t in rotations]
        for name, f in models:
            inf = inf_re_deriv(f)
            params = {"alpha": a, "model": name}
            report.add("member", params, inf + a, tol, inf + a >= -tol)
            report.add("infimum_sharp", params, abs(inf + a), margin_tol,
                       abs(inf + a) < margin_tol)
            lower = a - delta
            if lower >= -1.0:
                m = inf + lower
                report.add("not_member_below", dict(params, lower=lower), m, tol, m < -tol)
            else:
                report.add("not_member_below", dict(params, lower=lower), 0.0, tol, True,
                           note="vacuous: no class below L_-1")
    return report


def Lstar_representation_check(z_grid, mu):
    """Largest deviation between the synthesized member of L_{alpha*} and the
    normalized 2F1 representation (-log 2 + int 2F1 d mu) / (1 - log 2)."""
    z = np.atleast_1d(np.asarray(z_grid, dtype=np.complex128))
    a = ALPHA_STAR
    nz = z != 0
    lhs = np.empty_like(z)
    lhs[nz] = synth_eval(a, mu, z[nz]) / z[nz]
    lhs[~nz] = 1.0  # f(z)/z -> f'(0) = 1
    u = np.multiply.outer(z, mu.conj_points)
    h = kernels.h_array(u.ravel(), 0).reshape(u.shape) @ mu.weights
    rhs = (-LOG2 + h) / (1.0 - LOG2)
    return float(np.max(np.abs(lhs - rhs)))


def constants_table(alphas):
    """Rows (alpha, K_closed, K_numeric, B_normalized, theta_argmax, generator margin)."""
    rows = []
    for a in alphas:
        cc = B_numeric(a)
        rows.append({
            "alpha": float(a),
            "K_closed": cc.K,
            "K_numeric": K_numeric(a),
            "B_normalized": cc.B_normalized,
            "theta_argmax": cc.theta_argmax,
            "arg_sup": cc.arg_sup,
            "generator_margin": generator_test(Extremal(a)).margin,
        })
    return rows
