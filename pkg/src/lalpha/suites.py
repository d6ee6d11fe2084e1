"""Verification suites behind ``lalpha verify <suite>``.

Each suite returns a VerificationReport whose config embeds every tolerance
and grid it used.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import classes as cl
from . import dynamics as dyn
from .corekit import cauchy_coeffs, check_alpha, varphi_coeff
from .errors import DomainError, EscapeError
from .herglotz import (CircleMeasure, Extremal, Identity, Synthesized, random_measure,
                       synth_coeff)
from .report import VerificationReport

DEFAULT_TOLERANCES = {
    "membership": 1e-6,
    "infimum": 5e-4,
    "coeff": 1e-9,
    "bound": 1e-12,
    "fs": 1e-3,
    "convexity": 1e-6,
    "extremal": 1e-6,
    "semigroup": 1e-8,
    "squeeze": 1e-8,
    "schwarz": 1e-10,
    "lstar": 1e-10,
    "fixture": 1e-9,
    "rel": 1e-10,
    "abs": 1e-12,
}

SUITES = ("membership", "coeffs", "fekete_szego", "subordination", "convexity", "extremal",
          "strictness", "semigroup", "squeezing", "sector", "lstar")

SAMPLE_ALPHAS = (-0.5, 0.0, 0.3, cl.ALPHA_STAR)
CAUCHY_RADIUS = 0.7


def alpha_grid(n=25):
    return np.linspace(-1.0, cl.ALPHA_STAR, n)


def disk_grid(radii, n_angles):
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    return np.array([r * np.exp(1j * a) for r in radii for a in angles])


Z32 = disk_grid((0.3, 0.6, 0.9, 0.99), 8)
SQUEEZE_Z = np.array([r * np.exp(1j * a) for r in (0.5, 0.9, 0.99, 0.999)
                      for a in (0.0, np.pi / 2, 3 * np.pi / 4, np.pi)])
SQUEEZE_T = (0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0)
LSTAR_Z = disk_grid(np.linspace(0.0, 0.95, 10), 10)


def sample_measure(seed, max_atoms=5):
    """Measure for seed s with 1 + (s - 1) % max_atoms atoms."""
    return random_measure(seed, 1 + (seed - 1) % max_atoms)


def random_candidates(alpha, count, seed0=1):
    return [Synthesized(alpha, sample_measure(seed0 + i)) for i in range(count)]


@dataclass
class SuiteOptions:
    alpha: float | None = None
    seed: int = 0
    tol: dict = field(default_factory=dict)

    def t(self, key):
        return self.tol.get(key, DEFAULT_TOLERANCES[key])

    def integrator(self):
        return dyn.IntegratorConfig(rel_tol=self.t("rel"), abs_tol=self.t("abs"))

    def alphas(self, default=SAMPLE_ALPHAS):
        return default if self.alpha is None else (check_alpha(self.alpha),)


def _generator_alpha(opts, default):
    a = default if opts.alpha is None else check_alpha(opts.alpha)
    if a > cl.ALPHA_STAR + 1e-12:
        raise DomainError(f"alpha = {a} exceeds alpha* = {cl.ALPHA_STAR}; L_alpha is not a "
                          "class of generators")
    return a


def run_membership(opts):
    a = 0.3 if opts.alpha is None else check_alpha(opts.alpha)
    tol = opts.t("membership")
    rep = VerificationReport("membership", config={"alpha": a, "tol": tol,
                                                   "infimum_tol": opts.t("infimum")})
    v = cl.membership(Extremal(a), a, tol)
    rep.add("extremal_member", {"alpha": a}, v.margin, tol, v.passed)
    rep.add("extremal_infimum", {"alpha": a}, abs(v.margin), opts.t("infimum"),
            abs(v.margin) < opts.t("infimum"))
    if a - 1e-3 >= -1.0:
        v = cl.membership(Extremal(a), a - 1e-3, tol)
        rep.add("extremal_not_member_below", {"alpha": a, "class": a - 1e-3}, v.margin, tol,
                not v.passed)
    v = cl.membership(Identity(), a, tol)
    rep.add("identity_member", {"alpha": a}, v.margin, tol, v.passed)
    for i in range(10):
        seed = opts.seed + 1 + i
        v = cl.membership(Synthesized(a, sample_measure(seed)), a, tol)
        rep.add("synthesized_member", {"alpha": a, "seed": seed}, v.margin, tol, v.passed)
    kn, kc = cl.K_numeric(a), cl.K_closed(a)
    rep.add("K_numeric_vs_closed", {"alpha": a}, abs(kn - kc), opts.t("infimum"),
            abs(kn - kc) < opts.t("infimum"))
    g = cl.generator_test(Extremal(a))
    expect = a <= cl.ALPHA_STAR
    rep.add("generator_iff_alpha_le_alpha_star", {"alpha": a}, g.margin, tol,
            g.passed == expect)
    return rep


def run_coeffs(opts):
    tol, btol = opts.t("coeff"), opts.t("bound")
    rep = VerificationReport("coeffs", config={"tol": tol, "bound_tol": btol,
                                               "radius": CAUCHY_RADIUS, "n_max": 30})
    for a in opts.alphas():
        ts = cauchy_coeffs(Extremal(a), 30, CAUCHY_RADIUS)
        exact = np.array([varphi_coeff(a, n) for n in range(31)])
        err = float(np.max(np.abs(ts.coefficients - exact)))
        rep.add("cauchy_vs_closed_form", {"alpha": a}, err, tol, err < tol)
        worst = -math.inf
        for seed in range(opts.seed + 1, opts.seed + 201):
            mu = sample_measure(seed)
            for k in range(2, 31):
                worst = max(worst, abs(synth_coeff(a, mu, k)) - 2.0 * (1.0 + a) / k)
        rep.add("coefficient_bound", {"alpha": a, "measures": 200, "k_max": 30}, worst, btol,
                worst <= btol)
        pm = CircleMeasure.point_mass()
        gap = max(abs(abs(synth_coeff(a, pm, k)) - 2.0 * (1.0 + a) / k) for k in range(2, 31))
        rep.add("bound_attained_by_point_mass", {"alpha": a}, gap, btol, gap <= btol)
        for seed in range(opts.seed + 1, opts.seed + 6):
            mu = sample_measure(seed)
            ts = cauchy_coeffs(Synthesized(a, mu), 19, CAUCHY_RADIUS)
            ref = np.array([1.0] + [synth_coeff(a, mu, k) for k in range(2, 21)])
            err = float(np.max(np.abs(ts.coefficients - ref)))
            rep.add("cauchy_vs_synth_coeff", {"alpha": a, "seed": seed}, err, tol, err < tol)
    return rep


def run_fekete_szego(opts, lambdas=(0.0, 1.0, 0.5, 1j, -1.0, 2.0)):
    a = 0.0 if opts.alpha is None else check_alpha(opts.alpha)
    tol = opts.t("fs")
    rep = VerificationReport("fekete_szego", config={"alpha": a, "tol": tol, "samples": 64})
    flags = []
    for lam in lambdas:
        res = cl.fs_class_oracle(a, lam)
        p = {"alpha": a, "lambda": complex(lam)}
        gap = abs(res.value - res.analytic_candidate)
        rep.add("oracle_matches_analytic_candidate", p, gap, tol, gap <= tol,
                note=f"oracle={res.value:.12g} candidate={res.analytic_candidate:.12g}")
        excess = res.value - max(res.paper_bound, res.analytic_candidate)
        rep.add("oracle_within_envelope", p, excess, tol, excess <= tol)
        if not res.paper_bound_attained:
            flags.append({"lambda": complex(lam), "oracle": res.value,
                          "paper_bound": res.paper_bound,
                          "status": "stated bound not attained"})
        d = cl.fs_varphi(a, lam)
        rep.summary.setdefault("phi_functional", []).append(
            {"lambda": complex(lam), "direct": d.direct, "paper_claim": d.paper_claim})
    rep.summary["flags"] = flags
    return rep


def run_subordination(opts):
    alphas = SAMPLE_ALPHAS
    rep = VerificationReport("subordination", config={"alphas": list(alphas), "n": 4096,
                                                      "r_inner": 0.999, "r_outer": 0.999999})
    for i, a in enumerate(alphas):
        for b in alphas[i + 1:]:
            v = cl.subordination_check(a, b)
            rep.add("phi_alpha_subordinate_phi_beta", {"alpha": a, "beta": b}, v.margin, 0.0,
                    v.passed)
    return rep


def run_convexity(opts):
    tol = opts.t("convexity")
    rep = VerificationReport("convexity", config={"n": 4096, "r": 0.999, "tol": tol})
    for a in opts.alphas():
        c = cl.convexity_check(a, tol=tol)
        rep.add("convex", {"alpha": a, "theta_at_min": c.theta_at_min}, c.min_value, tol,
                c.convex)
    return rep


def run_extremal(opts, n_candidates=50, lambda_count=64, r_grid=(0.25, 0.5, 0.75, 0.99)):
    a = 0.3 if opts.alpha is None else check_alpha(opts.alpha)
    tol = opts.t("extremal")
    rep = VerificationReport("extremal", config={
        "alpha": a, "tol": tol, "candidates": n_candidates, "lambda_count": lambda_count,
        "r_grid": list(r_grid)})
    cands = random_candidates(a, n_candidates, opts.seed + 1)
    er = cl.totally_extremal_check(a, cands, lambda_count, r_grid, tol=tol)
    rep.add("totally_extremal_random", {"alpha": a}, er.worst_margin, tol, er.verdict)
    er = cl.totally_extremal_check(a, [Extremal(a)], lambda_count, r_grid, tol=tol)
    rep.add("self_comparison_zero", {"alpha": a}, er.worst_margin, 0.0, er.worst_margin == 0.0)
    er = cl.totally_extremal_check(a, [Identity()], lambda_count, r_grid, tol=tol)
    rep.add("identity_strictly_interior", {"alpha": a}, er.worst_margin, 0.0,
            er.worst_margin > 0.0 or a == -1.0)
    return rep


def run_strictness(opts):
    grid = alpha_grid() if opts.alpha is None else [_generator_alpha(opts, 0.0)]
    return cl.strictness_check(grid, tol=opts.t("membership"), margin_tol=opts.t("infimum"))


def run_semigroup(opts):
    a = _generator_alpha(opts, 0.0)
    cfg = opts.integrator()
    tol = opts.t("semigroup")
    rep = VerificationReport("semigroup", config={"alpha": a, "tol": tol, "t": 0.3, "s": 0.7,
                                                  "rel_tol": cfg.rel_tol, "abs_tol": cfg.abs_tol})
    f = Extremal(a)
    err = dyn.semigroup_law_check(f, Z32, 0.3, 0.7, cfg)
    rep.add("semigroup_law", {"alpha": a, "points": len(Z32)}, err, tol, err < tol)
    err0 = dyn.semigroup_law_check(f, Z32[:4], 0.0, 0.7, cfg)
    rep.add("identity_at_zero", {"alpha": a}, err0, 0.0, err0 == 0.0)
    drift = max(abs(dyn.flow(f, z, 1.0, 0.0, cfg).final
                    - dyn.flow(f, z, 1.0, 0.0, cfg.tightened()).final) for z in Z32)
    rep.add("tolerance_tightening_stable", {"alpha": a}, drift, tol, drift < tol)
    return rep


def run_squeezing(opts):
    a = _generator_alpha(opts, 0.0)
    cfg = opts.integrator()
    f = Extremal(a)
    k = cl.K_closed(a)
    tol = opts.t("squeeze")
    rep = dyn.squeezing_check(f, k, SQUEEZE_Z, SQUEEZE_T, cfg, tol, opts.t("schwarz"))
    rep.config["alpha"] = a
    if k + 0.05 > 0:
        sharp = dyn.squeezing_check(f, k + 0.05, SQUEEZE_Z, SQUEEZE_T, cfg, tol)
        n_fail = sum(1 for c in sharp.failures() if c.claim == "squeezing")
        rep.add("sharpness_k_plus_0.05_fails", {"alpha": a, "k": k + 0.05}, n_fail, 1,
                n_fail >= 1)
    return rep


def load_constants_fixture():
    text = resources.files("lalpha").joinpath("fixtures/constants.csv").read_text()
    return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(text.splitlines())]


def run_sector(opts, delta=0.05, s_end=20.0):
    a = _generator_alpha(opts, 0.0)
    cfg = opts.integrator()
    B = cl.B_numeric(a).B_normalized
    rep = dyn.sector_extension_check(Extremal(a), B, delta, Z32, s_end, cfg)
    rep.config["alpha"] = a
    rep.summary["B_normalized"] = B
    ftol = opts.t("fixture")
    rows = load_constants_fixture()
    prev = -math.inf
    for row in rows:
        cc = cl.B_numeric(row["alpha"])
        rep.add("B_matches_fixture", {"alpha": row["alpha"]},
                abs(cc.B_normalized - row["B_normalized"]), ftol,
                abs(cc.B_normalized - row["B_normalized"]) <= ftol)
        rep.add("B_monotone", {"alpha": row["alpha"]}, cc.B_normalized - prev, -1e-6,
                cc.B_normalized >= prev - 1e-6)
        prev = cc.B_normalized
    b_lo = cl.B_numeric(-1.0).B_normalized
    rep.add("B_at_minus_one_zero", {"alpha": -1.0}, b_lo, 1e-15, abs(b_lo) <= 1e-15)
    coarse, fine = cl.B_numeric(a), cl.B_numeric(a, n_grid=8 * 2048)
    change = abs(fine.B_normalized - coarse.B_normalized)
    rep.add("maximizer_stable_under_8x_refinement", {"alpha": a, "n_grid": 2048}, change,
            1e-6, change < 1e-6, note=f"theta {coarse.theta_argmax:.12g} -> "
                                      f"{fine.theta_argmax:.12g}")
    rep.config["fixture_tol"] = ftol
    return rep


def run_lstar(opts):
    tol = opts.t("lstar")
    rep = VerificationReport("lstar", config={"tol": tol, "points": len(LSTAR_Z)})
    for seed in range(opts.seed + 1, opts.seed + 6):
        mu = random_measure(seed, 1 + seed % 5)
        err = cl.Lstar_representation_check(LSTAR_Z, mu)
        rep.add("lstar_representation", {"seed": seed}, err, tol, err < tol)
    return rep


RUNNERS = {
    "membership": run_membership,
    "coeffs": run_coeffs,
    "fekete_szego": run_fekete_szego,
    "subordination": run_subordination,
    "convexity": run_convexity,
    "extremal": run_extremal,
    "strictness": run_strictness,
    "semigroup": run_semigroup,
    "squeezing": run_squeezing,
    "sector": run_sector,
    "lstar": run_lstar,
}


def run_suite(name, opts=None):
    opts = opts or SuiteOptions()
    try:
        runner = RUNNERS[name]
    except KeyError:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return runner(opts)


__all__ = ["run_suite", "SuiteOptions", "SUITES", "DEFAULT_TOLERANCES", "EscapeError"]
