import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from lalpha import (DomainError, EscapeError, Extremal, Identity, Synthesized,
                    random_measure)
from lalpha import classes as cl
from lalpha import dynamics as dyn
from lalpha.suites import SQUEEZE_T, SQUEEZE_Z, Z32

A_STAR = cl.ALPHA_STAR


def scipy_flow(f, z0, t, psi=0.0):
    """Independent integrator: DOP853 on the real 2-vector (Re w, Im w)."""
    spin = cmath.exp(1j * psi)

    def rhs(_, y):
        w = complex(y[0], y[1])
        d = -spin * f(w)
        return [d.real, d.imag]

    sol = solve_ivp(rhs, (0.0, t), [z0.real, z0.imag], method="DOP853",
                    rtol=1e-12, atol=1e-14)
    return complex(sol.y[0, -1], sol.y[1, -1])


# --- flow -----------------------------------------------------------------------------

def test_identity_real_time():
    traj = dyn.flow(Identity(), 0.5, 1.0)
    assert abs(traj.final - 0.5 * math.exp(-1)) < 1e-10
    assert traj.final.real == pytest.approx(0.1839397, abs=1e-7)
    assert traj.accepted and len(traj.times) >= 64
    assert traj.times[0] == 0 and traj.points[0] == 0.5
    assert np.all(np.diff(traj.times) > 0)


def test_identity_ray():
    traj = dyn.flow(Identity(), 0.5, 1.0, psi=math.pi / 4)
    want = 0.5 * cmath.exp(-cmath.exp(1j * math.pi / 4))
    assert abs(traj.final - want) < 1e-11
    assert abs(abs(traj.final) - 0.5 * math.exp(-math.sqrt(2) / 2)) < 1e-11
    assert traj.complex_times[-1] == pytest.approx(cmath.exp(1j * math.pi / 4))


@pytest.mark.parametrize("z0", [0.9, -0.95 + 0.1j, 0.3j, 0.99 * cmath.exp(2.5j)])
@pytest.mark.parametrize("psi", [0.0, 0.4, -0.5])
def test_flow_matches_scipy(z0, psi):
    f = Synthesized(0.2, random_measure(4, 3))
    got = dyn.flow(f, z0, 3.0, psi).final
    assert abs(got - scipy_flow(f, z0, 3.0, psi)) < 1e-9


def test_escape_for_non_generator():
    f = Extremal(A_STAR + 0.05)
    starts = 0.999 * np.exp(2j * np.pi * np.arange(64) / 64)
    escapes = []
    for z in starts:
        try:
            dyn.flow(f, z, 50.0)
        except EscapeError as exc:
            escapes.append(exc)
    assert escapes
    exc = escapes[0]
    assert exc.time > 0 and not exc.trajectory.accepted
    assert abs(abs(exc.trajectory.points[-1]) - (1 - 1e-12)) < 1e-9


@pytest.mark.parametrize("kw", [dict(z0=1.0, t_end=1), dict(z0=0.5, t_end=0),
                                dict(z0=0.5, t_end=1, psi=math.pi / 2)])
def test_flow_preconditions(kw):
    with pytest.raises(DomainError):
        dyn.flow(Extremal(0.0), **kw)


def test_config_validation():
    with pytest.raises(DomainError):
        dyn.IntegratorConfig(rel_tol=0)
    with pytest.raises(DomainError):
        dyn.IntegratorConfig(escape_radius=1.0)
    assert dyn.IntegratorConfig().tightened().rel_tol == pytest.approx(1e-11)


def test_dense_output_agrees_with_fresh_integration():
    f = Extremal(0.0)
    traj = dyn.flow(f, 0.9 + 0.2j, 5.0)
    for s in (0.37, 1.234, 4.9):
        assert abs(traj.at(s) - dyn.flow(f, 0.9 + 0.2j, s).final) < 1e-9


@pytest.mark.parametrize("psi", [0.0, 0.5])
def test_evolution_residual(psi):
    f = Synthesized(0.1, random_measure(8, 4))
    traj = dyn.flow(f, 0.95 * cmath.exp(1j), 4.0, psi)
    spin = cmath.exp(1j * psi)
    h = 1e-4
    s = np.linspace(h, 4.0 - h, 200)
    dw = (traj.at(s + h) - traj.at(s - h)) / (2 * h)
    fw = f(traj.at(s))
    assert np.all(np.abs(dw + spin * fw) < 1e-6 * (1 + np.abs(fw)))


def test_step_tightening_consistency():
    f = Extremal(0.0)
    cfg = dyn.IntegratorConfig()
    for z in Z32:
        a = dyn.flow(f, z, 2.0, 0.0, cfg).final
        b = dyn.flow(f, z, 2.0, 0.0, cfg.tightened()).final
        assert abs(a - b) < 1e-8


def test_csv_export():
    text = dyn.flow(Identity(), 0.5, 1.0).to_csv()
    lines = text.splitlines()
    assert lines[0] == "s,t_re,t_im,w_re,w_im,w_abs"
    assert len(lines) == 65
    last = [float(x) for x in lines[-1].split(",")]
    assert last[0] == 1.0 and abs(last[5] - 0.183940) < 1e-6


# --- semigroup law ----------------------------------------------------------------

def test_semigroup_identity():
    assert dyn.semigroup_law_check(Identity(), [0.5, -0.3j], 0.5, 0.5) < 1e-12


def test_semigroup_extremal():
    assert dyn.semigroup_law_check(Extremal(0.0), Z32, 0.3, 0.7) < 1e-8


def test_semigroup_zero_time():
    assert dyn.semigroup_law_check(Extremal(0.0), Z32[:5], 0.0, 0.4) == 0


def test_semigroup_requires_generator():
    with pytest.raises(DomainError):
        dyn.semigroup_law_check(Extremal(1.0), [0.5], 0.1, 0.1)


def test_semigroup_error_decreases_with_tolerance():
    f = Extremal(0.0)
    z = Z32[::4]
    loose = dyn.IntegratorConfig(rel_tol=1e-6, abs_tol=1e-8)
    e_loose = dyn.semigroup_law_check(f, z, 0.3, 0.7, loose)
    e_tight = dyn.semigroup_law_check(f, z, 0.3, 0.7, loose.tightened(100))
    assert e_tight < e_loose


@given(st.floats(0.0, 0.6), st.integers(1, 300), st.floats(0.01, 2), st.floats(0.01, 2))
def test_semigroup_property(a, seed, t, s):
    f = Synthesized(a, random_measure(seed, 1 + seed % 4))
    z = np.array([0.5, 0.9j, -0.8 + 0.1j])
    assert dyn.semigroup_law_check(f, z, t, s) < 1e-8


# --- squeezing -----------------------------------------------------------------------

def test_squeezing_identity():
    rep = dyn.squeezing_check(Identity(), 1.0, [0.5, 0.9j], [0.5, 2.0])
    assert rep.passed and rep.summary["rate_min"] == pytest.approx(1.0, abs=1e-9)


def test_squeezing_sharp_constant():
    f = Extremal(0.0)
    k = cl.K_closed(0.0)
    rep = dyn.squeezing_check(f, k, SQUEEZE_Z, SQUEEZE_T)
    assert rep.passed
    assert k <= rep.summary["rate_min"] < k + 0.05
    bad = dyn.squeezing_check(f, k + 0.05, SQUEEZE_Z, SQUEEZE_T)
    assert any(c.claim == "squeezing" for c in bad.failures())


@given(st.floats(-1.0, A_STAR), st.integers(1, 300))
def test_squeezing_k_zero(a, seed):
    f = Synthesized(a, random_measure(seed, 1 + seed % 3))
    rep = dyn.squeezing_check(f, 0.0, [0.99, -0.9j], [1.0, 5.0])
    assert rep.passed


# --- sector ---------------------------------------------------------------------------

def test_sector_identity():
    z = 0.9 * np.exp(2j * np.pi * np.arange(8) / 8)
    assert dyn.sector_extension_check(Identity(), 0.0, 0.01, z).passed


def test_sector_extremal():
    B = cl.B_numeric(0.0).B_normalized
    rep = dyn.sector_extension_check(Extremal(0.0), B, 0.05, Z32)
    assert rep.passed and len(rep.checks) == 64


def test_sector_outside_escapes():
    rep = dyn.sector_extension_check(Extremal(0.0), 0.0, 0.05, Z32,
                                     psis=[math.pi / 2 + 0.1])
    assert not rep.passed
    assert all("escaped" in c.note for c in rep.failures())


def test_sector_rays_preconditions():
    with pytest.raises(DomainError):
        dyn.sector_rays(1.0, 0.1)
    with pytest.raises(DomainError):
        dyn.sector_rays(0.5, math.pi / 4)
