import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lalpha import (DomainError, Extremal, Identity, MembershipError, Rotated, Synthesized,
                    random_measure)
from lalpha import classes as cl
from lalpha.corekit import varphi
from lalpha.optimize import golden_max, golden_min

LOG2 = math.log(2.0)
A_STAR = (2 * LOG2 - 1) / (2 - 2 * LOG2)


# --- golden section ---------------------------------------------------------

def test_golden_min_quadratic():
    x, v = golden_min(lambda t: (t - 0.3) ** 2 + 1, -1.0, 2.0, tol=1e-12)
    assert abs(x - 0.3) < 1e-6 and abs(v - 1) < 1e-12


def test_golden_vectorized_brackets():
    lo, hi = np.array([0.0, 2.0]), np.array([2.0, 4.0])
    x, _ = golden_max(np.sin, lo, hi, tol=1e-12)
    assert np.allclose(x, [math.pi / 2, 2.0], atol=1e-6)


def test_golden_endpoint_tie_prefers_left():
    x, _ = golden_max(lambda t: np.zeros_like(t), 0.0, 1.0)
    assert x == 0.0


# --- constants ----------------------------------------------------------------

def test_alpha_star():
    assert abs(cl.alpha_star() - 0.629) < 5e-4
    assert abs(cl.alpha_star() - A_STAR) < 1e-15
    assert abs(cl.K_closed(cl.alpha_star())) < 1e-14
    assert cl.alpha_star() > 0


def test_K_closed_examples():
    assert cl.K_closed(0) == pytest.approx(2 * LOG2 - 1, abs=1e-15)
    assert cl.K_closed(-1) == 1
    assert cl.K_closed(1.0) == pytest.approx(-3 + 4 * LOG2)


@pytest.mark.parametrize("a", np.linspace(-1, 1, 25))
def test_K_numeric_matches_closed(a):
    assert abs(cl.K_numeric(a) - cl.K_closed(a)) < 5e-4


def test_K_numeric_examples():
    assert cl.K_numeric(0) == pytest.approx(0.386294, abs=5e-4)
    assert cl.K_numeric(-1) == pytest.approx(1.0, abs=1e-15)
    assert abs(cl.K_numeric(A_STAR)) < 5e-4


# --- membership -------------------------------------------------------------------

def test_inf_re_deriv_examples():
    assert cl.inf_re_deriv(Extremal(0.4)) == pytest.approx(-0.4, abs=5e-4)
    assert cl.inf_re_deriv(Identity()) == pytest.approx(1.0, abs=1e-15)
    assert cl.inf_re_deriv(Rotated(1.0, Extremal(0.4))) == pytest.approx(-0.4, abs=5e-4)


def test_membership_examples():
    v = cl.membership(Extremal(0.3), 0.3)
    assert v.passed and abs(v.margin) < 5e-4
    assert not cl.membership(Extremal(0.3), 0.29)
    assert cl.membership(Identity(), -1.0)


@given(st.floats(-1, 0.6), st.floats(0, 1), st.integers(1, 500))
def test_membership_nesting(a, gap, seed):
    f = Synthesized(a, random_measure(seed, 1 + seed % 5))
    if cl.membership(f, a).passed:
        assert cl.membership(f, a + gap).passed


def test_generator_examples():
    g = cl.generator_test(Identity())
    assert g.passed and g.margin == pytest.approx(1.0)
    g = cl.generator_test(Extremal(A_STAR))
    assert g.passed and abs(g.margin) < 5e-4
    assert not cl.generator_test(Extremal(1.0)).passed
    assert not cl.generator_test(Extremal(A_STAR + 0.05)).passed


@pytest.mark.parametrize("a", np.linspace(-1, A_STAR, 7))
def test_generator_below_alpha_star(a):
    assert cl.generator_test(Extremal(a)).passed


# --- B ----------------------------------------------------------------------------------

def brute_arg_max(a, n=400_001):
    theta = np.linspace(1e-6, math.pi - 1e-6, n)
    return float(np.max(np.angle(varphi(a, np.exp(1j * theta)))))


def test_B_examples():
    c = cl.B_numeric(-1.0)
    assert c.B_normalized == 0 and c.arg_sup == 0
    c = cl.B_numeric(A_STAR)
    assert 0 <= c.B_normalized <= 1


@pytest.mark.parametrize("a", [-0.5, 0.0, 0.3, 0.55])
def test_B_against_dense_brute_force(a):
    c = cl.B_numeric(a)
    assert abs(c.arg_sup - brute_arg_max(a)) < 1e-9
    assert c.B_normalized == pytest.approx(2 / math.pi * c.arg_sup, abs=1e-15)
    assert c.K == pytest.approx(cl.K_closed(a))


def test_B_refinement_stable():
    assert abs(cl.B_numeric(0.0).B_normalized
               - cl.B_numeric(0.0, n_grid=16384).B_normalized) < 1e-6


def test_B_monotone():
    grid = np.linspace(-1, A_STAR, 25)
    b = [cl.B_numeric(a).B_normalized for a in grid]
    assert all(y >= x - 1e-6 for x, y in zip(b, b[1:]))


def test_B_domain():
    with pytest.raises(DomainError):
        cl.B_numeric(A_STAR + 1e-6)


# --- Fekete-Szego --------------------------------------------------------------------

def test_fs_varphi_examples():
    d = cl.fs_varphi(0, 1)
    assert d.direct == pytest.approx(1 / 18) and d.paper_claim == pytest.approx(1 / 18)
    assert cl.fs_varphi(0, 0).direct == pytest.approx(0.5)
    d = cl.fs_varphi(1, 1)
    assert d.direct == pytest.approx(7 / 9) and d.paper_claim == pytest.approx(1 / 9)


@given(st.floats(-1, 2), st.complex_numbers(max_magnitude=3))
def test_fs_varphi_direct_from_coefficients(a, lam):
    rho2, rho3 = 2 * (1 + a) / 3, 2 * (1 + a) / 4
    assert cl.fs_varphi(a, lam).direct == pytest.approx(abs(rho3 - lam * rho2 ** 2),
                                                       abs=1e-12)


def test_fs_oracle_examples():
    r = cl.fs_class_oracle(0.0, 0.0)
    assert abs(r.value - 2 / 3) < 1e-3 and r.paper_bound_attained
    r = cl.fs_class_oracle(0.0, 1.0)
    assert abs(r.value - 2 / 3) < 1e-3
    assert r.paper_bound == pytest.approx(10 / 3) and not r.paper_bound_attained
    assert cl.fs_class_oracle(-1.0, 0.7 + 0.2j).value == 0


def fs_random_search(a, lam, n=20000, seed=0):
    """Random two- and three-atom measures; a_2 = (1+a) m1, a_3 = 2(1+a)/3 m2."""
    rng = np.random.default_rng(seed)
    best = 0.0
    for k in (1, 2, 3):
        th = rng.uniform(0, 2 * np.pi, (n, k))
        w = rng.dirichlet(np.ones(k), n)
        m1 = (w * np.exp(-1j * th)).sum(1)
        m2 = (w * np.exp(-2j * th)).sum(1)
        best = max(best, float(np.max(np.abs(2 * (1 + a) / 3 * m2 - lam * ((1 + a) * m1) ** 2))))
    return best


@pytest.mark.parametrize("a,lam", [(0.0, 0.5), (0.3, 1.0), (-0.5, -1.0), (0.6, 1j),
                                   (0.0, 2.0)])
def test_fs_oracle_dominates_random_search(a, lam):
    r = cl.fs_class_oracle(a, lam)
    assert r.value >= fs_random_search(a, lam) - 1e-12
    assert abs(r.value - r.analytic_candidate) < 1e-3
    assert r.value <= max(r.paper_bound, r.analytic_candidate) + 1e-3


# --- geometry ------------------------------------------------------------------------------

def test_subordination_examples():
    assert cl.subordination_check(0.0, 0.5).passed
    assert cl.subordination_check(0.0, A_STAR).passed
    with pytest.raises(DomainError):
        cl.subordination_check(0.5, 0.0)


def test_convexity_examples():
    assert cl.convexity_check(0.0).convex
    assert cl.convexity_check(A_STAR).convex
    with pytest.raises(DomainError):
        cl.convexity_check(-1.0)


def test_containment_tolerance():
    from lalpha.geometry import containment
    square = np.array([0, 1, 1 + 1j, 1j])
    inside, _ = containment(np.array([0.5 + 0.5j, 2, 1 + 0.5j, 1 + 1e-10 + 0.5j,
                                      1 + 1e-8 + 0.5j]), square)
    assert list(inside) == [True, False, True, True, False]


# --- extremality and strictness ---------------------------------------------------------

def test_totally_extremal_examples():
    r = cl.totally_extremal_check(0.3, [Extremal(0.3)])
    assert r.worst_margin == 0 and r.verdict
    r = cl.totally_extremal_check(0.3, [Identity()])
    assert r.verdict and r.worst_margin > 0


def test_totally_extremal_rejects_non_members():
    with pytest.raises(MembershipError) as info:
        cl.totally_extremal_check(0.3, [Identity(), Extremal(0.5)])
    assert [i for i, *_ in info.value.failures] == [1]


def test_strictness_examples():
    rep = cl.strictness_check([0.0, -1.0, A_STAR])
    assert rep.passed
    below = [c for c in rep.checks if c.claim == "not_member_below"
             and c.params["alpha"] == 0.0]
    assert all(c.measured < 0 for c in below)


def test_strictness_domain():
    with pytest.raises(DomainError):
        cl.strictness_check([0.7])


# --- L_{alpha*} ------------------------------------------------------------------------

def test_lstar_examples():
    from lalpha import CircleMeasure
    assert cl.Lstar_representation_check([0.5], CircleMeasure.point_mass(0.0)) < 1e-10
    assert cl.Lstar_representation_check([0.0], random_measure(2, 3)) == 0
    z = 0.95 * np.exp(2j * np.pi * np.arange(100) / 100) * np.linspace(0.01, 1, 100)
    assert cl.Lstar_representation_check(z, random_measure(3, 4)) < 1e-10


def test_lstar_coefficients_identity():
    assert 2 * (1 + A_STAR) == pytest.approx(1 / (1 - LOG2), abs=1e-14)
    assert 1 + 2 * A_STAR == pytest.approx(LOG2 / (1 - LOG2), abs=1e-14)


def test_constants_table_row():
    (row,) = cl.constants_table([0.0])
    assert row["K_closed"] == pytest.approx(0.386294, abs=1e-6)
    assert set(row) >= {"alpha", "K_closed", "K_numeric", "B_normalized", "theta_argmax",
                        "generator_margin"}
