import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lalpha import Extremal, random_measure
from lalpha import classes as cl
from lalpha import dynamics as dyn

settings.register_profile("lalpha", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lalpha")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile (or load from cache) every numba kernel before any timing."""
    f = Extremal(0.0)
    dyn.flow(f, 0.5, 0.1)
    cl.membership(f, 0.0)
    cl.fs_class_oracle(0.0, 0.0, samples=8, sweeps=1)
    cl.convexity_check(0.0, n=64)
    cl.Lstar_representation_check(np.array([0.1j]), random_measure(1, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20241016)


ACCEPTANCE = {}


@pytest.fixture
def accept(request):
    """Record one acceptance line: accept(number, passed, detail, seconds, budget)."""
    def record(number, passed, detail, seconds, budget):
        ok = bool(passed) and seconds < budget
        ACCEPTANCE[number] = (ok, f"{detail}; runtime {seconds:.2f}s (< {budget:g}s)")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
