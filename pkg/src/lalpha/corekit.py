"""The kernel 2F1(1,1;2;z) = -log(1-z)/z, the generating function phi_alpha and
Taylor data.

All evaluators accept a scalar or an array of complex points and return the
same shape.
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import kernels
from .errors import DomainError, EvaluationError

BOUNDARY_TOL = 1e-12
INTERIOR_MARGIN = 1e-9


def check_alpha(alpha):
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < -1.0:
        raise DomainError(f"alpha must be >= -1, got {alpha}")
    return alpha


def _prepare(z, max_modulus, forbid_one=True):
    arr = np.asarray(z, dtype=np.complex128)
    flat = np.atleast_1d(arr).ravel()
    mod = np.abs(flat)
    if np.any(~np.isfinite(flat)):
        raise DomainError("non-finite argument")
    if np.any(mod > max_modulus):
        bad = flat[np.argmax(mod)]
        raise DomainError(f"|z| = {abs(bad):.17g} exceeds {max_modulus:.17g}")
    if forbid_one and np.any(flat == 1.0):
        raise DomainError("z = 1 is the singular point of the kernel")
    return arr, flat


def _restore(arr, values):
    if arr.ndim == 0:
        return complex(values[0])
    return values.reshape(arr.shape)


def hyper2f1_112(z):
    """Evaluate 2F1(1,1;2;z) = -Log(1-z)/z for |z| <= 1, z != 1.

    Uses the power series sum z^n/(n+1) for |z| <= 0.25 and the principal
    logarithm otherwise. The value at z = 0 is 1.
    """
    arr, flat = _prepare(z, 1.0 + BOUNDARY_TOL)
    return _restore(arr, kernels.h_array(flat, 0))


def varphi(alpha, z):
    """phi_alpha(z) = -(1+2 alpha) + 2(1+alpha) 2F1(1,1;2;z)."""
    alpha = check_alpha(alpha)
    arr, flat = _prepare(z, 1.0 + BOUNDARY_TOL)
    vals = 1.0 + 2.0 * (1.0 + alpha) * (kernels.h_array(flat, 0) - 1.0)
    return _restore(arr, vals)


def varphi_deriv(alpha, z, order=1):
    """First or second derivative of phi_alpha, interior points only."""
    alpha = check_alpha(alpha)
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order}")
    arr, flat = _prepare(z, 1.0 - INTERIOR_MARGIN)
    return _restore(arr, 2.0 * (1.0 + alpha) * kernels.h_array(flat, order))


def varphi_coeff(alpha, n):
    """Taylor coefficient rho_n of phi_alpha: 1 for n = 0, else 2(1+alpha)/(n+1)."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n == 0:
        return 1.0
    return 2.0 * (1.0 + float(alpha)) / (n + 1)


@dataclass(frozen=True)
class TaylorSeries:
    """Coefficients c_n of z^n, n = 0..len-1."""

    coefficients: np.ndarray
    radius_used: float
    method: Literal["closed_form", "cauchy_integral"]

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, n):
        return self.coefficients[n]


def closed_form_coeffs(alpha, n_max):
    c = np.array([varphi_coeff(alpha, n) for n in range(n_max + 1)], dtype=np.complex128)
    return TaylorSeries(c, float("nan"), "closed_form")


def cauchy_coeffs(model, n_max, radius=0.5):
    """Taylor coefficients of f(z)/z by the discrete Cauchy integral.

    ``model`` is anything with an ``over_z(z)`` method returning f(z)/z on an
    array. Uses N = max(256, 8 n_max) equispaced nodes on |z| = radius.
    """
    if not 0.0 < radius <= 0.9:
        raise DomainError(f"radius must lie in (0, 0.9], got {radius}")
    if not 0 <= n_max <= 64:
        raise DomainError(f"n_max must lie in [0, 64], got {n_max}")
    n_nodes = max(256, 8 * n_max)
    theta = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
    nodes = radius * np.exp(1j * theta)
    try:
        g = np.asarray(model.over_z(nodes), dtype=np.complex128)
    except Exception as exc:
        raise EvaluationError(f"model evaluation failed: {exc}") from exc
    if g.shape != nodes.shape or not np.all(np.isfinite(g)):
        raise EvaluationError("model returned non-finite values on the Cauchy contour")
    c = np.fft.fft(g)[: n_max + 1] / n_nodes
    c = c * radius ** -np.arange(n_max + 1, dtype=float)
    return TaylorSeries(c, float(radius), "cauchy_integral")
