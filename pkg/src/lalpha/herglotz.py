"""Atomic probability measures on the unit circle and the functions they
synthesize,

    f(z) = z * sum_j w_j phi_alpha(z * exp(-i theta_j)).

Every function model reduces to this form: the extremal f_alpha is a point
mass at theta = 0, a rotation e^{-i t} g(e^{i t} z) shifts all atoms by -t,
and the identity is the degenerate case alpha = -1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .corekit import INTERIOR_MARGIN, check_alpha
from .errors import DomainError, ParseError, ValidationError

TWO_PI = 2.0 * math.pi
WEIGHT_SUM_TOL = 1e-12
ATOM_SEPARATION = 1e-12
FILE_WEIGHT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CircleMeasure:
    """Finitely supported probability measure: atoms exp(i theta_j) with weights w_j."""

    thetas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        th = np.mod(np.asarray(self.thetas, dtype=float).ravel(), TWO_PI)
        w = np.asarray(self.weights, dtype=float).ravel()
        if th.shape != w.shape or th.size == 0:
            raise ValidationError("need the same positive number of angles and weights")
        if not (np.all(np.isfinite(th)) and np.all(np.isfinite(w))):
            raise ValidationError("atoms must be finite")
        if np.any(w < 0):
            raise ValidationError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(f"weights sum to {w.sum():.17g}, not 1")
        order = np.argsort(th, kind="stable")
        th, w = th[order], w[order]
        gaps = np.diff(np.append(th, th[0] + TWO_PI)) if th.size > 1 else np.array([TWO_PI])
        if np.any(gaps < ATOM_SEPARATION):
            raise ValidationError("atom angles must be pairwise distinct")
        th.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_atoms(cls, atoms):
        atoms = list(atoms)
        return cls(np.array([a[0] for a in atoms], dtype=float),
                   np.array([a[1] for a in atoms], dtype=float))

    @classmethod
    def point_mass(cls, theta=0.0):
        return cls(np.array([theta]), np.array([1.0]))

    @property
    def atoms(self):
        return list(zip(self.thetas.tolist(), self.weights.tolist()))

    @property
    def conj_points(self):
        """conj(zeta_j) = exp(-i theta_j)."""
        return np.exp(-1j * self.thetas)

    def rotated(self, t):
        """Measure whose atoms are shifted by -t (used for e^{-it} f(e^{it} z))."""
        return CircleMeasure(self.thetas - t, self.weights)

    def __eq__(self, other):
        if not isinstance(other, CircleMeasure):
            return NotImplemented
        return (np.array_equal(self.thetas, other.thetas)
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.thetas.tobytes(), self.weights.tobytes()))

    def __repr__(self):
        return f"CircleMeasure(atoms={self.atoms!r})"


def moment(mu, n):
    """m_n = integral of conj(zeta)^n d mu = sum_j w_j exp(-i n theta_j)."""
    if n < 0:
        raise DomainError("moment order must be >= 0")
    if n == 0:
        return 1.0 + 0j
    return complex(np.dot(mu.weights, np.exp(-1j * n * mu.thetas)))


def _disk_points(z, max_modulus, strict):
    arr = np.asarray(z, dtype=np.complex128)
    flat = np.atleast_1d(arr).ravel()
    mod = np.abs(flat)
    if np.any(mod >= max_modulus if strict else mod > max_modulus):
        raise DomainError(f"point outside the disk |z| {'<' if strict else '<='} {max_modulus}")
    return arr, flat


def _p(alpha, mu, flat):
    return kernels.synth_p(alpha, mu.conj_points, mu.weights, flat)


def synth_eval(alpha, mu, z):
    """f(z) = z * sum_j w_j phi_alpha(z exp(-i theta_j)) for |z| < 1."""
    alpha = check_alpha(alpha)
    arr, flat = _disk_points(z, 1.0, strict=True)
    vals = flat * _p(alpha, mu, flat)
    return complex(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def synth_deriv(alpha, mu, z):
    """f'(z) = sum_j w_j [phi(u_j) + u_j phi'(u_j)], u_j = z exp(-i theta_j)."""
    alpha = check_alpha(alpha)
    arr, flat = _disk_points(z, 1.0 - INTERIOR_MARGIN, strict=False)
    vals = kernels.synth_fprime(alpha, mu.conj_points, mu.weights, flat)
    return complex(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def synth_coeff(alpha, mu, k):
    """Coefficient a_k of z^k in f(z) = z + sum_{k>=2} a_k z^k.

    a_k = 2(1+alpha)/k * m_{k-1}, so |a_k| <= 2(1+alpha)/k.
    """
    if k < 2:
        raise DomainError("coefficient index must be >= 2 (a_1 = 1 by normalization)")
    alpha = check_alpha(alpha)
    return 2.0 * (1.0 + alpha) / k * moment(mu, k - 1)


def herglotz_p(mu, z):
    """Herglotz integral sum_j w_j (1 + z conj(zeta_j)) / (1 - z conj(zeta_j))."""
    arr, flat = _disk_points(z, 1.0, strict=True)
    u = np.multiply.outer(flat, mu.conj_points)
    vals = ((1.0 + u) / (1.0 - u)) @ mu.weights
    return complex(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def random_measure(seed, atom_count):
    """Deterministic pseudo-random measure: uniform angles, normalized uniform weights."""
    if atom_count < 1:
        raise DomainError("atom_count must be >= 1")
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0.0, TWO_PI, atom_count)
    weights = rng.uniform(0.0, 1.0, atom_count)
    weights = weights / weights.sum()
    # renormalize once more so the sum is 1 to rounding
    weights[-1] = 1.0 - weights[:-1].sum()
    return CircleMeasure(thetas, weights)


# --- function models -------------------------------------------------------

class FunctionModel:
    """A normalized member of some class L_alpha, f(0) = 0 and f'(0) = 1."""

    def canonical(self):
        """Return (alpha, measure) with f(z) = z * int phi_alpha(z conj(zeta)) d mu."""
        raise NotImplementedError

    @property
    def alpha(self):
        return self.canonical()[0]

    def over_z(self, z):
        """f(z)/z, with the removable value 1 at z = 0."""
        alpha, mu = self.canonical()
        arr = np.asarray(z, dtype=np.complex128)
        vals = _p(alpha, mu, np.atleast_1d(arr).ravel())
        return complex(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)

    def __call__(self, z):
        arr = np.asarray(z, dtype=np.complex128)
        vals = arr * self.over_z(arr)
        return complex(vals) if arr.ndim == 0 else vals

    def deriv(self, z):
        alpha, mu = self.canonical()
        arr = np.asarray(z, dtype=np.complex128)
        vals = kernels.synth_fprime(alpha, mu.conj_points, mu.weights, np.atleast_1d(arr).ravel())
        return complex(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)

    def describe(self):
        return repr(self)


@dataclass(frozen=True)
class Identity(FunctionModel):
    def canonical(self):
        return -1.0, CircleMeasure.point_mass(0.0)

    def describe(self):
        return "Identity"


@dataclass(frozen=True)
class Extremal(FunctionModel):
    """f_alpha(z) = z phi_alpha(z)."""

    a: float

    def __post_init__(self):
        object.__setattr__(self, "a", check_alpha(self.a))

    def canonical(self):
        return self.a, CircleMeasure.point_mass(0.0)

    def describe(self):
        return f"Extremal(alpha={self.a:.12g})"


@dataclass(frozen=True)
class Synthesized(FunctionModel):
    a: float
    mu: CircleMeasure = field(compare=True)

    def __post_init__(self):
        object.__setattr__(self, "a", check_alpha(self.a))

    def canonical(self):
        return self.a, self.mu

    def describe(self):
        return f"Synthesized(alpha={self.a:.12g}, atoms={len(self.mu.thetas)})"


@dataclass(frozen=True)
class Rotated(FunctionModel):
    """z -> exp(-i theta) inner(exp(i theta) z)."""

    theta: float
    inner: FunctionModel

    def canonical(self):
        alpha, mu = self.inner.canonical()
        return alpha, mu.rotated(self.theta)

    def describe(self):
        return f"Rotated(theta={self.theta:.12g}, {self.inner.describe()})"


# --- measure files -----------------------------------------------------------

def parse_measure(text):
    """Parse a measure document ``{"atoms": [{"theta": .., "weight": ..}, ...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, dict) or set(doc) != {"atoms"}:
        raise ParseError("document must be an object with the single key 'atoms'")
    atoms = doc["atoms"]
    if not isinstance(atoms, list) or not atoms:
        raise ParseError("'atoms' must be a non-empty array")
    thetas, weights = [], []
    for i, atom in enumerate(atoms):
        if not isinstance(atom, dict) or set(atom) != {"theta", "weight"}:
            raise ParseError(f"atom {i} must have exactly the keys 'theta' and 'weight'")
        try:
            thetas.append(float(atom["theta"]))
            weights.append(float(atom["weight"]))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"atom {i}: {exc}") from exc
    w = np.array(weights)
    if np.any(w < 0):
        raise ValidationError("weights must be nonnegative")
    total = w.sum()
    if abs(total - 1.0) > FILE_WEIGHT_TOL:
        raise ValidationError(f"weights sum to {total:.12g}; must be 1 within {FILE_WEIGHT_TOL:g}")
    return CircleMeasure(np.array(thetas), w / total)


def load_measure(path):
    return parse_measure(Path(path).read_text())


def dump_measure(mu):
    return json.dumps({"atoms": [{"theta": t, "weight": w} for t, w in mu.atoms]}, indent=2)
