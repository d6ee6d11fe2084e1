"""Numerics for the classes L_alpha = {f : Re f'(z) > -alpha} of normalized
holomorphic functions on the unit disk and for the semigroups they generate.

Set ``LALPHA_DISABLE_NUMBA=1`` before import to run the pure-numpy kernels.
"""

from .corekit import (TaylorSeries, cauchy_coeffs, closed_form_coeffs, hyper2f1_112, varphi,
                      varphi_coeff, varphi_deriv)
from .herglotz import (CircleMeasure, Extremal, FunctionModel, Identity, Rotated, Synthesized,
                       dump_measure, herglotz_p, load_measure, moment, parse_measure,
                       random_measure, synth_coeff, synth_deriv, synth_eval)
from .classes import (ALPHA_STAR, B_numeric, K_closed, K_numeric, Lstar_representation_check,
                      constants_table, convexity_check, fs_class_oracle, fs_varphi,
                      generator_test, membership, strictness_check, subordination_check,
                      totally_extremal_check)
from .dynamics import (FlowTrajectory, IntegratorConfig, flow, sector_extension_check,
                       semigroup_law_check, squeezing_check)
from .errors import (DomainError, EscapeError, EvaluationError, LAlphaError, MembershipError,
                     ParseError, StepLimitError, ValidationError)
from .report import Check, VerificationReport
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
