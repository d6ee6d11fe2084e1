"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 on a mathematical verdict failure
(including an escaping trajectory), 2 on usage, parse or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import classes as cl
from . import dynamics as dyn
from . import suites
from .corekit import cauchy_coeffs, check_alpha, closed_form_coeffs
from .errors import DomainError, EscapeError, LAlphaError, ParseError, StepLimitError, \
    ValidationError
from .herglotz import Extremal, Identity, Rotated, Synthesized, load_measure, synth_coeff
from .report import _plain

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TOL_FLAGS = tuple(suites.DEFAULT_TOLERANCES)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def parse_complex(text):
    """Accept Python complex literals and the 'i' suffix: 0.5, -0.3+0.2j, 1e-3i."""
    s = text.strip().replace(" ", "")
    s = re.sub(r"i$", "j", s)
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _positive(text):
    v = float(text)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"tolerance must be a positive number, got {text}")
    return v


def _global_options(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--out", default=d(None), help="write output here instead of stdout")
    parser.add_argument("--format", choices=("table", "csv", "json"), default=d("table"))
    parser.add_argument("--seed", type=int, default=d(0))
    for key in TOL_FLAGS:
        parser.add_argument(f"--tol-{key.replace('_', '-')}", dest=f"tol_{key}",
                            type=_positive, default=d(None), metavar="X",
                            help=f"override tolerance '{key}' "
                                 f"(default {suites.DEFAULT_TOLERANCES[key]:g})")


def _model_options(parser, alpha_default=0.0):
    parser.add_argument("--alpha", type=float, default=alpha_default)
    parser.add_argument("--measure", help="measure file; synthesizes a member of L_alpha")
    parser.add_argument("--identity", action="store_true", help="use f(z) = z")
    parser.add_argument("--rotate", type=float, default=None, metavar="THETA",
                        help="wrap the model as e^{-i theta} f(e^{i theta} z)")


def build_parser():
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)

    p = _Parser(prog="lalpha", description="Numerical verification toolkit for the classes "
                "L_alpha of normalized holomorphic functions and their semigroups.")
    _global_options(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constants", parents=[common], help="K, B and generator margin table")
    c.add_argument("--alpha", type=float, default=None, help="single row")
    c.add_argument("--alpha-min", type=float, default=-1.0)
    c.add_argument("--alpha-max", type=float, default=cl.ALPHA_STAR)
    c.add_argument("--steps", type=int, default=25)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=suites.SUITES)
    v.add_argument("--alpha", type=float, default=None)

    f = sub.add_parser("flow", parents=[common], help="integrate the semigroup")
    _model_options(f)
    f.add_argument("--z0", type=parse_complex, required=True)
    f.add_argument("--t-max", type=float, default=1.0)
    f.add_argument("--psi", type=float, default=0.0)
    f.add_argument("--n-out", type=int, default=64)

    k = sub.add_parser("coeffs", parents=[common], help="Taylor coefficients")
    _model_options(k)
    k.add_argument("--n-max", type=int, default=10)
    k.add_argument("--radius", type=float, default=suites.CAUCHY_RADIUS)

    s = sub.add_parser("fekete-szego", parents=[common], help="Fekete-Szego oracle")
    s.add_argument("--alpha", type=float, default=0.0)
    s.add_argument("--lambda", dest="lam", type=parse_complex, default=0j)
    s.add_argument("--samples", type=int, default=64)

    y = sub.add_parser("synthesize", parents=[common], help="evaluate f, f' and f(z)/z")
    _model_options(y)
    y.add_argument("--z", type=parse_complex, nargs="+", required=True)

    m = sub.add_parser("membership", parents=[common], help="test f in L_beta")
    _model_options(m)
    m.add_argument("--class-alpha", type=float, default=None,
                   help="class parameter beta (default: the model's alpha)")
    return p


def _build_model(args):
    if args.identity:
        model = Identity()
    elif args.measure:
        model = Synthesized(check_alpha(args.alpha), load_measure(args.measure))
    else:
        model = Extremal(check_alpha(args.alpha))
    if args.rotate is not None:
        model = Rotated(args.rotate, model)
    return model


def _tolerances(args):
    return {k: getattr(args, f"tol_{k}") for k in TOL_FLAGS
            if getattr(args, f"tol_{k}", None) is not None}


def _rows_out(rows, fmt, meta=None):
    if fmt == "json":
        doc = {"rows": _plain(rows)}
        if meta:
            doc.update(_plain(meta))
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if not rows:
        return ""
    cols = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r[c], csv_mode=True) for c in cols])
        return buf.getvalue()
    cells = [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(wd) for c, wd in zip(cols, widths))]
    lines += ["  ".join(v.rjust(wd) for v, wd in zip(row, widths)) for row in cells]
    if meta:
        lines += [f"{k} = {_plain(v)}" for k, v in meta.items()]
    return "\n".join(lines) + "\n"


def _cell(v, csv_mode=False):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (complex, np.complexfloating)):
        return f"{v.real:.17g}{v.imag:+.17g}j" if csv_mode else f"{v.real:.10g}{v.imag:+.10g}j"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g" if csv_mode else ".10g")
    return str(v)


def cmd_constants(args):
    if args.alpha is not None:
        alphas = [args.alpha]
    else:
        if args.steps < 1:
            raise DomainError("--steps must be >= 1")
        if not -1.0 <= args.alpha_min < args.alpha_max:
            raise DomainError("need -1 <= alpha_min < alpha_max")
        alphas = list(np.linspace(args.alpha_min, args.alpha_max, args.steps))
    for a in alphas:
        check_alpha(a)
        if a > cl.ALPHA_STAR + 1e-12:
            raise DomainError(f"alpha = {a} exceeds alpha* = {cl.ALPHA_STAR!r}")
    return _rows_out(cl.constants_table(alphas), args.format), EXIT_OK


def cmd_verify(args):
    opts = suites.SuiteOptions(alpha=args.alpha, seed=args.seed, tol=_tolerances(args))
    rep = suites.run_suite(args.suite, opts)
    text = {"json": rep.to_json, "csv": rep.to_csv, "table": rep.to_table}[args.format]()
    return text, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_flow(args):
    f = _build_model(args)
    tol = _tolerances(args)
    cfg = dyn.IntegratorConfig(rel_tol=tol.get("rel", suites.DEFAULT_TOLERANCES["rel"]),
                               abs_tol=tol.get("abs", suites.DEFAULT_TOLERANCES["abs"]),
                               n_out=args.n_out)
    try:
        traj = dyn.flow(f, args.z0, args.t_max, args.psi, cfg)
        code = EXIT_OK
    except EscapeError as exc:
        print(f"escape: {exc} (escape time s = {exc.time:.17g})", file=sys.stderr)
        traj, code = exc.trajectory, EXIT_FAIL
    except StepLimitError as exc:
        print(f"step limit: {exc}", file=sys.stderr)
        return "", EXIT_FAIL
    if args.format == "json":
        rows = [{"s": s, "t": t, "w": w} for s, t, w in
                zip(traj.times, traj.complex_times, traj.points)]
        return _rows_out(rows, "json", {"model": f.describe(), "psi": args.psi,
                                        "accepted": traj.accepted,
                                        "steps_taken": traj.steps_taken}), code
    return traj.to_csv(), code


def cmd_coeffs(args):
    f = _build_model(args)
    alpha, mu = f.canonical()
    ts = cauchy_coeffs(f, args.n_max, args.radius)
    if isinstance(f, Extremal):
        exact = closed_form_coeffs(alpha, args.n_max).coefficients
    else:
        exact = np.array([1.0 + 0j] + [synth_coeff(alpha, mu, n + 1)
                                       for n in range(1, args.n_max + 1)])
    rows = [{"n": n, "k": n + 1, "closed_form": complex(exact[n]),
             "cauchy": complex(ts.coefficients[n]),
             "abs_error": float(abs(exact[n] - ts.coefficients[n]))}
            for n in range(args.n_max + 1)]
    return _rows_out(rows, args.format, {"model": f.describe(), "radius": args.radius}), EXIT_OK


def cmd_fekete_szego(args):
    res = cl.fs_class_oracle(check_alpha(args.alpha), args.lam, samples=args.samples)
    d = cl.fs_varphi(args.alpha, args.lam)
    row = {"alpha": res.alpha, "lambda": complex(res.lam), "oracle": res.value,
           "analytic_candidate": res.analytic_candidate, "paper_bound": res.paper_bound,
           "paper_bound_attained": res.paper_bound_attained,
           "phi_direct": d.direct, "phi_paper_claim": d.paper_claim}
    meta = {"extremal_atoms": res.atoms, "samples": res.samples}
    if not res.paper_bound_attained:
        meta["flag"] = "stated bound not attained"
    return _rows_out([row], args.format, meta), EXIT_OK


def cmd_synthesize(args):
    f = _build_model(args)
    z = np.array(args.z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("every z must satisfy |z| < 1")
    fz, dz, q = np.atleast_1d(f(z)), np.atleast_1d(f.deriv(z)), np.atleast_1d(f.over_z(z))
    rows = [{"z": complex(z[i]), "f": complex(fz[i]), "f_prime": complex(dz[i]),
             "f_over_z": complex(q[i])} for i in range(len(z))]
    return _rows_out(rows, args.format, {"model": f.describe()}), EXIT_OK


def cmd_membership(args):
    f = _build_model(args)
    beta = check_alpha(args.alpha if args.class_alpha is None else args.class_alpha)
    tol = _tolerances(args).get("membership", suites.DEFAULT_TOLERANCES["membership"])
    v = cl.membership(f, beta, tol)
    row = {"model": f.describe(), "class_alpha": beta, "inf_re_fprime": v.margin - beta,
           "margin": v.margin, "tol": tol, "member": v.passed}
    return _rows_out([row], args.format), EXIT_OK if v.passed else EXIT_FAIL


COMMANDS = {
    "constants": cmd_constants,
    "verify": cmd_verify,
    "flow": cmd_flow,
    "coeffs": cmd_coeffs,
    "fekete-szego": cmd_fekete_szego,
    "synthesize": cmd_synthesize,
    "membership": cmd_membership,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        text, code = COMMANDS[args.command](args)
    except ParseError as exc:
        where = f" (line {exc.line})" if getattr(exc, "line", None) else ""
        print(f"parse error{where}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LAlphaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
