"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 unsupported family or
degenerate input, 3 invalid arguments.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .exceptions import ApoError, Degenerate, UnsupportedFamily
from .moments import (
    MomentData,
    generating_poly,
    moment_residual,
    prony_solve,
    regularity_check,
    structure_checks,
)
from .regularization import recover_system
from .solutions import FAMILIES, FamilySpec, auto_family
from .trig import (
    DEFAULT_GRID,
    TrigPolynomial,
    apply_to_coeffs,
    dump_json,
    extract_harmonic,
    load_apo,
    load_poly,
    moment_order,
    series_mask_check,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_UNSUPPORTED = 2
EXIT_BAD_ARGS = 3


class BadArgs(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_ARGS)


def _fmt(x) -> str:
    # adding 0.0 turns -0.0 into 0.0
    return f"{float(x) + 0.0:.15g}"


def _fmt_c(z) -> str:
    z = complex(z)
    return f"{z.real + 0.0:.15g} {z.imag + 0.0:+.15g}j"


def _emit(lines):
    sys.stdout.write("\n".join(lines) + "\n")


def _resolve_family(args) -> FamilySpec:
    if args.degree is None and args.s is None:
        raise BadArgs("give --degree or --s")
    if args.family in (None, "auto"):
        spec = auto_family(args.mu, args.degree, args.s)
    else:
        fam = args.family
        mu, degree, s = args.mu, args.degree, args.s
        if fam == "MuEqualsN":
            n = degree if degree is not None else mu
            if n != mu:
                raise UnsupportedFamily("MuEqualsN needs degree == mu")
            spec = FamilySpec(fam, mu, n)
        elif fam == "MuOne":
            if mu != 1 or degree is None:
                raise UnsupportedFamily("MuOne needs mu = 1 and a degree")
            spec = FamilySpec(fam, 1, degree)
        elif fam == "MuTwo":
            if mu != 2:
                raise UnsupportedFamily("MuTwo needs mu = 2")
            spec = auto_family(2, degree, s)
        else:
            if mu < 2:
                raise UnsupportedFamily("General needs mu >= 2")
            if s is None:
                s = max(2, -(-(degree + 2) // mu))
            spec = FamilySpec("General", mu, s * mu - 1, s)
        if degree is not None and fam != "MuEqualsN" and degree > _valid_degree(spec):
            raise UnsupportedFamily(f"{fam} with these parameters is exact only up to degree {_valid_degree(spec)}")
    return FamilySpec(spec.family, spec.mu, spec.n, spec.s, args.alpha)


def _valid_degree(spec: FamilySpec) -> int:
    return spec.n - 1 if spec.family == "General" else spec.n


def cmd_solve(args) -> int:
    spec = _resolve_family(args)
    op = spec.build()
    if args.out:
        dump_json(op, args.out)
    lines = [
        f"family = {spec.family}",
        f"mu = {op.mu}",
        f"alpha = {spec.alpha}",
        f"omega = {_fmt(op.omega)}",
        f"terms = {len(op.terms)}",
        f"valid_degree = {op.valid_degree}",
    ]
    for k, (x, lam) in enumerate(op.terms):
        lines.append(f"term[{k}] = {_fmt(x)} {_fmt(lam)}")
    _emit(lines)
    return EXIT_OK


def cmd_apply(args) -> int:
    op = load_apo(args.apo)
    p = load_poly(args.poly)
    out = apply_to_coeffs(op, p)
    if args.out:
        dump_json(out, args.out)
    lines = [f"degree = {out.degree}", f"a0 = {_fmt(out.a0)}"]
    for k, (a, b) in enumerate(out.coeffs, start=1):
        lines.append(f"harmonic[{k}] = {_fmt(a)} {_fmt(b)}")
    if p.degree <= op.valid_degree:
        rep = extract_harmonic(op, p)
        lines.append(f"max_deviation = {rep.max_deviation:.3e}")
    else:
        lines.append("max_deviation = n/a (degree exceeds valid_degree)")
    _emit(lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    op = load_apo(args.apo)
    rng = np.random.default_rng(args.seed)
    worst, worst_trial = -1.0, -1
    for t in range(args.trials):
        p = TrigPolynomial.random(op.valid_degree, rng)
        dev = extract_harmonic(op, p, DEFAULT_GRID).max_deviation
        if dev > worst:
            worst, worst_trial = dev, t
    n = moment_order(op)
    beta_max = 4 * (n + op.mu + 1)
    mask = series_mask_check(op, op.mu, n, beta_max, raise_on_violation=False)
    passed = worst < args.tol and mask.ok
    lines = [
        f"trials = {args.trials}",
        f"seed = {args.seed}",
        f"tol = {args.tol:g}",
        f"max_error = {worst:.3e}",
        f"mask_beta_max = {beta_max}",
        f"mask_ok = {mask.ok}",
        f"result = {'pass' if passed else 'fail'}",
    ]
    if not passed:
        lines.append(f"worst_trial = {worst_trial}")
        lines.append(f"reproduce = --seed {args.seed} --trials {worst_trial + 1}")
        if mask.offending:
            lines.append("mask_offending = " + ",".join(str(b) for b in mask.offending))
    _emit(lines)
    return EXIT_OK if passed else EXIT_VERIFY_FAIL


def _moments(args) -> MomentData:
    if args.n < 1 or not 1 <= args.mu <= args.n:
        raise BadArgs("need n >= 1 and 1 <= mu <= n")
    return MomentData.delta(args.n, args.mu, args.omega)


def cmd_gpoly(args) -> int:
    md = _moments(args)
    g = generating_poly(md)
    lines = [f"g[{k}] = {_fmt(c.real)}" if abs(c.imag) == 0 else f"g[{k}] = {_fmt_c(c)}"
             for k, c in enumerate(g.coeffs)]
    zero = [k for k, c in enumerate(g.coeffs) if abs(c) < 1e-10 * max(g.scale, 1.0)]
    verdict = regularity_check(g, md.n)
    lines.append("zero_coeffs = " + (",".join(str(k) for k in zero) if zero else "none"))
    lines.append(f"verdict = {'regular' if verdict else verdict.reason}")
    lines += structure_checks(md).lines()
    _emit(lines)
    return EXIT_OK


def cmd_roots(args) -> int:
    md = _moments(args)
    try:
        ns = prony_solve(md)
        route = "regular"
    except Degenerate:
        ns = recover_system(md, method=args.method)
        route = "nonregular"
    x = ns.amplitudes(md.n)
    lines = [f"route = {route}", f"count = {len(ns)}"]
    for k, (z, xk) in enumerate(zip(ns.nodes, x)):
        lines.append(f"node[{k}] = {_fmt_c(z)}")
        lines.append(f"phase[{k}] = {_fmt(-np.angle(z))}")
        lines.append(f"amplitude[{k}] = {_fmt_c(xk) if abs(xk.imag) > 1e-12 else _fmt(xk.real)}")
    lines.append(f"residual = {moment_residual(ns, md):.3e}")
    lines.append(f"unimodular = {ns.is_unimodular(1e-8)}")
    _emit(lines)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    op = load_apo(args.apo)
    n = moment_order(op)
    beta_max = args.beta_max if args.beta_max is not None else 4 * (n + op.mu + 1)
    mask = series_mask_check(op, op.mu, n, beta_max, raise_on_violation=False)
    lines = [f"mu = {op.mu}", f"n = {n}", f"beta_max = {beta_max}"]
    for b in range(beta_max + 1):
        lines.append(f"p[{b}] = {_fmt_c(mask.spectrum[b])}")
    lines.append("nonzero = " + ",".join(str(b) for b in mask.nonzero))
    lines.append(f"mask_ok = {mask.ok}")
    _emit(lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apo", description="Amplitude-phase operators for harmonic extraction.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="build a closed-form operator")
    p.add_argument("--mu", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int)
    g.add_argument("--s", type=int)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--family", choices=("auto",) + FAMILIES, default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("apply", help="apply an operator to polynomial coefficients")
    p.add_argument("--apo", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify", help="random extraction trials and spectrum mask")
    p.add_argument("--apo", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    for verb, func, text in (("gpoly", cmd_gpoly, "generating polynomial and structure report"),
                             ("roots", cmd_roots, "nodes and amplitudes of a moment system")):
        p = sub.add_parser(verb, help=text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--mu", type=int, required=True)
        p.add_argument("--omega", type=float, required=True)
        if verb == "roots":
            p.add_argument("--method", choices=("exact", "ladder"), default="exact")
        p.set_defaults(func=func)

    p = sub.add_parser("spectrum", help="power sums of an operator")
    p.add_argument("--apo", required=True)
    p.add_argument("--beta-max", type=int)
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BadArgs as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except UnsupportedFamily as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except Degenerate as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except ApoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    raise SystemExit(main())
