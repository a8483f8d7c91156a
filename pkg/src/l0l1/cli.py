"""Command line front end.

Exit codes: 0 success / verdict holds, 1 verdict fails, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import jsonio
from .construction import CriterionFailure, InfeasibleAllocation, build_orbit_operator, build_prop2_operator
from .functionals import e_functional, e_star, k_eval, k_functional
from .majorization import (
    NoFiniteConstant,
    check_orbit_criterion,
    check_tail_domination,
    k_orbit_constant,
    orbit_constant,
)
from .marcinkiewicz import check_doubling, check_tail_condition, equiv_norm, norm_alpha, sandwich_check
from .operators import DimensionError, apply
from .sequences import l0_norm, rearrange, to_rat
from .verification import passed, selftest, verify_certificate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rat_arg(text: str) -> Fraction:
    try:
        return to_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _seq(path: Optional[str], flag: str):
    if path is None:
        raise UsageError(f"{flag} is required")
    return jsonio.sequence_from_json(jsonio.load_json(path))


def _positive(value: Optional[Fraction], flag: str) -> Fraction:
    if value is None:
        raise UsageError(f"{flag} is required")
    if value <= 0:
        raise UsageError(f"{flag} must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="l0l1", description="Exact orbit certificates for the pair (l0, l1).")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name: str, help: str, *flags: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        for flag in flags:
            if flag in ("--t", "--constant", "--p", "--precision"):
                p.add_argument(flag, type=_rat_arg)
            elif flag in ("--seed", "--trials", "--horizon"):
                p.add_argument(flag, type=int)
            elif flag in ("--star",):
                p.add_argument(flag, action="store_true")
            else:
                p.add_argument(flag)
        return p

    add("rearrange", "nonincreasing rearrangement and signed permutation", "--x")
    add("efunc", "E(t, x); with --star the convex minorant E*(t, x)", "--x", "--t", "--star")
    add("kfunc", "K(t, x), or the whole envelope without --t", "--x", "--t")
    add("check", "tail domination, or the orbit criterion with --constant", "--a", "--b", "--constant")
    add("constant", "bracket the least constant of the orbit criterion", "--a", "--b", "--precision")
    add("build", "build an operator certificate with Tb = a", "--a", "--b", "--constant", "--out")
    add("verify", "recheck a certificate against a and b", "--op", "--a", "--b")
    add("apply", "apply an operator to a sequence", "--op", "--x")
    add("korbit", "sup_t K(t, a) / K(t, b)", "--a", "--b")
    add("marc", "Marcinkiewicz norms and the sandwich inequality", "--x", "--weight", "--p", "--horizon")
    add("selftest", "randomized sweep of every certificate path", "--seed", "--trials")
    return parser


def run(args: argparse.Namespace) -> tuple[int, object]:
    verb = args.verb
    if verb == "rearrange":
        return EXIT_OK, jsonio.profile_to_json(rearrange(_seq(args.x, "--x")))

    if verb == "efunc":
        x = _seq(args.x, "--x")
        if args.t is None or args.t < 0:
            raise UsageError("--t must be given and nonnegative")
        value = e_star(x, args.t) if args.star else e_functional(x, args.t)
        return EXIT_OK, {"t": str(args.t), "value": str(value), "functional": "E*" if args.star else "E"}

    if verb == "kfunc":
        x = _seq(args.x, "--x")
        if args.t is not None:
            return EXIT_OK, {"t": str(args.t), "value": str(k_eval(x, _positive(args.t, "--t")))}
        env = k_functional(x)
        return EXIT_OK, {
            "segments": [[str(m), str(c)] for m, c in env.segments],
            "breakpoints": [str(s) for s in env.breakpoints],
        }

    if verb == "check":
        a, b = _seq(args.a, "--a"), _seq(args.b, "--b")
        if args.constant is None:
            verdict = check_tail_domination(a, b)
        else:
            verdict = check_orbit_criterion(a, b, _positive(args.constant, "--constant"))
        return (EXIT_OK if verdict.holds else EXIT_FAIL), verdict.to_json()

    if verb == "constant":
        a, b = _seq(args.a, "--a"), _seq(args.b, "--b")
        precision = _positive(args.precision, "--precision") if args.precision is not None else Fraction(1, 64)
        try:
            lo, hi = orbit_constant(a, b, precision)
        except NoFiniteConstant as exc:
            return EXIT_FAIL, {"finite": False, "reason": str(exc)}
        return EXIT_OK, {"finite": True, "lo": str(lo), "hi": str(hi)}

    if verb == "build":
        a, b = _seq(args.a, "--a"), _seq(args.b, "--b")
        try:
            if args.constant is None:
                cert = build_prop2_operator(rearrange(a), rearrange(b))
                if rearrange(a).as_sequence() != a or rearrange(b).as_sequence() != b:
                    raise UsageError("without --constant, a and b must already be nonincreasing and nonnegative")
            else:
                cert = build_orbit_operator(a, b, _positive(args.constant, "--constant"))
        except CriterionFailure as exc:
            return EXIT_FAIL, {"holds": False, "witness_k": exc.witness_k, "reason": str(exc)}
        except InfeasibleAllocation as exc:
            return EXIT_FAIL, {"holds": False, "witness_k": None, "reason": str(exc)}
        out = jsonio.certificate_to_json(cert)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(jsonio.dumps(out) + "\n")
        return EXIT_OK, out

    if verb == "verify":
        if args.op is None:
            raise UsageError("--op is required")
        cert = jsonio.certificate_from_json(jsonio.load_json(args.op))
        report = verify_certificate(cert, _seq(args.a, "--a"), _seq(args.b, "--b"))
        return (EXIT_OK if passed(report) else EXIT_FAIL), report

    if verb == "apply":
        if args.op is None:
            raise UsageError("--op is required")
        op = jsonio.operator_from_json(jsonio.load_json(args.op))
        return EXIT_OK, jsonio.sequence_to_json(apply(op, _seq(args.x, "--x")))

    if verb == "korbit":
        a, b = _seq(args.a, "--a"), _seq(args.b, "--b")
        try:
            return EXIT_OK, {"bounded": True, "value": str(k_orbit_constant(a, b))}
        except NoFiniteConstant as exc:
            return EXIT_FAIL, {"bounded": False, "reason": str(exc)}

    if verb == "marc":
        x = _seq(args.x, "--x")
        if args.weight is not None:
            w = jsonio.weight_from_json(jsonio.load_json(args.weight))
        elif args.p is not None:
            w = jsonio.weight_from_json({"kind": "power", "p": str(args.p)})
        else:
            raise UsageError("one of --weight or --p is required")
        horizon = args.horizon if args.horizon is not None else max(1, 2 * l0_norm(x))
        lo, hi = equiv_norm(x, w)
        doubling, tail = check_doubling(w, horizon), check_tail_condition(w, horizon)
        sandwich = sandwich_check(x, w)
        ok = doubling.holds and tail.holds and sandwich.holds
        return (EXIT_OK if ok else EXIT_FAIL), {
            "kind": w.kind,
            "norm_alpha": str(norm_alpha(x, w)),
            "equiv_norm": [str(lo), str(hi)],
            "doubling": doubling.to_json(),
            "tail_condition": tail.to_json(),
            "sandwich": sandwich.to_json(),
        }

    if verb == "selftest":
        seed = args.seed if args.seed is not None else int(os.environ.get("SEED", "0"))
        report = selftest(seed, args.trials if args.trials is not None else 50)
        return (EXIT_OK if passed(report) else EXIT_FAIL), report

    raise UsageError(f"unknown verb {verb!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        code, payload = run(args)
    except (UsageError, jsonio.FormatError, DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(jsonio.dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
