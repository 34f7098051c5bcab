"""Command-line interface: ``mssbound <command> INPUT [flags]``.

Every command prints one JSON report. Exit codes: 0 ok, 2 hypothesis
violated, 3 guard exceeded, 4 parse error, 5 internal invariant breach.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import __version__
from .barrier import certify_theorem2
from .errors import HypothesisViolated, InvariantBreach, MSSError, ParseError
from .expectation import (
    DEFAULT_GUARD,
    expected_char_poly_enumeration,
    instance_stats,
    mixed_char_of_instance,
)
from .instance_io import decimal_str, digest, dump_report, parse_instance, rational_str
from .multilinear import apply_one_minus_partials, truncated_determinant
from .poly import DEFAULT_WIDTH, is_real_rooted, largest_root
from .quadratic import QuadraticFieldElement
from .search import (
    PARTITION_GUARD,
    brute_force_best_assignment,
    brute_force_partition_oracle,
    greedy_interlacing_assignment,
    partition_vectors,
)


def _poly_json(p):
    return [rational_str(c) for c in p.coeffs]


def _bracket_json(lo, hi):
    return {"lo": rational_str(lo), "hi": rational_str(hi), "approx": decimal_str((lo + hi) / 2)}


def _qf_json(q: QuadraticFieldElement):
    a, b, r = q.as_tuple()
    return {"a": rational_str(a), "b": rational_str(b), "radicand": rational_str(r), "approx": decimal_str(q.upper())}


def _threshold(eps) -> QuadraticFieldElement:
    return QuadraticFieldElement(1 + eps, 2, eps)


def _need_instance(f, what):
    if f.instance is None:
        raise ParseError(f"{what} needs an instance file with 'specs'")
    return f.instance


def _matrices_or_expectations(f):
    if f.matrices is not None:
        return list(f.matrices)
    if f.instance is not None:
        return f.instance.expected_outers()
    raise ParseError("input needs 'matrices' or 'specs'")


def cmd_mixedchar(f, args):
    mats = _matrices_or_expectations(f)
    res = apply_one_minus_partials(truncated_determinant(mats, dim=f.dim), audit=args.audit)
    br = largest_root(res.mu, args.width)
    out = {
        "mu": _poly_json(res.mu),
        "largest_root": _bracket_json(br.lo, br.hi),
        "real_rooted": is_real_rooted(res.mu),
    }
    if res.subset_terms is not None:
        out["subset_terms"] = [
            {"subset": list(s), "coefficients": _poly_json(p)} for s, p in res.subset_terms.subsets()
        ]
    return out, "SATISFIED"


def cmd_verify_identity(f, args):
    inst = _need_instance(f, "verify-identity")
    lhs = expected_char_poly_enumeration(inst, args.guard_outcomes)
    rhs = mixed_char_of_instance(inst)
    out = {"expected_char_poly": _poly_json(lhs), "mixed_char_poly": _poly_json(rhs), "equal": lhs == rhs}
    if lhs != rhs:
        raise InvariantBreach("expected characteristic polynomial differs from the mixed characteristic polynomial")
    return out, "SATISFIED"


def cmd_certify(f, args):
    mats = _matrices_or_expectations(f)
    if args.eps is not None:
        eps = Fraction(args.eps)
    elif f.matrices is not None:
        eps = max((m.trace() for m in mats), default=Fraction(0))
    else:
        eps = instance_stats(f.instance).eps
    cert = certify_theorem2(mats, eps, args.width, dim=f.dim)
    out = {
        "eps": rational_str(cert.eps),
        "x_threshold": _qf_json(cert.x_threshold),
        "t_shift": _qf_json(cert.t_shift),
        "delta": _qf_json(cert.delta),
        "phi_bound": _qf_json(cert.phi_bound),
        "phi_upper": rational_str(cert.phi_upper),
        "mu": _poly_json(cert.mu),
        "largest_root": _bracket_json(cert.root_bracket.lo, cert.root_bracket.hi),
        "threshold_upper": rational_str(cert.threshold_upper),
        "x_above_roots": cert.x_above_roots,
        "certified": cert.certified,
    }
    if not cert.certified:
        raise InvariantBreach("certificate construction finished without certifying")
    return out, "CERTIFIED"


def cmd_assign(f, args):
    inst = _need_instance(f, "assign")
    stats = instance_stats(inst)
    if not stats.sum_leq_identity:
        raise HypothesisViolated("E sum v_i v_i^* <= I")
    a = greedy_interlacing_assignment(inst, args.width, guard=args.guard_outcomes)
    thr = _threshold(stats.eps)
    upper = thr.upper(DEFAULT_WIDTH)
    within = a.realized_norm_bracket[1] <= upper + args.width
    out = {
        "chosen": list(a.chosen),
        "realized_norm": _bracket_json(*a.realized_norm_bracket),
        "expectation_largest_root": _bracket_json(a.expectation_bracket.lo, a.expectation_bracket.hi),
        "eps": rational_str(stats.eps),
        "threshold": _qf_json(thr),
        "threshold_upper": rational_str(upper),
        "within_threshold": within,
    }
    if not within:
        raise InvariantBreach("greedy outcome exceeds (1 + sqrt eps)^2")
    return out, "SATISFIED"


def _vectors(f, what):
    if f.vectors is None:
        raise ParseError(f"{what} needs a file with 'vectors'")
    return list(f.vectors)


def _partition_json(p):
    return {
        "blocks": [list(b) for b in p.blocks],
        "block_norms": [_bracket_json(lo, hi) for lo, hi in p.block_norm_brackets],
        "bound": _qf_json(p.bound),
        "bound_upper": rational_str(p.bound_upper),
    }


def cmd_partition(f, args):
    vs = _vectors(f, "partition")
    delta = Fraction(args.delta) if args.delta is not None else None
    p = partition_vectors(vs, args.r, delta, args.width, guard=args.guard_outcomes)
    return _partition_json(p), "SATISFIED"


def cmd_bruteforce(f, args):
    if args.mode == "assignment":
        inst = _need_instance(f, "bruteforce --mode assignment")
        a = brute_force_best_assignment(inst, args.width, args.guard_outcomes)
        return {"chosen": list(a.chosen), "realized_norm": _bracket_json(*a.realized_norm_bracket)}, "SATISFIED"
    vs = _vectors(f, "bruteforce --mode partition")
    p = brute_force_partition_oracle(vs, args.r, args.width, args.partition_guard)
    return _partition_json(p), "SATISFIED"


COMMANDS = {
    "mixedchar": cmd_mixedchar,
    "verify-identity": cmd_verify_identity,
    "certify": cmd_certify,
    "assign": cmd_assign,
    "partition": cmd_partition,
    "bruteforce": cmd_bruteforce,
}


def _rational_arg(text):
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None
    return q


def _positive_rational(text):
    q = _rational_arg(text)
    if q <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return q


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="instance JSON file")
    common.add_argument("--width", type=_positive_rational, default=DEFAULT_WIDTH, help="root bracket width (default 2^-40)")
    common.add_argument("--guard-outcomes", type=int, default=DEFAULT_GUARD, help="enumeration guard (default 10^6)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="accepted for interface compatibility; computation is single-threaded")
    common.add_argument("--audit", action="store_true", help="keep subset terms in mixedchar output")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="mssbound", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("mixedchar", parents=[common], help="mixed characteristic polynomial")
    sub.add_parser("verify-identity", parents=[common], help="expected char poly == mixed char poly")
    p = sub.add_parser("certify", parents=[common], help="(1 + sqrt eps)^2 barrier certificate")
    p.add_argument("--eps", type=_positive_rational)
    sub.add_parser("assign", parents=[common], help="greedy outcome within (1 + sqrt eps)^2")
    p = sub.add_parser("partition", parents=[common], help="r-way partition of a vector list")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=_positive_rational)
    p = sub.add_parser("bruteforce", parents=[common], help="exhaustive oracles")
    p.add_argument("--mode", choices=("assignment", "partition"), default="assignment")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--partition-guard", type=int, default=PARTITION_GUARD, help="max r^m labelings (default 3^8)")
    return parser


def run(argv=None):
    """Returns (report dict, exit code); never raises on library errors."""
    args = build_parser().parse_args(argv)
    flags = {
        "width": rational_str(args.width),
        "guard_outcomes": args.guard_outcomes,
        "audit": args.audit,
    }
    for extra in ("eps", "r", "delta", "mode"):
        val = getattr(args, extra, None)
        if val is not None:
            flags[extra] = rational_str(val) if isinstance(val, Fraction) else val
    report = {"command": args.command, "flags": flags, "version": __version__}
    try:
        with open(args.input, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        report.update(status="ERROR", error=str(exc), input_digest=None)
        return report, 4, args
    report["input_digest"] = digest(data)
    try:
        f = parse_instance(data.decode("utf-8"))
        results, status = COMMANDS[args.command](f, args)
        report.update(results=results, status=status)
        code = 0
    except MSSError as exc:
        report.update(status=exc.status, error=str(exc), error_kind=getattr(exc, "tag", type(exc).__name__))
        code = exc.exit_code
    except (ValueError, ArithmeticError) as exc:
        report.update(status="ERROR", error=str(exc), error_kind=type(exc).__name__)
        code = 1
    return report, code, args


def main(argv=None) -> int:
    report, code, args = run(argv)
    text = dump_report(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
