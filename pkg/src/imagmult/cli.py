"""
Command-line entry point.

Exit status is 0 when a command finds no theorem violation and no mismatch,
1 when it does, and 2 for unusable input.
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from .bench import bench_curve
from .config import DEFAULT_COEFF_BOUND, DEFAULT_MODULUS_BOUND, DEFAULT_PRIME_BOUND, Settings
from .diffsig import analyze
from .ecmatch import (
    EllipticAp,
    MatchReport,
    cross_verify,
    find_matching_curve,
    load_candidates,
    match_candidates,
    zero_trace_fraction,
)
from .exceptions import ImagMultError, PreconditionError, TheoremViolationError
from .imstruct import character_consistency
from .pipeline import run_curve
from .quadfield import (
    ImagQuadField,
    class_number,
    class_number_bound_check,
    enumerate_class_number_one,
    is_fundamental,
)
from .records import compare_streams
from .specfile import load_spec


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError(f"expected on or off, got {value!r}")
    return value == "on"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imagmult", description="Verify imaginary multiplication on genus 3 Jacobians."
    )
    parser.add_argument("--log-level", default=None, help="logging level (default: $IMAGMULT_LOG_LEVEL or WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="count, rebuild L_p and check every identity up to a prime bound")
    run.add_argument("spec", type=Path)
    run.add_argument("--primes-up-to", type=int, default=DEFAULT_PRIME_BOUND)
    run.add_argument("--shortcut", type=_on_off, default=False, metavar="on|off")
    run.add_argument("--workers", type=int, default=None)
    run.add_argument("--out", type=Path, default=None, help="record file; timings go to <out>.timings.jsonl")

    verify = sub.add_parser("verify", help="regenerate records and compare them with a golden file")
    verify.add_argument("spec", type=Path)
    verify.add_argument("golden", type=Path)
    verify.add_argument("--primes-up-to", type=int, default=DEFAULT_PRIME_BOUND)
    verify.add_argument("--shortcut", type=_on_off, default=False, metavar="on|off")
    verify.add_argument("--workers", type=int, default=None)

    bench = sub.add_parser("bench", help="time the full and shortcut paths at inert primes")
    bench.add_argument("spec", type=Path)
    bench.add_argument("--primes-up-to", type=int, default=DEFAULT_PRIME_BOUND)

    signature = sub.add_parser("signature", help="eigenvalues of the curve spec automorphism on differentials")
    signature.add_argument("spec", type=Path)

    classnum = sub.add_parser("classnum", help="class numbers by reduced forms")
    mode = classnum.add_mutually_exclusive_group(required=True)
    mode.add_argument("--disc", type=int)
    mode.add_argument("--enumerate-h1", action="store_true")
    classnum.add_argument("--bound", type=int, default=200)
    classnum.add_argument("--degree", type=int, default=1, help="degree over Q of the field of definition")

    match = sub.add_parser("match-ec", help="search for an elliptic curve with the traces of psi")
    match.add_argument("spec", type=Path)
    match.add_argument("--coeff-bound", type=int, default=DEFAULT_COEFF_BOUND)
    match.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    match.add_argument("--modulus-bound", type=int, default=DEFAULT_MODULUS_BOUND)
    match.add_argument("--candidates", type=Path, default=None, help='file of "A B" lines to test instead of a scan')
    match.add_argument("--workers", type=int, default=None)
    match.add_argument("--out", type=Path, default=None, help="write the survivors as JSON")
    return parser


def cmd_run(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    result = run_curve(spec, primes_up_to=args.primes_up_to, shortcut=args.shortcut, workers=args.workers)
    lines = [record.dumps() + "\n" for record in result.records]
    if args.out is None:
        sys.stdout.writelines(lines)
    else:
        args.out.write_text("".join(lines))
        timings = Path(f"{args.out}.timings.jsonl")
        timings.write_text("".join(json.dumps({"p": p, "elapsed_us": us}) + "\n" for p, us in result.timings))
    if result.violations:
        summary = {"curve": spec.name, "violations": len(result.violations), "details": result.violations}
        print(json.dumps(summary), file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    golden = args.golden.read_text().splitlines()
    result = run_curve(spec, primes_up_to=args.primes_up_to, shortcut=args.shortcut, workers=args.workers)
    report = compare_streams(golden, [record.dumps() for record in result.records])
    print(report.message)
    return EXIT_OK if report.identical else EXIT_VIOLATION


def cmd_bench(args: argparse.Namespace) -> int:
    report = bench_curve(load_spec(args.spec), args.primes_up_to)
    report.write_csv(sys.stdout)
    return EXIT_OK


def cmd_signature(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    automorphism = spec.automorphism_model()
    if automorphism is None:
        print(f"{args.spec}: the curve spec has no automorphism field", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = analyze(spec.curve(), automorphism)
    except TheoremViolationError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    print(f"curve: {spec.name}")
    print(report.render())
    return EXIT_OK


def cmd_classnum(args: argparse.Namespace) -> int:
    if args.disc is not None:
        result = class_number(args.disc)
        forms = " ".join(f"({a},{b},{c})" for a, b, c in result.forms)
        print(f"D = {result.D}  h = {result.h}  forms: {forms}")
        if is_fundamental(result.D):
            holds = class_number_bound_check(ImagQuadField.from_discriminant(result.D), args.degree)
            print(f"class number bound h <= {args.degree}: {'holds' if holds else 'fails'}")
        return EXIT_OK
    discriminants = enumerate_class_number_one(args.bound)
    for D in discriminants:
        print(f"D = {D}  h = 1")
    print(f"{len(discriminants)} fundamental discriminants with h = 1 and |D| <= {args.bound}")
    return EXIT_OK


def cmd_match_ec(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    M = spec.field()
    result = run_curve(spec, primes_up_to=args.prime_bound, workers=args.workers)
    aps = [EllipticAp(r.p, r.a_p) for r in result.records if r.a_p is not None]
    values = [v for r in result.records if (v := r.hecke_value()) is not None]

    try:
        consistency = character_consistency(values, M, args.modulus_bound)
    except PreconditionError as exc:
        print(f"character consistency: not run ({exc})")
    else:
        if consistency.consistent:
            print(
                f"character consistency: modulus {consistency.modulus}, "
                f"{len(consistency.table)} residues, {consistency.collisions} collisions"
            )
        else:
            print(f"character consistency: no modulus up to {args.modulus_bound}")

    if args.candidates is not None:
        survivors = match_candidates(load_candidates(args.candidates), aps, args.prime_bound)
    else:
        survivors = find_matching_curve(aps, args.coeff_bound, args.prime_bound)
    if not survivors:
        print(f"no matching curve with |A|, |B| <= {args.coeff_bound}")
    if args.out is not None:
        report = MatchReport.from_search(spec.name, aps, survivors, args.coeff_bound, args.prime_bound)
        args.out.write_text(report.dumps())
    for E in survivors:
        mismatches = cross_verify(E, aps)
        print(
            f"{E}  consistent at {len(aps) - len(mismatches)} primes, "
            f"a_p = 0 at {zero_trace_fraction(E, args.prime_bound):.2f} of good primes"
        )
    return EXIT_VIOLATION if result.violations else EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "signature": cmd_signature,
    "classnum": cmd_classnum,
    "match-ec": cmd_match_ec,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = Settings.from_env()
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except ImagMultError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
