"""Batch command-line front end.

Exit codes: 0 success or equivalent, 1 distinct, 2 self-check failure,
3 non-generic input, 64 usage or parse error.
"""
import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import tensor_core as tc
from .elasticity import decompose, isotropic, random_elasticity, reconstruct
from .errors import ElasinvError, FormatError, NonGenericError, RecoveryFailedError
from .genericity import DEFAULT_THRESHOLD, genericity_report
from .io import read_tensor, tensor_to_json
from .separation import Decision, equivalent, invariant_set, recover_rotation

EXIT_OK, EXIT_DISTINCT, EXIT_SELFCHECK, EXIT_NONGENERIC, EXIT_USAGE = 0, 1, 2, 3, 64
SETS = ("s21", "s19", "s18")


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-7
    genericity_threshold: float = DEFAULT_THRESHOLD
    seed: int = 0
    invariant_set: str = "s21"
    output: str = "json"

    def __post_init__(self):
        if not self.tolerance > 0 or not self.genericity_threshold > 0:
            raise FormatError("tolerance and genericity threshold must be positive")
        if self.invariant_set not in SETS:
            raise FormatError(f"unknown invariant set {self.invariant_set!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-7,
                        help="degree-weighted relative tolerance (default 1e-7)")
    common.add_argument("--gen-threshold", type=float, default=DEFAULT_THRESHOLD,
                        help="genericity detector threshold (default 1e-8)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--set", choices=SETS, default="s21", dest="invariant_set",
                        help="invariant set: 21 polynomial, 19 polynomial, 18 rational")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = _Parser(prog="elasinv", description="Rotation invariants of elasticity tensors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[common], help="harmonic decomposition")
    p.add_argument("file")
    p.add_argument("--reconstruct", action="store_true",
                   help="also report the reconstruction round-trip error")

    p = sub.add_parser("invariants", parents=[common], help="separating invariant set")
    p.add_argument("file")

    p = sub.add_parser("genericity", parents=[common], help="genericity report")
    p.add_argument("file")

    p = sub.add_parser("compare", parents=[common], help="orbit equivalence of two tensors")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--recover-rotation", action="store_true",
                   help="on equivalence, also return g with g * E1 = E2")

    p = sub.add_parser("gen", parents=[common], help="generate a tensor file")
    p.add_argument("--kind", choices=("generic", "isotropic", "rotated-copy"), default="generic")
    p.add_argument("--input", help="source tensor for --kind rotated-copy")

    p = sub.add_parser("selfcheck", parents=[common], help="run the acceptance checks")
    p.add_argument("--only", nargs="+", metavar="CHECK", help="run only the named checks")
    return parser


def _emit(payload, fmt, out):
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(_as_text(payload) + "\n")


def _as_text(payload, indent=""):
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_as_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(indent + "  " + " ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def cmd_decompose(args, cfg, out):
    E = read_tensor(args.file)
    dec = decompose(E)
    payload = dec.to_dict()
    if args.reconstruct:
        back = reconstruct(dec)
        payload["round_trip_error"] = tc.norm(back - E) / max(tc.norm(E), 1e-300)
    _emit(payload, cfg.output, out)
    return EXIT_OK


def cmd_invariants(args, cfg, out):
    E = read_tensor(args.file)
    vec = invariant_set(E, cfg.invariant_set, cfg.genericity_threshold)
    _emit({"set": cfg.invariant_set, "invariants": vec.to_json()}, cfg.output, out)
    return EXIT_OK


def cmd_genericity(args, cfg, out):
    report = genericity_report(decompose(read_tensor(args.file)).H, cfg.genericity_threshold)
    _emit(report.to_dict(), cfg.output, out)
    return EXIT_OK if report.generic else EXIT_NONGENERIC


def cmd_compare(args, cfg, out):
    E1, E2 = read_tensor(args.file1), read_tensor(args.file2)
    result = equivalent(E1, E2, cfg.tolerance, cfg.genericity_threshold, cfg.invariant_set)
    code = {Decision.EQUIVALENT: EXIT_OK, Decision.DISTINCT: EXIT_DISTINCT,
            Decision.NON_GENERIC: EXIT_NONGENERIC}[result.decision]
    payload = {"set": cfg.invariant_set, "tolerance": cfg.tolerance}
    if args.recover_rotation and result.decision == Decision.EQUIVALENT:
        try:
            result.rotation, result.residual = recover_rotation(E1, E2, return_residual=True)
        except RecoveryFailedError as exc:
            payload["rotation_error"] = str(exc)
            code = EXIT_DISTINCT
    payload.update(result.to_dict())
    _emit(payload, cfg.output, out)
    return code


def cmd_gen(args, cfg, out):
    rng = np.random.default_rng(cfg.seed)
    if args.kind == "generic":
        payload = tensor_to_json(random_elasticity(rng))
    elif args.kind == "isotropic":
        c1, c2 = rng.uniform(0.5, 2.0, size=2)
        payload = tensor_to_json(isotropic(c1, c2))
    else:
        if not args.input:
            raise FormatError("--kind rotated-copy needs --input FILE")
        g = tc.random_rotation(rng)
        payload = tensor_to_json(tc.rotate(g, read_tensor(args.input)), rotation=g)
    out.write(json.dumps(payload) + "\n")
    return EXIT_OK


def cmd_selfcheck(args, cfg, out):
    from .checks import CHECKS, run_checks
    names = args.only
    if names:
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise FormatError(f"unknown checks {unknown}; available: {list(CHECKS)}")
    results = run_checks(names)
    if cfg.output == "json":
        _emit({"checks": [{"name": r.name, "passed": r.passed, "detail": r.detail,
                           "seconds": round(r.seconds, 3)} for r in results],
               "passed": all(r.passed for r in results)}, "json", out)
    else:
        for r in results:
            out.write(r.line() + "\n")
    failed = [r.name for r in results if not r.passed]
    if failed:
        sys.stderr.write(f"failing checks: {', '.join(failed)}\n")
        return EXIT_SELFCHECK
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "invariants": cmd_invariants,
    "genericity": cmd_genericity,
    "compare": cmd_compare,
    "gen": cmd_gen,
    "selfcheck": cmd_selfcheck,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.tol, args.gen_threshold, args.seed, args.invariant_set, args.format)
        return COMMANDS[args.command](args, cfg, out)
    except NonGenericError as exc:
        payload = {"error": str(exc)}
        if exc.report is not None:
            payload["genericity"] = exc.report.to_dict()
        _emit(payload, "json" if args.format == "json" else "text", out)
        return EXIT_NONGENERIC
    except ElasinvError as exc:
        sys.stderr.write(f"elasinv: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
