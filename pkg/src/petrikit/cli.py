"""Command-line front end: ``petrikit {rr,petri,schiffer,verify}``.

Reports are canonical JSON (sorted keys, exact "num/den" strings) on
standard output, or in ``--json-out``.  Exit codes: 0 success, 1 property
failure, 2 input validation failure (JSON error object on standard error).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

from . import __version__, cohom, deform, petri
from .curve import riemann_roch_space
from .exact import format_rational
from .io import (
    InputError,
    curve_from_json,
    curve_to_json,
    divisor_from_json,
    divisor_to_json,
    dumps,
    function_to_json,
    laurent_polynomial_to_json,
    load_json,
    schiffer_from_json,
    schiffer_to_json,
    series_to_json,
)

U64_MAX = 2**64 - 1


def _u64(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _load_curve_divisor(args):
    curve = curve_from_json(load_json(args.curve))
    divisor = divisor_from_json(curve, load_json(args.divisor))
    inputs = {"curve": curve_to_json(curve), "divisor": divisor_to_json(divisor), "genus": curve.genus}
    return curve, divisor, inputs


def cmd_rr(args) -> tuple[dict, dict, int]:
    curve, divisor, inputs = _load_curve_divisor(args)
    basis = riemann_roch_space(curve, divisor)
    return inputs, {"dimension": len(basis), "basis": [function_to_json(s) for s in basis]}, 0


def cmd_petri(args) -> tuple[dict, dict, int]:
    curve, divisor, inputs = _load_curve_divisor(args)
    inputs["tower_depth"] = args.tower_depth
    try:
        pm = petri.build_mu0(curve, divisor)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    levels = petri.tower(pm, args.tower_depth)
    tower = []
    for lvl in levels:
        for v in lvl.values:
            tower.append(
                {"level": v.level, "kappa": v.kernel_element.label(), "nonzero": v.nonzero, "value": str(v.value)}
            )
    results = {
        "sections": [str(s) for s in pm.sections],
        "duals": [str(w) for w in pm.duals],
        "domain_dim": pm.domain_dim,
        "mu0_rank": pm.rank,
        "kernel_dim": len(pm.kernel),
        "kernel": [k.label() for k in pm.kernel],
        "base_point_free": pm.base_point_free,
        "tower": tower,
    }
    return inputs, results, 0


def _kappa(pm: petri.PetriMap) -> petri.PetriTensor:
    if pm.kernel:
        return pm.kernel[0]
    return petri.PetriTensor.zero(len(pm.sections), len(pm.duals))


def cmd_schiffer(args) -> tuple[dict, dict, int]:
    curve, divisor, inputs = _load_curve_divisor(args)
    lift = schiffer_from_json(curve, load_json(args.schiffer))
    inputs.update(schiffer=schiffer_to_json(lift), mode=args.mode, t_order=args.t_order)
    try:
        cohom.check_marked_place(curve, divisor, lift.marked_place)
    except ValueError as exc:
        raise InputError(str(exc)) from None

    mode = args.mode
    if mode == "extend":
        sections = []
        for s0 in riemann_roch_space(curve, divisor):
            r = deform.extend_section(lift, s0, divisor, args.t_order, args.n_pole, oracle=args.oracle)
            entry: dict[str, Any] = {
                "section": str(s0),
                "achieved_order": r.achieved_order,
                "corrections": [str(g) for g in r.corrections],
            }
            if r.obstruction is not None:
                entry["obstruction_tail"] = series_to_json(r.obstruction.tail)
            sections.append(entry)
        results = {
            "sections": sections,
            "achieved_order": min([s["achieved_order"] for s in sections], default=args.t_order - 1),
            "obstructed": any("obstruction_tail" in s for s in sections),
        }
    elif mode == "kernel":
        inputs["n_pole"] = args.n_pole
        dims = deform.kernel_model(lift, divisor, args.n_pole, args.t_order)
        results = {"dims": dims, "h0": len(riemann_roch_space(curve, divisor))}
    elif mode == "pair":
        try:
            pm = petri.build_mu0(curve, divisor)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        kappa = _kappa(pm)
        value = deform.obstruction_pairing(lift, kappa, pm)
        results = {
            "kappa": kappa.label(),
            "value": format_rational(value),
            "contraction": format_rational(deform.contraction_pairing(lift, kappa, pm)),
            "nonzero": value != 0,
        }
        if args.oracle:
            results["first_order_extendable_dim"] = deform.first_order_extendable_dimension(lift, divisor, oracle=True)
    else:
        if not lift.is_pure():
            raise InputError("symbol mode needs pure Schiffer data (beta only at t_order 1)")
        sym = deform.symbol_of_order(lift, args.t_order)
        results = {"n": args.t_order, "series": laurent_polynomial_to_json(sym)}
    return inputs, results, 0


def cmd_verify(args) -> tuple[dict, dict, int]:
    from .verify import run_suite

    props = run_suite(args.suite, seed=args.seed, trials=args.trials)
    failed = [p["name"] for p in props if not p["passed"]]
    results = {"properties": props, "total": len(props), "failed": failed, "passed": not failed}
    return {"suite": args.suite, "trials": args.trials}, results, 0 if not failed else 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # the subcommand copy uses SUPPRESS so that flags given before the
    # subcommand are not overwritten by subparser defaults
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_u64, default=d(0), help="64-bit seed (default 0)")
    common.add_argument("--json-out", metavar="PATH", default=d(None), help="write the report here instead of stdout")
    common.add_argument(
        "--oracle", action="store_true", default=d(False), help="brute-force lifting oracle for vanishing tests"
    )
    common.add_argument(
        "--timing", action="store_true", default=d(False), help="include wall-clock milliseconds (breaks byte-identity)"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = _Parser(prog="petrikit", description=__doc__.splitlines()[0], parents=[_global_flags(False)])
    parser.add_argument("--version", action="version", version=f"petrikit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    rr = sub.add_parser("rr", parents=[common], help="Riemann-Roch space L(D)")
    rr.add_argument("curve")
    rr.add_argument("divisor")
    rr.set_defaults(handler=cmd_rr)

    pt = sub.add_parser("petri", parents=[common], help="Petri map and mu-tower")
    pt.add_argument("curve")
    pt.add_argument("divisor")
    pt.add_argument("--tower-depth", type=_nonnegative, default=2)
    pt.set_defaults(handler=cmd_petri)

    sc = sub.add_parser("schiffer", parents=[common], help="Schiffer deformation computations")
    sc.add_argument("curve")
    sc.add_argument("divisor")
    sc.add_argument("schiffer")
    sc.add_argument("--mode", choices=["extend", "kernel", "pair", "symbol"], default="extend")
    sc.add_argument("--t-order", type=_nonnegative, default=3, help="t-order N (symbol mode: n)")
    sc.add_argument("--n-pole", type=_nonnegative, default=0, help="minimum pole allowance at the marked place")
    sc.set_defaults(handler=cmd_schiffer)

    vf = sub.add_parser("verify", parents=[common], help="seeded property suites")
    vf.add_argument("--suite", choices=["algebra", "curve", "cohom", "petri", "deform", "all"], default="all")
    vf.add_argument("--trials", type=_positive, default=None, help="override per-property trial counts")
    vf.set_defaults(handler=cmd_verify)
    return parser


def _error(message: str, kind: str) -> int:
    sys.stderr.write(json.dumps({"error": {"kind": kind, "message": message}}, sort_keys=True) + "\n")
    return 2


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _error(str(exc), "usage")
    except SystemExit as exc:
        # --help and --version
        return 0 if exc.code in (0, None) else 2
    if args.command == "schiffer" and args.mode in ("extend", "kernel"):
        if args.t_order < 1:
            return _error("--t-order must be at least 1 for extend and kernel modes", "validation")

    start = time.perf_counter()
    try:
        inputs, results, code = args.handler(args)
    except (InputError, ValueError) as exc:
        # computation entry points raise ValueError only on violated preconditions
        return _error(str(exc), "validation")
    report: dict[str, Any] = {
        "command": args.command,
        "inputs": inputs,
        "seed": str(args.seed),
        "results": results,
        "version": __version__,
    }
    if args.timing:
        report["timing_ms"] = str(round((time.perf_counter() - start) * 1000))
    text = dumps(report)
    if args.json_out:
        try:
            with open(args.json_out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            return _error(f"{args.json_out}: {exc.strerror}", "io")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
