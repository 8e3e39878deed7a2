"""Command-line interface.

Every command prints a single machine-readable report on stdout: JSON for
all commands except ``sweep``, which emits CSV rows (one per swept value).
JSON key order is fixed, numbers round-trip exactly through their printed
representation, and identical invocations produce byte-identical output.

Exit codes: 0 success, 1 invalid input (message on stderr), 2 verification
failure (a failing ``verify`` verdict or a positive ``nd-check`` violation
count), 3 numeric failure inside the LP.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import TVBoundError
from .moments import (
    MomentPair1D,
    MomentPairND,
    MomentsND,
    bound_report,
    tv_lower_bound_1d,
    tv_lower_bound_nd,
)
from .oracle import (
    GridSpec,
    OracleStatus,
    check_nd_bound_random,
    minimize_tv_on_grid,
)
from .witness import (
    construct_anchored_witness,
    construct_tight_witness,
    construct_two_point,
    construct_vanishing_sequence,
)

__all__ = ["RunConfig", "parse_args", "run", "main"]

#: |tv_min - bound| at or below this certifies the grid optimum as tight.
VERIFY_TIGHT_TOL = 1e-6
#: tv_min below bound by more than this flags a genuine violation.
VERIFY_SOUND_TOL = 1e-8

_SWEEP_COLUMNS = (
    "swept_value",
    "gap_a",
    "radical_v",
    "tight_bound",
    "two_point_tv",
    "anchored_p_tv",
    "anchored_q_tv",
)


class CLIError(ValueError):
    """Invalid command line or input file; maps to exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    """A parsed invocation: the command name plus its flag values."""

    command: str
    params: Mapping[str, Any]


class _Parser(argparse.ArgumentParser):
    # argparse exits the process on bad flags; raise instead so the caller
    # controls the exit code
    def error(self, message: str):
        raise CLIError(message)


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in {"true", "1", "yes"}:
        return True
    if lowered in {"false", "0", "no"}:
        return False
    raise CLIError(f"expected true or false, got {text!r}")


def _add_pair_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mp", type=float, required=True, help="mean of the first distribution")
    parser.add_argument("--sp", type=float, required=True, help="stddev of the first distribution")
    parser.add_argument("--mq", type=float, required=True, help="mean of the second distribution")
    parser.add_argument("--sq", type=float, required=True, help="stddev of the second distribution")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tvbounds", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="closed-form bound report for one pair")
    _add_pair_flags(p)

    p = sub.add_parser("witness", help="pair attaining the tight bound")
    _add_pair_flags(p)

    p = sub.add_parser("two-point", help="the unique pair on a shared two-point support")
    _add_pair_flags(p)

    p = sub.add_parser("case-c", help="anchored three-point pair (exclusive atom on the first side)")
    _add_pair_flags(p)
    p.add_argument("--q-param", type=float, default=0.5, help="mass split of the two-point side, in (0,1)")

    p = sub.add_parser("sequence", help="equal-means pair with TV exactly 1/k")
    p.add_argument("--m", type=float, default=0.0, help="common mean")
    p.add_argument("--sp", type=float, required=True)
    p.add_argument("--sq", type=float, required=True)
    p.add_argument("--k", type=int, required=True, help="sequence index, >= 2")

    p = sub.add_parser("verify", help="LP cross-check of the tight bound on a grid")
    _add_pair_flags(p)
    p.add_argument("--grid-lo", type=float, default=None)
    p.add_argument("--grid-hi", type=float, default=None)
    p.add_argument("--grid-n", type=int, default=121)
    p.add_argument(
        "--include-witness",
        type=_parse_bool,
        default=True,
        metavar="BOOL",
        help="fold the witness support into the grid (default true)",
    )

    p = sub.add_parser("nd-bound", help="trace bound from a JSON moments file")
    p.add_argument("path", help='JSON file {"mean_p":[...],"cov_p":[[...]],"mean_q":[...],"cov_q":[[...]]}')

    p = sub.add_parser("nd-check", help="randomized validity check of the trace bound")
    p.add_argument("--dims", type=int, required=True)
    p.add_argument("--atoms", type=int, default=None, help="atoms per trial (default dims + 4)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sweep", help="closed-form bounds over a swept moment flag, as CSV")
    p.add_argument("--param", choices=("mp", "sp", "mq", "sq"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--mp", type=float, default=None)
    p.add_argument("--sp", type=float, default=None)
    p.add_argument("--mq", type=float, default=None)
    p.add_argument("--sq", type=float, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    return parser


def parse_args(argv) -> RunConfig:
    namespace = build_parser().parse_args(argv)
    params = vars(namespace)
    command = params.pop("command")
    return RunConfig(command, params)


def _pair_from(params: Mapping[str, Any]) -> MomentPair1D:
    return MomentPair1D.from_scalars(
        params["mp"], params["sp"], params["mq"], params["sq"]
    )


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _cmd_bound(params: Mapping[str, Any]) -> int:
    report = bound_report(_pair_from(params))
    _emit_json(
        {
            "input": {
                "mean_p": params["mp"],
                "stddev_p": params["sp"],
                "mean_q": params["mq"],
                "stddev_q": params["sq"],
            },
            "gap_a": report.gap_a,
            "radical_v": report.radical_v,
            "tight_bound": report.tight_bound,
            "attained": report.attained,
            "two_point_tv": report.two_point_tv,
            "sibling_branch_tv": report.sibling_branch_tv,
            "sibling_branch_valid": report.sibling_branch_valid,
            "anchored_p_tv": report.anchored_p_tv,
            "anchored_q_tv": report.anchored_q_tv,
        }
    )
    return 0


def _cmd_witness(params: Mapping[str, Any]) -> int:
    _emit_json(construct_tight_witness(_pair_from(params)).to_json_dict())
    return 0


def _cmd_two_point(params: Mapping[str, Any]) -> int:
    _emit_json(construct_two_point(_pair_from(params)).to_json_dict())
    return 0


def _cmd_case_c(params: Mapping[str, Any]) -> int:
    pair = _pair_from(params)
    _emit_json(construct_anchored_witness(pair, params["q_param"]).to_json_dict())
    return 0


def _cmd_sequence(params: Mapping[str, Any]) -> int:
    witness = construct_vanishing_sequence(
        params["m"], params["sp"], params["sq"], params["k"]
    )
    _emit_json(witness.to_json_dict())
    return 0


def _cmd_verify(params: Mapping[str, Any]) -> int:
    pair = _pair_from(params)
    lo, hi = params["grid_lo"], params["grid_hi"]
    if (lo is None) != (hi is None):
        raise CLIError("--grid-lo and --grid-hi must be given together")
    if lo is None:
        spec = GridSpec.default_for(pair, count=params["grid_n"])
    else:
        spec = GridSpec(lo, hi, params["grid_n"])
    include = params["include_witness"]
    result = minimize_tv_on_grid(pair, spec, include_witness_points=include)
    bound = tv_lower_bound_1d(pair)

    if result.status is OracleStatus.NUMERIC_FAILURE:
        verdict, code = "numeric_failure", 3
    elif result.status is OracleStatus.INFEASIBLE:
        verdict, code = "infeasible", 2
    elif result.tv_min < bound - VERIFY_SOUND_TOL:
        verdict, code = "violated", 2
    elif abs(result.tv_min - bound) <= VERIFY_TIGHT_TOL:
        verdict, code = "tight", 0
    else:
        verdict, code = "sound", 0

    _emit_json(
        {
            "input": {
                "mean_p": params["mp"],
                "stddev_p": params["sp"],
                "mean_q": params["mq"],
                "stddev_q": params["sq"],
            },
            "grid": {
                "lo": spec.lo,
                "hi": spec.hi,
                "count": spec.count,
                "include_witness": include,
            },
            "tight_bound": bound,
            "oracle": result.to_json_dict(),
            "gap_to_bound": None if result.tv_min is None else result.tv_min - bound,
            "verdict": verdict,
        }
    )
    return code


def _load_nd_pair(path: str) -> MomentPairND:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise CLIError(f"cannot read moments file {path!r}: {exc}") from exc
    try:
        p = MomentsND(payload["mean_p"], payload["cov_p"])
        q = MomentsND(payload["mean_q"], payload["cov_q"])
    except KeyError as exc:
        raise CLIError(f"moments file is missing key {exc}") from exc
    return MomentPairND(p, q)


def _cmd_nd_bound(params: Mapping[str, Any]) -> int:
    pair = _load_nd_pair(params["path"])
    a = pair.p_side.mean - pair.q_side.mean
    _emit_json(
        {
            "dimension": pair.dim,
            "gap_norm_sq": float(a @ a),
            "trace_p": pair.p_side.trace,
            "trace_q": pair.q_side.trace,
            "bound": tv_lower_bound_nd(pair),
        }
    )
    return 0


def _cmd_nd_check(params: Mapping[str, Any]) -> int:
    dims = params["dims"]
    atoms = params["atoms"] if params["atoms"] is not None else dims + 4
    violations = check_nd_bound_random(dims, atoms, params["trials"], params["seed"])
    _emit_json(
        {
            "dims": dims,
            "atoms": atoms,
            "trials": params["trials"],
            "seed": params["seed"],
            "violations": violations,
        }
    )
    return 2 if violations > 0 else 0


def _sweep_values(start: float, stop: float, step: float) -> list[float]:
    if step <= 0.0:
        raise CLIError(f"--step must be positive, got {step}")
    if stop < start:
        raise CLIError("--stop must not be less than --start")
    count = int((stop - start) / step + 1e-9) + 1
    return [start + i * step for i in range(count)]


def _cmd_sweep(params: Mapping[str, Any]) -> int:
    swept = params["param"]
    fixed = {}
    for name in ("mp", "sp", "mq", "sq"):
        if name == swept:
            continue
        if params[name] is None:
            raise CLIError(f"--{name} is required when sweeping --{swept}")
        fixed[name] = params[name]

    rows = []
    for value in _sweep_values(params["start"], params["stop"], params["step"]):
        scalars = dict(fixed)
        scalars[swept] = value
        report = bound_report(
            MomentPair1D.from_scalars(
                scalars["mp"], scalars["sp"], scalars["mq"], scalars["sq"]
            )
        )
        rows.append(
            {
                "swept_value": value,
                "gap_a": report.gap_a,
                "radical_v": report.radical_v,
                "tight_bound": report.tight_bound,
                "two_point_tv": report.two_point_tv,
                "anchored_p_tv": report.anchored_p_tv,
                "anchored_q_tv": report.anchored_q_tv,
            }
        )

    if params["format"] == "json":
        _emit_json({"param": swept, "rows": rows})
        return 0
    out = [",".join(_SWEEP_COLUMNS)]
    for row in rows:
        out.append(
            ",".join(
                "" if row[col] is None else repr(row[col]) for col in _SWEEP_COLUMNS
            )
        )
    sys.stdout.write("\n".join(out) + "\n")
    return 0


_HANDLERS = {
    "bound": _cmd_bound,
    "witness": _cmd_witness,
    "two-point": _cmd_two_point,
    "case-c": _cmd_case_c,
    "sequence": _cmd_sequence,
    "verify": _cmd_verify,
    "nd-bound": _cmd_nd_bound,
    "nd-check": _cmd_nd_check,
    "sweep": _cmd_sweep,
}


def run(config: RunConfig) -> int:
    """Execute one parsed command; returns the process exit code."""
    return _HANDLERS[config.command](config.params)


def main(argv=None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
        code = run(config)
    except (CLIError, TVBoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 1
    if argv is None:  # invoked as a console script
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
