"""
Command-line front end for the control-ability analysis toolkit.

Verbs:
    analyze       full report (analytic and oracle volumes, factors, warnings)
    factors       the factor block of ``analyze``
    region        boundary polygon of a 2-D region as x,y CSV
    converge      oracle volume against the analytic limit over growing horizons
    limit         perturbed bidiagonal volumes approaching a Jordan block
    write-system  re-emit a system file with 17 significant digits

Machine formats (json, csv) go to stdout with 17 significant digits; tables
use 4. Logging goes to stderr. The exit code is 0 on success, 1 for input
errors, 2 for structural errors and 3 for unsupported requests.
"""

import argparse
import json
import logging
import sys

import pandas as pd

import config
from analyzers import get_analyzer, is_error
from analyzers.region_analyzer import write_polygon_csv
from models import CONVENTIONS, REGION_KINDS
from utils.errors import CtlError
from utils.system_loader import dump_system, load_system

logger = logging.getLogger(__name__)

TABLE_FLOAT = "{:.4g}".format


def _deltas(text):
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"deltas must be comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("at least one delta is required")
    return values


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ctl",
        description="Reach and control region volumes of linear discrete-time systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="full analysis report")
    analyze.add_argument("--system", required=True, help="system file (JSON)")
    analyze.add_argument("--horizon", type=_positive_int, default=config.DEFAULT_HORIZON)
    analyze.add_argument("--region", choices=REGION_KINDS, default="reach")
    analyze.add_argument("--format", choices=("json", "table"), default="json")
    analyze.add_argument("--threads", type=_positive_int, default=None, help="oracle worker cap (default CTL_THREADS)")

    factors = sub.add_parser("factors", help="shape factors only")
    factors.add_argument("--system", required=True)
    factors.add_argument("--region", choices=REGION_KINDS, default="reach")
    factors.add_argument("--format", choices=("json", "table"), default="json")

    region = sub.add_parser("region", help="2-D region boundary as x,y CSV")
    region.add_argument("--system", required=True)
    region.add_argument("--horizon", type=_positive_int, default=config.DEFAULT_HORIZON)
    region.add_argument("--out", default=None, help="CSV path (default: stdout)")
    region.add_argument("--convention", choices=CONVENTIONS, default="symmetric")
    region.add_argument("--region", choices=REGION_KINDS, default="reach")
    region.add_argument("--eigen", action="store_true", help="export the region in eigen-coordinates")

    converge = sub.add_parser("converge", help="oracle convergence toward the analytic volume")
    converge.add_argument("--system", required=True)
    converge.add_argument("--max-horizon", type=_positive_int, required=True)
    converge.add_argument("--step", type=_positive_int, required=True)
    converge.add_argument("--region", choices=REGION_KINDS, default="reach")
    converge.add_argument("--format", choices=("csv", "table", "json"), default="table")
    converge.add_argument("--threads", type=_positive_int, default=None)

    limit = sub.add_parser("limit", help="perturbed volumes approaching a Jordan block")
    limit.add_argument("--lambda", dest="lam", type=float, required=True)
    limit.add_argument("--size", type=_positive_int, required=True)
    limit.add_argument("--deltas", type=_deltas, required=True, help="comma-separated, e.g. 0.1,0.01")
    limit.add_argument("--b-last", type=float, default=1.0)
    limit.add_argument("--format", choices=("csv", "table", "json"), default="table")

    write = sub.add_parser("write-system", help="re-emit a system file with 17 significant digits")
    write.add_argument("--system", required=True)
    write.add_argument("--out", default=None, help="output path (default: stdout)")

    return parser


def _emit_json(payload, out):
    out.write(json.dumps(payload, indent=2))
    out.write("\n")


def _emit_frame(frame, fmt, out):
    if fmt == "csv":
        frame.to_csv(out, index=False, float_format="%.17g", lineterminator="\n")
    elif fmt == "json":
        _emit_json(frame.to_dict(orient="records"), out)
    else:
        out.write(frame.to_string(index=False, float_format=TABLE_FLOAT))
        out.write("\n")


def _emit_report(report, fmt, out):
    if fmt == "json":
        _emit_json(report, out)
        return
    flat = pd.json_normalize(report, sep=".").iloc[0]
    rows = []
    for key, value in flat.items():
        if isinstance(value, float):
            value = TABLE_FLOAT(value)
        elif isinstance(value, list):
            value = ", ".join(TABLE_FLOAT(v) if isinstance(v, float) else str(v) for v in value)
        rows.append((key, value))
    width = max(len(key) for key, _ in rows)
    for key, value in rows:
        out.write(f"{key:<{width}}  {value}\n")


def _cmd_analyze(args, out):
    report = get_analyzer('volume').analyze(args.system, args.horizon, args.region, args.threads)
    if is_error(report):
        return report
    _emit_report(report, args.format, out)


def _cmd_factors(args, out):
    report = get_analyzer('volume').factors(args.system, args.region)
    if is_error(report):
        return report
    _emit_report(report, args.format, out)


def _cmd_region(args, out):
    result = get_analyzer('region').region(
        args.system, args.horizon, args.convention, args.region, args.eigen, out=args.out,
    )
    if is_error(result):
        return result
    if args.out is None:
        frame = pd.DataFrame(result["vertices"], columns=["x", "y"])
        frame.to_csv(out, index=False, float_format="%.17g", lineterminator="\n")
    else:
        summary = {k: v for k, v in result.items() if k != "vertices"}
        summary["out"] = args.out
        _emit_json(summary, out)


def _cmd_converge(args, out):
    result = get_analyzer('volume').converge(args.system, args.max_horizon, args.step, args.region, args.threads)
    if is_error(result):
        return result
    _emit_frame(pd.DataFrame(result["rows"], columns=["N", "oracle", "analytic", "gap"]), args.format, out)


def _cmd_limit(args, out):
    result = get_analyzer('volume').limit(args.lam, args.size, args.deltas, args.b_last)
    if is_error(result):
        return result
    _emit_frame(pd.DataFrame(result["rows"], columns=["delta", "volume", "jordan_volume", "rel_error"]), args.format, out)


def _cmd_write_system(args, out):
    try:
        text = dump_system(load_system(args.system), args.out)
    except CtlError as e:
        logger.error(f"Error writing system: {e.code}: {str(e)}")
        return e.to_dict()
    if args.out is None:
        out.write(text)
        out.write("\n")


COMMANDS = {
    "analyze": _cmd_analyze,
    "factors": _cmd_factors,
    "region": _cmd_region,
    "converge": _cmd_converge,
    "limit": _cmd_limit,
    "write-system": _cmd_write_system,
}


def main(argv=None, out=None):
    """
    Run one command.

    Args:
        argv: Argument list (defaults to sys.argv[1:])
        out: Text stream for results (defaults to sys.stdout)

    Returns:
        int exit code
    """
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logger.info(f"Running command {args.command}")
    error = COMMANDS[args.command](args, out)
    if error is not None:
        _emit_json(error, out)
        return error["exit_code"]
    return 0


if __name__ == "__main__":
    sys.exit(main())
