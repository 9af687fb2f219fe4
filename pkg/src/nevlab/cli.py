"""Command-line entry points.

``nevlab list`` prints a JSON manifest of the map and curve galleries.
``nevlab run --config FILE --out DIR [--threads N] [--svg] [--assert]``
runs one configured experiment and writes its artifacts into DIR.

Exit codes: 0 success; 2 config error (bad file, unknown key or gallery
name); 3 computational error; 4 check failure when --assert is passed.
Errors are reported as one-line JSON records on stderr.  The environment
variable NEVLAB_PRECISION (double or extended) selects the floating
mode for the whole process.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ComputationError, ConfigError
from .funcrep import gallery_manifest
from .precision import MODE as PRECISION_MODE
from .projcurve import curve_gallery
from .runner import parse_config, run_experiment


def _error_record(kind, err):
    return json.dumps({"error": kind, "type": type(err).__name__,
                       "message": str(err)}, sort_keys=True)


def _cmd_list(_args):
    curves = curve_gallery()
    manifest = {
        "precision": PRECISION_MODE,
        "maps": gallery_manifest(),
        "curves": [{"name": name, "dim": curves[name].n,
                    "radius": ("inf" if not curves[name].disc.bounded
                               else curves[name].disc.radius)}
                   for name in sorted(curves)],
    }
    print(json.dumps(manifest, indent=2, sort_keys=True))
    return 0


def _cmd_run(args):
    try:
        cfg = parse_config(args.config)
    except ConfigError as err:
        print(_error_record("config", err), file=sys.stderr)
        return 2
    try:
        result = run_experiment(cfg, args.out, threads=args.threads,
                                svg=args.svg)
    except ConfigError as err:
        print(_error_record("config", err), file=sys.stderr)
        return 2
    except ComputationError as err:
        print(_error_record("computation", err), file=sys.stderr)
        return 3
    if args.assert_checks and not result["ok"]:
        record = json.dumps(
            {"error": "assertion",
             "message": "experiment checks failed",
             "exceptional_finite": result["exceptional"].finite},
            sort_keys=True)
        print(record, file=sys.stderr)
        return 4
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="nevlab",
        description="Value-distribution experiments for concrete "
                    "holomorphic maps on discs")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the gallery manifest as JSON")

    p_run = sub.add_parser("run", help="run one configured experiment")
    p_run.add_argument("--config", required=True,
                       help="experiment config file")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--threads", type=int, default=1,
                       help="worker-pool cap (default 1)")
    p_run.add_argument("--svg", action="store_true",
                       help="also write plot.svg")
    p_run.add_argument("--assert", dest="assert_checks",
                       action="store_true",
                       help="exit 4 when the experiment checks fail")

    args = parser.parse_args(argv)
    if args.command == "list":
        return _cmd_list(args)
    return _cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
