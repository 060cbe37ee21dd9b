# Copyright (c) 2026, QCS
# License: see license.txt

"""``qvortex {field|centers|moments|trace}``: run one report and write its files.

Exit codes: 0 success, 1 configuration error, 2 output error, 3 numerical
failure (non-convergence, singular node, degenerate zero set).
"""

import argparse
import json
import os
import sys

from qvortex import __version__, hooks
from qvortex.config import RunConfig, apply_overrides, load_config, validate
from qvortex.exceptions import QvortexError
from qvortex.utils import configure_logging, get_attr, get_logger

logger = get_logger(__name__)

REPORT_DIR = os.path.join(os.path.dirname(__file__), "qvortex", "report")


def report_descriptor(command):
    """The JSON descriptor shipped next to a command's report module."""
    module = hooks.commands[command].split(".")[-2]
    with open(os.path.join(REPORT_DIR, module, f"{module}.json"), encoding="utf-8") as handle:
        return json.load(handle)


def build_parser():
    parser = argparse.ArgumentParser(prog="qvortex", description=hooks.app_description)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in hooks.commands:
        descriptor = report_descriptor(command)
        p = sub.add_parser(command, help=descriptor["description"], description=descriptor["description"])
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--F0", type=float, help="field amplitude (overrides pulse.F0)")
        p.add_argument("--t", type=float, help="observation time, a.u.")
        p.add_argument("--times", type=float, nargs="*", help="time list for trace")
        p.add_argument("--space", choices=["k", "r"])
        p.add_argument("--kind", choices=["exact", "approx", "quad"])
        p.add_argument("--quantity", choices=["density", "phase", "flux", "velocity"])
        p.add_argument("--search", choices=["lobe", "window"], help="vortex search region in k space")
        p.add_argument("--out", help="output directory")
        p.add_argument("--log-level", default="WARNING", help="DEBUG, INFO, WARNING or ERROR")
    return parser


def run(command, config):
    """Execute the command's report and hand the result to its writer; returns written paths."""
    execute = get_attr(hooks.commands[command])
    writer = get_attr(hooks.writers[command])
    columns, data = execute(config)
    return writer(columns, data, config)


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        config = load_config(args.config) if args.config else validate(RunConfig())
        config = apply_overrides(
            config,
            F0=args.F0, t=args.t, times=args.times, space=args.space,
            kind=args.kind, quantity=args.quantity, out=args.out, search=args.search,
        )
        written = run(args.command, config)
    except QvortexError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        print(f"qvortex {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
