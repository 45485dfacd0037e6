"""Command-line front end: ``becmem <figN|tomography|optimize> [options]``.

Exit codes: 0 on success, 2 for configuration errors, 3 for numerical
failures (non-convergent fits, singular reconstructions).
"""

import argparse
import sys

import numpy as np

from . import __version__
from .commands import COMMANDS
from .config import ConfigError, load_config
from .csvio import write_table

_HELP = {
    "fig3": "Faraday rotation trace s1/s0 vs storage time",
    "fig4": "damping factor alpha vs storage time for the noise presets",
    "fig5": "Gaussian decay of the efficiency in a pure condensate",
    "fig6": "bimodal efficiency decay with an uncondensed fraction",
    "fig7": "efficiency factors vs control Rabi frequency",
    "fig8": "probe susceptibility vs two-photon detuning",
    "tomography": "synthetic process tomography run",
    "optimize": "2-D optimization of the write-read efficiency",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="becmem",
        description="Model of EIT-based light storage in a Bose-Einstein "
                    "condensate: polarization memory, dephasing and "
                    "write-read efficiency.")
    parser.add_argument("--version", action="version",
                        version=f"becmem {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("--config", metavar="PATH",
                       help="flat key=value config file")
        p.add_argument("--out", metavar="PATH", help="output CSV path")
        p.add_argument("--seed", type=int, metavar="N",
                       help="override the random seed")
        p.add_argument("--set", action="append", default=[],
                       metavar="KEY=VALUE", dest="overrides",
                       help="override one config key (repeatable)")
        p.add_argument("--preset", metavar="NAME",
                       help="noise preset: unsynchronized, line-synced, "
                            "feed-forward or custom")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.overrides, args.preset,
                          args.seed)
    except ConfigError as exc:
        print(f"becmem: config error: {exc}", file=sys.stderr)
        return 2
    try:
        table = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"becmem: config error: {exc}", file=sys.stderr)
        return 2
    except (np.linalg.LinAlgError, ArithmeticError, RuntimeError,
            ValueError) as exc:
        print(f"becmem: numerical failure: {exc}", file=sys.stderr)
        return 3
    if table.report:
        print(table.report)
    out = args.out or cfg.output_path
    if out is None and table.report is None:
        out = table.default_filename
    if out:
        write_table(out, args.command, __version__, cfg.raw, table.header,
                    table.rows, table.extra_metadata)
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
