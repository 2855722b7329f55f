"""Command-line entry point."""

import argparse
import re
import sys

from .analysis import (
    RUNNERS,
    ConfigError,
    NoExtremumError,
    build_config,
    parse_config_file,
    write_table,
)
from .propagator import LeakageError

_SUBCOMMAND_KIND = {
    "populations": "populations",
    "alignment": "alignment_series",
    "period-sweep": "period_sweep",
    "semiclassical": "semiclassical_sweep",
}


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="key=value config file; flags override it")
    sub.add_argument("--revival-time-ps", type=float, dest="revival_time_ps")
    sub.add_argument("--temperature-K", type=float, dest="temperature_K")
    sub.add_argument(
        "--kick-strength", dest="kick_strength",
        help="dimensionless kick strength, comma-separated for sweeps",
    )
    sub.add_argument(
        "--detuning", dest="detuning",
        help="fractional pulse-period offset from the revival, comma-separated",
    )
    sub.add_argument("--pulses", type=int)
    sub.add_argument("--jmax", type=int, dest="j_max")
    sub.add_argument("--samples", type=int,
                     help="revival-average samples per alignment value")
    sub.add_argument("--fit-degree", type=int, dest="fit_degree")
    sub.add_argument("--out", help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"))
    # accepted for script compatibility; every run is deterministic anyway
    sub.add_argument("--seedless", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotobloch",
        description="Bloch oscillations of laser-kicked molecular rotation",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser(
        "populations", help="rotational-level populations after each pulse"
    )
    subparsers.add_parser(
        "alignment", help="revival-averaged alignment versus pulse number"
    )
    subparsers.add_parser(
        "period-sweep", help="quantum and semiclassical periods over detunings"
    )
    subparsers.add_parser(
        "semiclassical", help="semiclassical zone-traversal periods only"
    )
    for sub in subparsers.choices.values():
        _add_common(sub)
        # stock argparse reads "-0.002,0.003" as a flag; no flag here starts
        # with a digit or dot, so treat any such token as a value
        sub._negative_number_matcher = re.compile(r"^-[\d.]")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    kind = _SUBCOMMAND_KIND[args.command]
    overrides = {
        name: getattr(args, name)
        for name in (
            "revival_time_ps", "temperature_K", "kick_strength", "detuning",
            "pulses", "j_max", "samples", "fit_degree", "out", "format",
        )
    }
    try:
        file_values = parse_config_file(args.config) if args.config else None
        config = build_config(kind, file_values, **overrides)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        table = RUNNERS[kind](config)
    except (LeakageError, NoExtremumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    if kind in ("period_sweep", "semiclassical_sweep"):
        value_cells = [v for row in table.rows for v in row[1:]]
        if all(v is None for v in value_cells):
            print("error: no period could be resolved for any detuning",
                  file=sys.stderr)
            return 3

    write_table(table, config.out, config.format)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
