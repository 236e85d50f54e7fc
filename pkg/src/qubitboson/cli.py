"""Command-line interface.

Subcommands: evolve, sweep, validate, spectrum. Exit codes: 0 success,
1 validation failure, 2 config error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, ConvergenceError, DegenerateDenominatorError
from .experiments import (
    RunConfig,
    fidelity_sweep,
    plot_evolution_svg,
    plot_sweep_svg,
    run_evolution,
    spectrum_table,
    validate,
    write_evolution_csv,
    write_evolution_json,
    write_spectrum_csv,
    write_spectrum_json,
    write_state_probabilities_csv,
    write_summary_json,
    write_sweep_csv,
    write_sweep_json,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", type=Path, default=None, help="JSON run configuration")
    sub.add_argument("--out", type=Path, default=Path("."), help="output directory")
    sub.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    sub.add_argument("--plot", action="store_true", help="emit SVG plots")
    sub.add_argument(
        "--seed", type=int, default=None,
        help="accepted and ignored (reserved; all computation is deterministic)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubitboson",
        description="Qubit-resonator dynamics beyond the rotating-wave approximation",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("evolve", "time evolution of |c10|^2 and |c01|^2 per method"),
        ("sweep", "state-transfer fidelity vs coupling strength"),
        ("validate", "run the cross-module invariant suite"),
        ("spectrum", "dressed vs perturbative vs exact energies"),
    ):
        _add_common(subs.add_parser(name, help=help_))
    return parser


def _load_config(args) -> RunConfig:
    if args.config is None:
        return RunConfig.default()
    return RunConfig.from_json(args.config)


def _cmd_evolve(config: RunConfig, args) -> int:
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    for g in config.g_over_delta_eps:
        report = run_evolution(config, g)
        tag = f"g{g:g}"
        if args.fmt == "csv":
            write_evolution_csv(report, out / f"evolution_{tag}.csv")
            if "exact" in report.series:
                write_state_probabilities_csv(report, out / f"states_{tag}.csv")
        else:
            write_evolution_json(report, out / f"evolution_{tag}.json")
        write_summary_json(report, out / f"summary_{tag}.json")
        if args.plot:
            plot_evolution_svg(report, out / f"evolution_{tag}.svg")
        for method, msg in report.method_errors.items():
            print(f"{tag}: method {method} skipped: {msg}", file=sys.stderr)
        print(f"evolve {tag}: methods={report.summary['methods']} -> {out}")
    return EXIT_OK


def _cmd_sweep(config: RunConfig, args) -> int:
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    report = fidelity_sweep(config)
    if args.fmt == "csv":
        write_sweep_csv(report, out / "sweep.csv")
    else:
        write_sweep_json(report, out / "sweep.json")
    if args.plot:
        plot_sweep_svg(report, out / "sweep.svg")
    for err in report.point_errors:
        print(
            f"sweep point g={err['g_over_delta_eps']} ({err['method']}) failed: {err['error']}",
            file=sys.stderr,
        )
    print(f"sweep: {len(report.points)} points -> {out}")
    return EXIT_OK


def _cmd_validate(config: RunConfig, args) -> int:
    report = validate(config)
    for line in report.format_lines():
        print(line)
    return report.exit_code


def _cmd_spectrum(config: RunConfig, args) -> int:
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    rows = spectrum_table(config)
    if args.fmt == "csv":
        write_spectrum_csv(rows, out / "spectrum.csv")
    else:
        write_spectrum_json(rows, out / "spectrum.json")
    for r in rows:
        print(
            f"{r.label:>3}  W={r.w_dressed: .10f}  E_pert={r.e_perturbative: .10f}  "
            f"E_exact={r.e_exact: .10f}"
        )
    return EXIT_OK


_COMMANDS = {
    "evolve": _cmd_evolve,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "spectrum": _cmd_spectrum,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](config, args)
    except (ConvergenceError, DegenerateDenominatorError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
