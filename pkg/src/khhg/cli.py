"""Command-line entry point.

Exit codes: 0 on success, 2 on configuration errors, 3 on numerical
convergence failures.
"""

from __future__ import annotations

import argparse
import sys

from khhg.errors import ConfigError, ConvergenceError, ValidationError
from khhg.run import load_config, run_config, validate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhg-kh",
        description="HHG spectra from the leading-order quiver-frame "
                    "strong-field approximation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario from a config file")
    run_p.add_argument("config", help="path to a TOML run configuration")
    run_p.add_argument("--output-dir", help="override output.dir from the config")
    run_p.add_argument("--engine", choices=["exact", "peaking", "kspace"],
                       help="override engine.name from the config")
    run_p.add_argument("--normalize", choices=["max", "raw"],
                       help="override output.normalize from the config")

    val_p = sub.add_parser("validate", help="report all config diagnostics")
    val_p.add_argument("config", help="path to a TOML run configuration")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "validate":
        diagnostics = validate(args.config)
        for d in diagnostics:
            print(d, file=sys.stderr)
        if diagnostics:
            return EXIT_CONFIG
        print("config OK")
        return EXIT_OK

    try:
        cfg = load_config(
            args.config,
            engine_override=args.engine,
            output_dir_override=args.output_dir,
            normalize_override=args.normalize,
        )
        files = run_config(cfg)
    except ConfigError as exc:
        for d in exc.diagnostics:
            print(d, file=sys.stderr)
        return EXIT_CONFIG
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"numerical convergence failure: {exc} "
              f"(best estimate {exc.best:.6g}, bound {exc.error_bound:.3g})",
              file=sys.stderr)
        return EXIT_CONVERGENCE
    for path in files:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
