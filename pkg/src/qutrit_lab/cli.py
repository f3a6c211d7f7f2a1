"""Command-line driver: ``qutrit-lab --case 1 --eps3 0.3 --dm-strength 0.2 --out c1.csv``."""
import argparse
import json
import logging
import sys

from .dynamics import Coupling
from .errors import ConfigError, DomainError, GeneratorResolutionError
from .experiments import Case, SweepConfig, build_eps_grid, emit_table, run_sweep
from .states import EnvAmplitudes

EXIT_OK, EXIT_RUNTIME, EXIT_CONFIG = 0, 1, 2


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _complexes(text):
    parts = [v.strip() for v in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--env takes exactly three amplitudes c0,c1,c2")
    try:
        return [complex(v.replace(" ", "")) for v in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad amplitude list {text!r}") from None


def build_parser():
    p = argparse.ArgumentParser(
        prog="qutrit-lab",
        description="Negativity and CCNR dynamics of two-qutrit bound-entangled states under DM coupling.",
    )
    p.add_argument("--case", required=True, choices=[c.value for c in Case])
    p.add_argument("--eps1", type=_floats)
    p.add_argument("--eps2", type=_floats)
    p.add_argument("--eps3", type=_floats)
    p.add_argument("--dm-strength", type=_floats, default=[0.2], help="comma-separated D values")
    p.add_argument("--t-max", type=float, default=30.0)
    p.add_argument("--t-steps", type=int, default=1001)
    p.add_argument("--generator", choices=["gellmann", "spin1", "auto"], default="auto")
    p.add_argument("--coupling", choices=[c.value for c in Coupling], default=Coupling.PAIR.value,
                   help="qutrits the DM term couples: the A-B pair (default) or B with the environment")
    p.add_argument("--env", type=_complexes, default=None, help="environment amplitudes c0,c1,c2")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--summary", action="store_true", help="print a JSON summary of DSD events")
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG

    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    log = logging.getLogger("qutrit_lab")

    try:
        grid = build_eps_grid(args.case, args.eps1, args.eps2, args.eps3)
        env = EnvAmplitudes(*args.env) if args.env is not None else EnvAmplitudes()
        config = SweepConfig(
            case=args.case,
            eps_grid=grid,
            d_values=args.dm_strength,
            t_max=args.t_max,
            t_steps=args.t_steps,
            generator=args.generator,
            env=env,
            output_path=args.out,
            output_format=args.format,
            coupling=args.coupling,
        )
    except (ConfigError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qutrit-lab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run_sweep(config)
        emit_table(result.records, config.output_path, config.output_format)
    except ConfigError as exc:
        print(f"qutrit-lab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (GeneratorResolutionError, OSError, ArithmeticError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_RUNTIME

    if args.summary:
        stream = sys.stderr if config.output_path in (None, "-") else sys.stdout
        json.dump(result.summary, stream, indent=2)
        stream.write("\n")
    return EXIT_OK


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
