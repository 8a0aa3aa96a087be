import argparse
import sys
from typing import List, Optional

from gowers_lab.cli import commands
from gowers_lab.cli.output import golden_check, render, with_provenance, write
from gowers_lab.config_utils import get_settings
from gowers_lab.data_models.models import ExperimentConfig
from gowers_lab.errors import GowersLabError
from gowers_lab.logger import set_log_level

EXIT_ERROR = 2


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], help="Output format (json lines by default)")
    common.add_argument("--output", help="Write the report to this file instead of stdout")
    common.add_argument("--check", action="store_true", help="Turn cross-checks into exit-code assertions")
    common.add_argument("--golden", help="Record the report on first use, compare against it afterwards")
    common.add_argument("--max-amplitudes", type=int, dest="max_amplitudes", help="Amplitude cap for this run")
    common.add_argument("--log-level", dest="log_level", help="Logging level (DEBUG, INFO, WARNING, ...)")
    return common


def _group_parser() -> argparse.ArgumentParser:
    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--p", type=int, required=True, help="Prime p")
    group.add_argument("--n", type=int, required=True, help="Dimension n")
    return group


def _instance_parser() -> argparse.ArgumentParser:
    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--poly", help="Phase polynomial in compact form, e.g. \"2*x0*x1 + x2\"")
    instance.add_argument("--table", help="FunctionTable JSON file")
    instance.add_argument("--random", help="haar:SEED or poly:DEGREE,SEED")
    return instance


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gowers-lab",
        description="Gowers uniformity norms over F_p^n: simulated circuits, testers and 3-AP counts.",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    subparsers.required = True
    parents = [_common_parser(), _group_parser(), _instance_parser()]

    # Norm command
    norm_parser = subparsers.add_parser(
        "norm",
        parents=parents,
        help="Circuit and brute-force U^d norm",
        epilog="Example: gowers-lab norm --p 3 --n 1 --d 2 --poly \"x0\""
    )
    norm_parser.add_argument("--d", type=int, required=True, help="Norm order")
    norm_parser.add_argument("--m", type=int, help="Also sample this many shots")
    norm_parser.add_argument("--seed", type=int, default=0, help="Sampling seed")
    norm_parser.set_defaults(func=commands.cmd_norm)

    # Linearity tester
    linear_parser = subparsers.add_parser(
        "test-linear",
        parents=parents,
        help="Linear phase versus eps-far",
        epilog="Example: gowers-lab test-linear --p 5 --n 1 --poly \"2*x0\" --eps 0.5 --eta 0.05 --seed 1"
    )
    linear_parser.add_argument("--eps", type=float, required=True)
    linear_parser.add_argument("--eta", type=float, default=0.05)
    linear_parser.add_argument("--seed", type=int, required=True, help="Sampling seed")
    linear_parser.add_argument("--certify", action="store_true", help="Attach an exhaustive farness certificate")
    linear_parser.set_defaults(func=commands.cmd_test_linear)

    # Degree-d tester with a supplied gap
    poly_parser = subparsers.add_parser(
        "test-poly",
        parents=parents,
        help="Degree-d phase versus far, with a caller-supplied gap",
        epilog="Example: gowers-lab test-poly --p 5 --n 1 --d 3 --poly \"x0^3\" --gap 0.5 --seed 1"
    )
    poly_parser.add_argument("--d", type=int, required=True, help="Tested degree")
    poly_parser.add_argument("--gap", type=float, help="Gap between the YES and NO zero probabilities")
    poly_parser.add_argument("--delta", type=float, help="NO-side norm bound; the gap is derived from it")
    poly_parser.add_argument("--exponent", choices=["theorem", "readout"], default="theorem")
    poly_parser.add_argument("--eta", type=float, default=0.05)
    poly_parser.add_argument("--eps", type=float, help="Farness level for --certify")
    poly_parser.add_argument("--seed", type=int, required=True, help="Sampling seed")
    poly_parser.add_argument("--certify", action="store_true")
    poly_parser.add_argument("--allow-any-regime", action="store_true", dest="allow_any_regime")
    poly_parser.set_defaults(func=commands.cmd_test_poly)

    # Exact-versus-random tester
    exact_parser = subparsers.add_parser(
        "test-exact",
        parents=parents,
        help="Degree-d phase polynomial versus a random table",
        epilog="Example: gowers-lab test-exact --p 2 --n 4 --d 1 --random haar:3 --seed 1"
    )
    exact_parser.add_argument("--d", type=int, required=True)
    exact_parser.add_argument("--eta", type=float, default=0.05)
    exact_parser.add_argument("--seed", type=int, required=True, help="Sampling seed")
    exact_parser.set_defaults(func=commands.cmd_test_exact)

    # Two-sided character tester
    char_parser = subparsers.add_parser(
        "test-char",
        parents=parents,
        help="Correlation with some character above eps1 versus all below eps2",
        epilog="Example: gowers-lab test-char --p 2 --n 4 --poly \"x0 + x2\" --eps1 0.9 --eps2 0.2 --seed 1"
    )
    char_parser.add_argument("--eps1", type=float, required=True)
    char_parser.add_argument("--eps2", type=float, required=True)
    char_parser.add_argument("--eta", type=float, default=0.05)
    char_parser.add_argument("--seed", type=int, required=True, help="Sampling seed")
    char_parser.add_argument("--certify", action="store_true")
    char_parser.set_defaults(func=commands.cmd_test_char)

    # 3-AP counting
    count_parser = subparsers.add_parser(
        "count-3ap",
        parents=[_common_parser(), _group_parser()],
        help="Count 3-term progressions in a set",
        epilog="Example: gowers-lab count-3ap --p 3 --n 2 --set random:0.5,11 --method quantum"
    )
    count_parser.add_argument("--set", dest="set_spec", required=True, help="random:DENSITY,SEED or a table file")
    count_parser.add_argument("--method", choices=["exact", "quantum", "bounds"], default="exact")
    count_parser.add_argument("--m", type=int, help="Shots for the sampled quantum readout")
    count_parser.add_argument("--seed", type=int, help="Sampling seed")
    count_parser.add_argument("--cost-eps", type=float, dest="cost_eps", help="Also report query costs at this accuracy")
    count_parser.set_defaults(func=commands.cmd_count_3ap)

    # Shifted-preparation demo
    noise_parser = subparsers.add_parser(
        "noise-demo",
        parents=parents,
        help="Peak relocation under shifted state preparation",
        epilog="Example: gowers-lab noise-demo --p 3 --n 1 --d 2 --shifts 1,2,0 --poly \"x0\""
    )
    noise_parser.add_argument("--d", type=int, required=True)
    noise_parser.add_argument("--shifts", required=True, help="d+1 comma-separated shifts (index or a:b:c coordinates)")
    noise_parser.add_argument("--top", type=int, default=5, help="Number of largest outcomes to list")
    noise_parser.set_defaults(func=commands.cmd_noise_demo)

    # Timing sweep
    bench_parser = subparsers.add_parser(
        "bench",
        parents=parents,
        help="Wall time and counters across circuit orders",
        description="Without --poly, --table or --random the oracle is the linear phase x0.",
        epilog="Example: gowers-lab bench --sweep d=1..4 --p 2 --n 3"
    )
    bench_parser.add_argument("--sweep", required=True, help="Order range, e.g. d=1..4")
    bench_parser.set_defaults(func=commands.cmd_bench)

    return parser


def experiment_config(args: argparse.Namespace, fmt: str) -> ExperimentConfig:
    fields = {name: getattr(args, name) for name in ExperimentConfig.model_fields
              if name not in ("subcommand", "format") and hasattr(args, name)}
    return ExperimentConfig(subcommand=args.command, format=fmt, **fields)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    set_log_level(args.log_level or settings.log_level)
    fmt = args.format or ("csv" if args.command == "bench" else "json")

    previous_cap = settings.max_amplitudes
    if args.max_amplitudes is not None:
        settings.max_amplitudes = args.max_amplitudes
    try:
        echo = experiment_config(args, fmt).echo()
        records, status = args.func(args)
    except (GowersLabError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        settings.max_amplitudes = previous_cap

    records = [with_provenance(r, echo) for r in records]
    write(render(records, fmt), args.output)
    if args.golden and not golden_check(records, args.golden):
        return EXIT_ERROR
    return status


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
