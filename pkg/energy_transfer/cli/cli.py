"""
Command-line interface for the energy-transfer toolkit
"""
import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

from ..config import RunConfig
from ..services.crossing_strategies import chooser_kinds
from ..services.settings_manager import SettingsManager, settings
from ..utils.constants import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_UNSUPPORTED, SILADIC_VARIANTS, STEP1_MODES
from ..utils.energy_utils import preset_names
from ..utils.exceptions import InputError, TransferInvariantError, UnsupportedRequestError
from .commands import cmd_enumerate, cmd_map, cmd_verify
from .output import Output
from .suites import suite_names

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler()]
)
logger = logging.getLogger(__name__)

_COMMANDS: Dict[str, Callable[[RunConfig, Output], int]] = {
    "enumerate": cmd_enumerate,
    "map": cmd_map,
    "verify": cmd_verify,
}

# argparse bookkeeping that is not part of a run's identity
_GLOBAL_KEYS = {"command", "debug", "format", "seed", "settings"}
_VALUE_FLAGS = {"--n", "--n-range", "--partition"}


def _add_energy_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--energy', help='Energy matrix JSON file')
    group.add_argument('--preset', help=f"Preset matrix NAME[:label,...], one of {preset_names()}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='energy-transfer',
        description='Enumerate, map and verify weighted-word partition families')
    parser.add_argument('--debug', action='store_true', help='Enable debug logging')
    parser.add_argument('--format', choices=['tsv', 'json'], default='tsv', help='Output format')
    parser.add_argument('--seed', type=int, help='Seed for random strategies and selfcheck')
    parser.add_argument('--settings', help='Settings JSON file (defaults to settings.json at the repository root)')
    subparsers = parser.add_subparsers(dest='command', required=True)

    enumerate_parser = subparsers.add_parser('enumerate', help='List the partitions with a given word and energy')
    _add_energy_source(enumerate_parser)
    enumerate_parser.add_argument('--side', default='O', help='O, E or E*')
    enumerate_parser.add_argument('--word', required=True, help='Comma-separated state labels')
    enumerate_parser.add_argument('--n', type=int, required=True, help='Energy (sum of potentials)')
    enumerate_parser.add_argument('--bound', default='none', help='0+, 1+, 0- or 1-')
    enumerate_parser.add_argument('--count-only', action='store_true', help='Print only the number of partitions')
    enumerate_parser.add_argument('--workers', type=int, help='Threads used for the block segmentations')

    map_parser = subparsers.add_parser('map', help='Apply Φ or Ψ to a partition')
    map_parser.add_argument('direction', choices=['phi', 'psi'])
    _add_energy_source(map_parser)
    source = map_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--input', help='Partition JSON file')
    source.add_argument('--partition', help="Particles such as '11:bbar 5*b.a'")
    map_parser.add_argument('--strategy', choices=chooser_kinds(), help='Order in which violations are crossed')
    map_parser.add_argument('--trace', action='store_true', help='Emit every crossing as a JSON line')
    map_parser.add_argument('--predict', action='store_true', help='Compare the run with the closed-form predictors')
    map_parser.add_argument('--step1', choices=list(STEP1_MODES), default=STEP1_MODES[0],
                            help='Scan direction when fusing troublesome pairs')
    map_parser.add_argument('--dual', action='store_true', help='Map between O-side and E*-side partitions')
    map_parser.add_argument('--seed', type=int, default=argparse.SUPPRESS, help='Seed for the random strategy')

    verify_parser = subparsers.add_parser('verify', help='Run a verification suite')
    verify_parser.add_argument('suite', choices=suite_names())
    _add_energy_source(verify_parser)
    verify_parser.add_argument('--word', help='Comma-separated state labels (bijection)')
    verify_parser.add_argument('--n-range', help='lo..hi inclusive (bijection)')
    verify_parser.add_argument('--bound', help='0+, 1+, 0- or 1- (bijection)')
    verify_parser.add_argument('--dual', action='store_true', help='Compare with E*-side partitions (bijection)')
    verify_parser.add_argument('--workers', type=int)
    verify_parser.add_argument('--rho', type=int, choices=[0, 1], help='Lower bound of the series (series)')
    verify_parser.add_argument('--q-order', type=int, help='Truncation in q')
    verify_parser.add_argument('--x-order', '--color-order', dest='color_order', type=int,
                               help='Truncation of the number of letters (series)')
    verify_parser.add_argument('--variant', choices=list(SILADIC_VARIANTS), help='Theorem variant (siladic)')
    verify_parser.add_argument('--n-max', type=int, help='Largest size checked')
    verify_parser.add_argument('--u-max', type=int, help='Largest a-count compared (overpartition)')
    verify_parser.add_argument('--v-max', type=int, help='Largest b-count compared (overpartition)')
    verify_parser.add_argument('--side', help='Side of the difference matrix (diffmatrix)')
    verify_parser.add_argument('--expect', help='Expected difference matrix JSON (diffmatrix)')
    verify_parser.add_argument('--trials', type=int, help='Trials per property (selfcheck)')
    verify_parser.add_argument('--seed', type=int, default=argparse.SUPPRESS, help='Seed for selfcheck')
    verify_parser.add_argument('--report', help='Also write an HTML report to this path')
    return parser


def make_run_config(args: argparse.Namespace, manager: SettingsManager) -> RunConfig:
    flags = {key: value for key, value in vars(args).items() if key not in _GLOBAL_KEYS}
    source = flags.get("energy") or (f"preset:{flags['preset']}" if flags.get("preset") else None)
    return RunConfig(
        command=args.command,
        output_format=args.format,
        seed=args.seed,
        energy_source=source,
        flags=flags,
        settings=manager.as_dict(),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for the CLI; returns the exit code"""
    parser = build_parser()
    args = parser.parse_args(_attach_negative_values(sys.argv[1:] if argv is None else list(argv)))

    # Set logging level
    if args.debug:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        manager = SettingsManager(args.settings) if args.settings else settings
        run = make_run_config(args, manager)
        out = Output(sys.stdout, args.format, bool(manager.get('color', True)))
        return _COMMANDS[args.command](run, out)
    except (InputError, UnsupportedRequestError, TransferInvariantError) as e:
        code, reason = _exit_code(e)
        logger.error(f"{reason}: {e}")
        if args.debug:
            import traceback
            traceback.print_exc()
        return code


def _exit_code(error: Exception) -> Tuple[int, str]:
    if isinstance(error, InputError):
        return EXIT_INPUT_ERROR, "Invalid input"
    if isinstance(error, UnsupportedRequestError):
        return EXIT_UNSUPPORTED, "Unsupported request"
    return EXIT_CHECK_FAILED, "Invariant violated"


def _attach_negative_values(argv: List[str]) -> List[str]:
    """'--n -8' and '--n-range -10..12' would otherwise be read as unknown options"""
    joined: List[str] = []
    pending = None
    for token in argv:
        if pending is not None and token.startswith('-') and token[1:2].isdigit():
            joined[-1] = f"{pending}={token}"
        else:
            joined.append(token)
        pending = token if token in _VALUE_FLAGS else None
    return joined


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
