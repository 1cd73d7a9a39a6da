"""
Command-line interface for ank.

Commands
--------
ops:
    List operator kinds, their parameter schemas and the named presets.
run:
    Iterate one operator from one seed state and print the chain.
atlas:
    Exhaustive functional-graph analysis over all 10**k states.
random-demo:
    Fixed-versus-fresh random operator walks.
survey:
    Atlas summary for one operator family across several widths.

Exit status: 0 on success, 1 on parse/validation/usage errors, 2 when a
resource limit (width ceiling, step budget) stops the run.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

from .atlas import DEFAULT_WIDTH_CEILING, analyze, build_successors, survey
from .digitspace import BASE, DigitString, from_integer, parse_decimal, parse_int_list
from .dynamics import iterate
from .errors import AnkError, ParseError, ResourceLimitError, ValidationError
from .operators import OperatorSpec, load_operator_spec, parse_operator_spec, preset
from .randomops import FIXED, FRESH, sweep
from .viz import (
    atlas_to_csv,
    atlas_to_dot,
    ops_catalog,
    ops_to_csv,
    render_atlas,
    render_ops,
    render_survey,
    render_trajectory,
    render_walks,
    survey_to_csv,
    to_json,
    trajectory_to_csv,
    trajectory_to_dot,
    walks_to_csv,
)

_log = logging.getLogger("ank.cli")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RESOURCE = 2

COMMANDS = ('ops', 'run', 'atlas', 'random-demo', 'survey')
FORMATS = ('text', 'json', 'csv')


class OptionError(AnkError):
    """A library error attributed to the flag that supplied the bad value."""

    def __init__(self, flag: str, cause: Exception):
        super().__init__(f"{flag}: {cause}")
        self.flag = flag
        self.cause = cause


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for resource limits here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"Error: {message}", file=sys.stderr)
        sys.exit(EXIT_INVALID)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one invocation."""

    command: str
    operator_spec: Optional[OperatorSpec] = None
    seed_state: Optional[DigitString] = None
    output_format: str = 'text'
    dot_output: Optional[str] = None
    max_steps: Optional[int] = None
    max_walks: int = 100
    threads: Optional[int] = None
    max_width: int = DEFAULT_WIDTH_CEILING
    timestamps: bool = False
    full_graph: bool = False
    mode: str = 'both'
    width: int = 3
    random_seed: int = 0
    widths: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}", invariant='command')
        if self.command in ('run', 'atlas', 'survey') and self.operator_spec is None:
            raise OptionError('--op', ValidationError(
                "one of --op, --op-file or --preset is required", invariant='operator'))
        if self.command == 'run' and self.seed_state is None:
            raise OptionError('--seed', ValidationError("run requires a seed state", invariant='run_seed'))
        if self.command == 'atlas' and self.seed_state is not None:
            raise OptionError('--seed', ValidationError("atlas takes no seed state", invariant='atlas_seed'))


def _resolve_operator(args) -> Optional[OperatorSpec]:
    """Inline ``--op`` wins over ``--op-file``, which wins over ``--preset``."""
    if getattr(args, 'op', None):
        try:
            return parse_operator_spec(args.op)
        except AnkError as e:
            raise OptionError('--op', e) from None
    if getattr(args, 'op_file', None):
        try:
            return load_operator_spec(args.op_file)
        except OSError as e:
            raise OptionError('--op-file', ValidationError(f"cannot read {args.op_file}: {e.strerror}",
                                                           invariant='op_file')) from None
        except AnkError as e:
            raise OptionError('--op-file', e) from None
    if getattr(args, 'preset', None):
        try:
            return preset(args.preset)
        except AnkError as e:
            raise OptionError('--preset', e) from None
    return None


def _ascii_int(text: str) -> int:
    """argparse type for integer flags: optional minus sign, then ASCII digits only."""
    negative = text.strip().startswith('-')
    try:
        value = parse_decimal(text.strip()[1:] if negative else text, "integer")
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    return -value if negative else value


def _parse_seed_state(text: str, spec: OperatorSpec):
    negative = text.strip().startswith('-')
    try:
        value = parse_decimal(text.strip()[1:] if negative else text, "seed")
    except ParseError as e:
        raise OptionError('--seed', e) from None
    if negative and value:
        raise OptionError('--seed', ValidationError("seed must be nonnegative", invariant='seed_range'))
    if value >= BASE ** spec.width:
        raise OptionError('--seed', ValidationError(
            f"seed exceeds width: {value} has more than {spec.width} digit(s)", invariant='seed_range'))
    return from_integer(value, spec.width)


def _parse_widths(text: str) -> Tuple[int, ...]:
    """``"1-6"`` or ``"3,4,5"``."""
    try:
        if '-' in text:
            lo, hi = (parse_decimal(x, "width") for x in text.split('-', 1))
            widths = tuple(range(lo, hi + 1))
        else:
            widths = tuple(parse_int_list(text, "width list"))
    except ParseError:
        raise OptionError('--widths', ParseError(f"expected a range like 1-6 or a list like 3,4, got {text!r}", 0)) from None
    if not widths:
        raise OptionError('--widths', ValidationError("empty width range", invariant='widths'))
    return widths


def build_run_config(args) -> RunConfig:
    spec = _resolve_operator(args)
    seed_text = getattr(args, 'seed', None)
    seed_state = None
    if args.command == 'run' and seed_text is not None and spec is not None:
        seed_state = _parse_seed_state(seed_text, spec)
    kwargs = {}
    if args.command == 'random-demo':
        kwargs.update(mode=args.mode, width=args.width, max_walks=args.walks,
                      random_seed=args.seed if args.seed is not None else 0)
    if args.command == 'survey':
        kwargs['widths'] = _parse_widths(args.widths)
    return RunConfig(
        command=args.command,
        operator_spec=spec,
        seed_state=seed_state,
        output_format=getattr(args, 'format', 'text'),
        dot_output=getattr(args, 'dot', None),
        max_steps=getattr(args, 'max_steps', None),
        threads=getattr(args, 'threads', None),
        max_width=getattr(args, 'max_width', DEFAULT_WIDTH_CEILING),
        timestamps=getattr(args, 'timestamps', False),
        full_graph=getattr(args, 'full_graph', False),
        **kwargs,
    )


def _write_dot(path: str, text: str):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    _log.info("wrote %s", path)


def ops_command(cfg: RunConfig) -> str:
    if cfg.output_format == 'json':
        return to_json(ops_catalog(), cfg.timestamps)
    if cfg.output_format == 'csv':
        return ops_to_csv()
    return render_ops()


def run_command(cfg: RunConfig) -> str:
    """Handle 'run': iterate from ``--seed`` until the first repeat."""
    traj = iterate(cfg.operator_spec, cfg.seed_state, max_steps=cfg.max_steps)
    if cfg.dot_output:
        _write_dot(cfg.dot_output, trajectory_to_dot(traj))
    if cfg.output_format == 'json':
        return to_json(traj.to_dict(), cfg.timestamps)
    if cfg.output_format == 'csv':
        return trajectory_to_csv(traj)
    return render_trajectory(traj)


def atlas_command(cfg: RunConfig) -> str:
    """Handle 'atlas': build the successor table and analyze it."""
    table = build_successors(cfg.operator_spec, threads=cfg.threads, max_width=cfg.max_width)
    report = analyze(table)
    if cfg.dot_output:
        _write_dot(cfg.dot_output, atlas_to_dot(report, table if cfg.full_graph else None))
    if cfg.output_format == 'json':
        return to_json(report.to_dict(), cfg.timestamps)
    if cfg.output_format == 'csv':
        return atlas_to_csv(report)
    return render_atlas(report)


def random_demo_command(cfg: RunConfig) -> str:
    """Handle 'random-demo': ``--walks`` consecutive seeds per mode."""
    modes = (FIXED, FRESH) if cfg.mode == 'both' else (cfg.mode,)
    seeds = range(cfg.random_seed, cfg.random_seed + cfg.max_walks)
    reports = []
    for mode in modes:
        reports.extend(sweep(mode, seeds, cfg.width, cfg.max_steps))
    if cfg.output_format == 'json':
        return to_json({'walks': [r.to_dict() for r in reports]}, cfg.timestamps)
    if cfg.output_format == 'csv':
        return walks_to_csv(reports)
    return render_walks(reports)


def survey_command(cfg: RunConfig) -> str:
    rows = survey(cfg.operator_spec, cfg.widths, threads=cfg.threads, max_width=cfg.max_width)
    if cfg.output_format == 'json':
        return to_json({'operator': cfg.operator_spec.kind.value, 'rows': rows}, cfg.timestamps)
    if cfg.output_format == 'csv':
        return survey_to_csv(rows)
    return render_survey(rows)


_HANDLERS = {
    'ops': ops_command,
    'run': run_command,
    'atlas': atlas_command,
    'random-demo': random_demo_command,
    'survey': survey_command,
}


def _add_operator_flags(p):
    p.add_argument('--op', help='Inline operator spec (JSON), e.g. \'{"kind":"kaprekar","width":4}\'. '
                                'Wins over --op-file and --preset')
    p.add_argument('--op-file', help='Read the operator spec from a file (wins over --preset)')
    p.add_argument('--preset', help='Named operator from `ank ops`')


def _add_output_flags(p, formats=FORMATS):
    p.add_argument('--format', default='text', choices=formats,
                   help='Output format (default: text)')
    p.add_argument('--timestamps', action='store_true',
                   help='Add a generated_at timestamp to JSON output (off by default for reproducible output)')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog='ank',
        description="ank: iterated digit-string operators (Kaprekar and friends) and their functional graphs")
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Log progress to stderr (-v info, -vv debug)')
    subparsers = parser.add_subparsers(dest='command', parser_class=_Parser, help='Available commands')

    ops_parser = subparsers.add_parser('ops', help='List operator kinds and presets')
    _add_output_flags(ops_parser)

    run_parser = subparsers.add_parser('run', help='Iterate one operator from one seed')
    _add_operator_flags(run_parser)
    run_parser.add_argument('--seed', required=True,
                            help='Seed state as a decimal integer, zero-padded to the operator width')
    run_parser.add_argument('--max-steps', type=_ascii_int, help='Stop after this many applications (default 10**k + 1)')
    run_parser.add_argument('--dot', help='Also write the chain as a DOT digraph to this path')
    _add_output_flags(run_parser)

    atlas_parser = subparsers.add_parser('atlas', help='Exhaustive analysis over all 10**k states')
    _add_operator_flags(atlas_parser)
    atlas_parser.add_argument('--threads', type=_ascii_int,
                              help='Worker threads for table construction (default: CPU count)')
    atlas_parser.add_argument('--max-width', type=_ascii_int, default=DEFAULT_WIDTH_CEILING,
                              help=f'Refuse widths above this (default {DEFAULT_WIDTH_CEILING}, hard cap 9)')
    atlas_parser.add_argument('--dot', help='Write the condensed cycle graph as DOT to this path')
    atlas_parser.add_argument('--full-graph', action='store_true',
                              help='With --dot, emit every state and edge (width <= 3)')
    _add_output_flags(atlas_parser)

    random_parser = subparsers.add_parser('random-demo', help='Fixed vs fresh random operator walks')
    random_parser.add_argument('--mode', default='both', choices=[FIXED, FRESH, 'both'])
    random_parser.add_argument('--width', type=_ascii_int, default=3, help='Digit width k (default 3)')
    random_parser.add_argument('--walks', type=_ascii_int, default=100, help='Walks per mode (default 100)')
    random_parser.add_argument('--seed', type=_ascii_int, help='First walk seed; walks use consecutive seeds (default 0)')
    random_parser.add_argument('--max-steps', type=_ascii_int, help='Step cap per walk (default 10**k + 1)')
    _add_output_flags(random_parser)

    survey_parser = subparsers.add_parser('survey', help='Atlas summary across widths')
    _add_operator_flags(survey_parser)
    survey_parser.add_argument('--widths', default='1-6', help='Width range "1-6" or list "3,4,5"')
    survey_parser.add_argument('--threads', type=_ascii_int, help='Worker threads (default: CPU count)')
    survey_parser.add_argument('--max-width', type=_ascii_int, default=DEFAULT_WIDTH_CEILING,
                               help=f'Refuse widths above this (default {DEFAULT_WIDTH_CEILING})')
    _add_output_flags(survey_parser)
    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('ank').setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point. Returns the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_INVALID
    _configure_logging(args.verbose)

    try:
        cfg = build_run_config(args)
        output = _HANDLERS[cfg.command](cfg)
    except AnkError as e:
        cause = getattr(e, 'cause', e)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RESOURCE if isinstance(cause, ResourceLimitError) else EXIT_INVALID

    sys.stdout.write(output if output.endswith('\n') else output + '\n')
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
