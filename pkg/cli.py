# cli.py
"""qgames: payoff tables, mixed-strategy scans, equilibria and a claim ledger.

    qgames table --game pd --scheme eisert --strategies C,D,Q
    qgames scan --game hd --resolution 101 > surface.csv
    qgames region --threshold 15 --lobe 'p>q'
    qgames solve --input table.json --ess
    qgames verify --output claims.json
"""
import argparse
import csv
import io
import json
import logging
import sys
from typing import List, Optional

import config
import verify
from errors import QGamesError
from gamedef import (HawkDoveParams, StrategicGame, format_ascii, format_number, game_to_dict,
                     hawk_dove_game, output_number, parse_game_file, prisoners_dilemma_game)
from mixedscan import Surface, grid_scan, grid_to_csv, region_above, region_to_csv
from qscheme import (BELL_PLUS, MW_I_PHASE, QuantumGameSpec, Scheme, extended_payoff_table,
                     parse_strategies, payoff_operators)
from solvers import analyze

logger = logging.getLogger(__name__)

SCHEMES = {"mw": Scheme.MARINATTO_WEBER, "eisert": Scheme.EISERT}
STATES = {"mwi": MW_I_PHASE, "bell": BELL_PLUS}


def _resolution(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 2:
        raise argparse.ArgumentTypeError(f"resolution must be at least 2, got {value}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--verbose', action='store_true', help='Debug logging on stderr')
    common.add_argument('--output', help='Write the result to this file instead of stdout')

    game = argparse.ArgumentParser(add_help=False)
    game.add_argument('--game', choices=['hd', 'pd'], default='hd', help='Hawk-Dove or Prisoner\'s Dilemma')
    game.add_argument('--v', type=float, default=50.0, help='Hawk-Dove resource value')
    game.add_argument('--i', type=float, default=100.0, help='Hawk-Dove injury cost')
    game.add_argument('--d', type=float, default=10.0, help='Hawk-Dove display cost')

    quantum = argparse.ArgumentParser(add_help=False)
    quantum.add_argument('--input', help='Game JSON file (overrides --game)')
    quantum.add_argument('--scheme', choices=sorted(SCHEMES), default='mw', help='Quantisation scheme')
    quantum.add_argument('--state', choices=sorted(STATES), default='mwi',
                         help='Initial state for the mw scheme: mwi=(|00>+i|11>)/sqrt2, bell=(|00>+|11>)/sqrt2')
    quantum.add_argument('--strategies', help='Comma list of H,C,D,Q,R or u(theta,phi) literals')

    lattice = argparse.ArgumentParser(add_help=False)
    lattice.add_argument('--resolution', type=_resolution, default=101, help='Lattice points per axis')

    parser = argparse.ArgumentParser(prog='qgames', description='Quantum game analysis engine')
    sub = parser.add_subparsers(dest='command', required=True)

    table = sub.add_parser('table', parents=[common, game, quantum], help='Classical or quantum payoff table')
    table.add_argument('--format', choices=['ascii', 'json', 'csv'], default='ascii')

    scan = sub.add_parser('scan', parents=[common, game, lattice], help='Mixed-strategy payoff surface as CSV')
    scan.add_argument('--format', choices=['csv'], default='csv')

    region = sub.add_parser('region', parents=[common, game, lattice], help='Lattice points above a threshold')
    region.add_argument('--threshold', type=float, default=15.0)
    region.add_argument('--lobe', choices=['all', 'p>q', 'q>p'], default='all')
    region.add_argument('--format', choices=['csv'], default='csv')

    solve = sub.add_parser('solve', parents=[common, game, quantum], help='Nash, Pareto and ESS report')
    solve.add_argument('--ess', action='store_true', help='Also test each strategy for evolutionary stability')
    solve.add_argument('--format', choices=['json'], default='json')

    check = sub.add_parser('verify', parents=[common], help='Recompute every printed claim')
    check.add_argument('--seed', type=int, default=config.SEED, help='Seed for the angle sampler')
    check.add_argument('--samples', type=_positive, default=config.SAMPLES, help='Random angle samples')
    check.add_argument('--format', choices=['json'], default='json')

    return parser


def _params(args) -> HawkDoveParams:
    return HawkDoveParams(v=args.v, i=args.i, d=args.d)


def _classical_game(args) -> StrategicGame:
    if getattr(args, 'input', None):
        with open(args.input, 'r', encoding='utf-8') as f:
            game = parse_game_file(f.read())
        logger.info(f"loaded {game.shape[0]}x{game.shape[1]} game from {args.input}")
        return game
    if args.game == 'pd':
        return prisoners_dilemma_game()
    return hawk_dove_game(_params(args))


def _game_from_args(args) -> StrategicGame:
    game = _classical_game(args)
    if not args.strategies:
        return game
    spec = QuantumGameSpec(SCHEMES[args.scheme], payoff_operators(game), STATES[args.state])
    return extended_payoff_table(spec, parse_strategies(args.strategies))


def _surface(args) -> Surface:
    if args.game == 'pd':
        return Surface.prisoners_dilemma()
    return Surface.hawk_dove(_params(args))


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def table_to_csv(game: StrategicGame) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("alice", "bob", "payoff_a", "payoff_b"))
    n, m = game.shape
    for i in range(n):
        for j in range(m):
            a, b = game.cell(i, j)
            writer.writerow((game.labels_a[i], game.labels_b[j], format_number(a), format_number(b)))
    return buf.getvalue()


def cmd_table(args) -> str:
    game = _game_from_args(args)
    if args.format == 'json':
        return _dump_json(game_to_dict(game, denoise=True))
    if args.format == 'csv':
        return table_to_csv(game)
    return format_ascii(game)


def cmd_scan(args) -> str:
    return grid_to_csv(grid_scan(_surface(args), args.resolution))


def cmd_region(args) -> str:
    region = region_above(_surface(args), args.threshold, args.resolution).lobe(args.lobe)
    logger.info(f"lobe {args.lobe}: {len(region)} points, bounding box {region.bounding_box()}")
    return region_to_csv(region)


def cmd_solve(args) -> str:
    report = analyze(_game_from_args(args), ess=args.ess)
    obj = report.to_dict()
    if obj["mixed_nash_2x2"] is not None:
        obj["mixed_nash_2x2"] = [[output_number(x) for x in pq] for pq in obj["mixed_nash_2x2"]]
    return _dump_json(obj)


def cmd_verify(args) -> str:
    claims = verify.run_verification(seed=args.seed, samples=args.samples)
    return _dump_json({
        "claims": [c.to_dict() for c in claims],
        "summary": verify.summarize(claims),
    })


COMMANDS = {
    'table': cmd_table,
    'scan': cmd_scan,
    'region': cmd_region,
    'solve': cmd_solve,
    'verify': cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
        format=config.LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )

    try:
        text = COMMANDS[args.command](args)
        if args.output:
            with open(args.output, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
            logger.info(f"wrote {args.command} output to {args.output}")
        else:
            sys.stdout.write(text)
    except (QGamesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
