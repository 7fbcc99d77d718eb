import argparse
import math
import sys
import time
from pathlib import Path

import pycdg


###############################################################################
# Commands
###############################################################################


def evolve(args, params):
    """Exact distance and Upper Bound Lemma bound after each step"""
    steps = default_steps(args, params.p)
    with pycdg.time.timer('evolve'):
        curve, _ = pycdg.process.evolve(params, steps, bound=True)
    return curve.rows(), ['n', 'tv', 'ub_bound'], {'steps': steps}


def mixing_time(args, params):
    """Smallest n with distance below epsilon"""
    n_star = pycdg.experiments.mixing_time(params, args.epsilon)
    rows = [{'p': params.p, 'epsilon': args.epsilon, 'n_star': n_star}]
    return rows, ['p', 'epsilon', 'n_star'], {}


def scaling(args, params):
    """Mixing time against (log2 p)^2 over the modulus grid"""
    rows = pycdg.experiments.scaling(
        args.p_grid,
        args.epsilon,
        args.multiplier,
        args.multiplier_law,
        args.increments,
        args.threads)
    return rows, list(pycdg.experiments.ScalingRow._fields), {}


def compare_fixed(args, params):
    """Scaling tables of the symmetrized and fixed-multiplier processes"""
    symmetrized, fixed = pycdg.experiments.compare_fixed(
        args.p_grid,
        args.epsilon,
        args.multiplier,
        args.increments,
        args.threads)
    rows = [
        {'process': process, **row._asdict()}
        for process, table in (('symmetrized', symmetrized), ('fixed', fixed))
        for row in table]
    columns = ['process', *pycdg.experiments.ScalingRow._fields]
    return rows, columns, {}


def conditional(args, params):
    """Distance and bound of conditional laws"""
    steps = default_steps(args, params.p, 4.)

    # One row per seed for random sequences
    if args.which == 'random':
        seeds = range(args.seed, args.seed + args.count)
        results = pycdg.experiments.conditional_sweep(
            params,
            steps,
            seeds,
            args.beta,
            args.threads)
    else:
        results = [pycdg.experiments.conditional(
            params,
            steps,
            args.which,
            beta=args.beta)]

    rows = [
        {
            'which': result.which,
            'n': result.steps,
            'seed': result.seed,
            'tv': result.tv,
            'ub_bound': result.ub_bound}
        for result in results]
    summary = {
        'steps': steps,
        'thresholds': pycdg.fourier.thresholds(params.p, args.beta),
        'classes': [result.classes for result in results]}
    return rows, ['which', 'n', 'seed', 'tv', 'ub_bound'], summary


def lower_bound(args, params):
    """Interval lower bound against the exact distance"""
    result = pycdg.experiments.lower_bound(
        params,
        args.n,
        args.shift,
        args.half_width)
    rows = [{'p': params.p, **result._asdict()}]
    return rows, ['p', *pycdg.experiments.LowerBound._fields], {}


def census(args, params):
    """Frequency classes and alternation sums along one walk"""
    steps = default_steps(args, params.p, 4.)
    rows, summary = pycdg.experiments.census(
        params,
        steps,
        args.seed,
        args.beta)
    return rows, ['class', 'count', 'grouped_sum'], summary


def walk_laws(args, params):
    """Exact and empirical laws of the exponent walk"""
    steps = default_steps(args, params.p, pycdg.WINDOW_SCALE)
    rows = pycdg.experiments.walk_laws(steps, args.walks, args.seed)
    summary = {
        'steps': steps,
        'range_frequency': pycdg.walk.range_frequency(
            steps,
            pycdg.log2(params.p),
            args.walks,
            args.seed)}
    return rows, ['law', 'value', 'exact', 'pmf', 'empirical'], summary


def cutoff(args, params):
    """Distance curve with the normalized cutoff window"""
    profile = pycdg.experiments.cutoff(params, args.threshold)
    summary = {
        'crossings': {str(level): n for level, n in profile.crossings.items()},
        'width': profile.width}
    return profile.curve.rows(), ['n', 'tv'], summary


def sample(args, params):
    """Empirical against exact law of X_n"""
    steps = default_steps(args, params.p)
    rows, summary = pycdg.experiments.sample(
        params,
        steps,
        args.samples,
        args.seed,
        args.threads)
    return rows, ['residue', 'exact', 'empirical'], summary


COMMANDS = {
    'evolve': evolve,
    'mixing-time': mixing_time,
    'scaling': scaling,
    'conditional': conditional,
    'lower-bound': lower_bound,
    'census': census,
    'walk-laws': walk_laws,
    'cutoff': cutoff,
    'compare-fixed': compare_fixed,
    'sample': sample}


###############################################################################
# Entry point
###############################################################################


def main(argv=None):
    """Run one command and return its exit code"""
    args = parse_args(argv)

    # Start benchmarking
    pycdg.BENCHMARK = True
    pycdg.TIMER.reset()
    start_time = time.time()

    try:
        params = pycdg.process.Params(
            args.p,
            args.multiplier,
            args.multiplier_law,
            args.increments)
        rows, columns, summary = COMMANDS[args.command](args, params)
    except pycdg.InvariantError as error:
        print(f'Invariant violated: {error}', file=sys.stderr)
        return 3
    except ValueError as error:
        print(f'Invalid argument: {error}', file=sys.stderr)
        return 2

    metadata = {
        'command': args.command,
        'arguments': {
            key: str(value) if isinstance(value, Path) else value
            for key, value in vars(args).items()},
        'config': pycdg.CONFIG,
        'params': params.snapshot(),
        **summary,
        'times': {**pycdg.TIMER(), 'total': time.time() - start_time}}
    pycdg.write.table(rows, columns, metadata, args.out, args.format)
    return 0


def parse_args(argv=None):
    """Parse command-line arguments"""
    parser = argparse.ArgumentParser(
        description='Mixing experiments for X -> a^{+-1} X + b modulo p')
    parser.add_argument(
        '--config',
        type=Path,
        nargs='+',
        help='Configuration files overriding the defaults')
    subparsers = parser.add_subparsers(dest='command', required=True)

    # Flags shared by every command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--p',
        type=int,
        default=pycdg.P,
        help='The odd modulus')
    common.add_argument(
        '--p-grid',
        type=int,
        nargs='+',
        default=pycdg.P_GRID,
        help='Ascending odd moduli for scaling experiments')
    common.add_argument(
        '--epsilon',
        type=float,
        default=pycdg.EPSILON,
        help='Total variation threshold defining the mixing time')
    common.add_argument(
        '--n',
        type=int,
        help='The number of steps. Defaults depend on the command.')
    common.add_argument(
        '--seed',
        type=int,
        default=pycdg.RANDOM_SEED,
        help='The random seed')
    common.add_argument(
        '--threads',
        type=int,
        default=pycdg.NUM_WORKERS,
        help='Number of worker processes')
    common.add_argument(
        '--multiplier',
        type=int,
        default=pycdg.MULTIPLIER,
        help='The multiplier a')
    common.add_argument(
        '--multiplier-law',
        type=float,
        default=pycdg.MULTIPLIER_LAW,
        help='Probability of multiplying by a rather than its inverse')
    common.add_argument(
        '--increments',
        choices=sorted(pycdg.process.INCREMENT_PRESETS),
        default=pycdg.INCREMENTS,
        help='The increment law')
    common.add_argument(
        '--beta',
        type=float,
        default=pycdg.BETA,
        help='Weight on log log p in classifier thresholds')
    common.add_argument(
        '--out',
        type=Path,
        help='The output table. Defaults to stdout.')
    common.add_argument(
        '--format',
        choices=['csv', 'json'],
        default='csv',
        help='The output format')

    # Commands
    parsers = {
        name: subparsers.add_parser(
            name,
            parents=[common],
            help=function.__doc__)
        for name, function in COMMANDS.items()}
    parsers['conditional'].add_argument(
        '--which',
        choices=['alternating', 'forward', 'random'],
        default='random',
        help='The multiplier sequence')
    parsers['conditional'].add_argument(
        '--count',
        type=int,
        default=1,
        help='Number of consecutive seeds for random sequences')
    parsers['lower-bound'].add_argument(
        '--shift',
        type=int,
        help='Signed exponent of the multiplier applied to X_n')
    parsers['lower-bound'].add_argument(
        '--half-width',
        type=int,
        help='Half width of the interval around 0')
    parsers['sample'].add_argument(
        '--samples',
        type=int,
        default=pycdg.SAMPLES,
        help='Number of Monte Carlo samples')
    parsers['walk-laws'].add_argument(
        '--walks',
        type=int,
        default=pycdg.WALKS,
        help='Number of simulated walks')
    parsers['cutoff'].add_argument(
        '--threshold',
        type=float,
        default=pycdg.CUTOFF_THRESHOLD,
        help='Distance at which the curve stops')

    return parser.parse_args(argv)


###############################################################################
# Utilities
###############################################################################


def default_steps(args, p, scale=1.):
    """Requested steps, or ceil(scale (log2 p)^2)"""
    if args.n is not None:
        if args.n < 0:
            raise ValueError(f'Step count must be nonnegative, got {args.n}')
        return args.n
    return math.ceil(scale * pycdg.log2(p) ** 2)


if __name__ == '__main__':
    raise SystemExit(main())
