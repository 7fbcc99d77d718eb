import collections
import functools
import math

import numpy as np

import pycdg


###############################################################################
# Mixing time
###############################################################################


def mixing_time(params, epsilon=pycdg.EPSILON):
    """Smallest n with distance to uniform below epsilon

    Doubles the horizon until the distance drops below epsilon, then finds
    the crossing inside the last segment. Each segment resumes from the law
    at the end of the previous one.
    """
    validate_epsilon(epsilon)
    start = pycdg.group.point_mass(params.modulus)
    if pycdg.group.tv_distance(start) < epsilon:
        return 0

    lower, upper = 0, 1
    while True:
        with pycdg.time.timer('evolve'):
            curve, distribution = pycdg.process.evolve(
                params,
                upper - lower,
                start=start,
                offset=lower)

        # Distance is nonincreasing, so the first crossing is the answer
        crossing = curve.crossing(epsilon)
        if crossing is not None:
            return crossing

        lower, upper, start = upper, 2 * upper, distribution


ScalingRow = collections.namedtuple(
    'ScalingRow',
    ['p', 'n_star', 'log2p', 'ratio_sq', 'ratio_loglog'])


def scaling(
    p_grid=pycdg.P_GRID,
    epsilon=pycdg.EPSILON,
    multiplier=pycdg.MULTIPLIER,
    multiplier_law=pycdg.MULTIPLIER_LAW,
    increments=pycdg.INCREMENTS,
    num_workers=pycdg.NUM_WORKERS):
    """Mixing time against (log2 p)^2 over a grid of moduli

    Returns
        rows : list of ScalingRow
            One row per modulus, in grid order
    """
    validate_epsilon(epsilon)
    p_grid = list(p_grid)
    if p_grid != sorted(p_grid):
        raise ValueError(f'Modulus grid must be ascending, got {p_grid}')

    # Validate all moduli before starting any work
    for p in p_grid:
        pycdg.process.Params(p, multiplier, multiplier_law, increments)

    return pycdg.parallel_map(
        functools.partial(
            scaling_row,
            epsilon=epsilon,
            multiplier=multiplier,
            multiplier_law=multiplier_law,
            increments=increments),
        p_grid,
        num_workers,
        'Mixing times')


def scaling_row(p, epsilon, multiplier, multiplier_law, increments):
    """Mixing time and its ratios for one modulus"""
    params = pycdg.process.Params(p, multiplier, multiplier_law, increments)
    n_star = mixing_time(params, epsilon)
    log2p = pycdg.log2(p)
    return ScalingRow(
        p,
        n_star,
        log2p,
        n_star / log2p ** 2,
        n_star / (log2p * pycdg.loglog2(p)))


def compare_fixed(
    p_grid=pycdg.P_GRID,
    epsilon=pycdg.EPSILON,
    multiplier=pycdg.MULTIPLIER,
    increments=pycdg.INCREMENTS,
    num_workers=pycdg.NUM_WORKERS):
    """Scaling tables for the symmetrized and the fixed-multiplier process

    Returns
        symmetrized : list of ScalingRow
            Multiplier a or its inverse with equal probability
        fixed : list of ScalingRow
            Multiplier a at every step
    """
    kwargs = {
        'epsilon': epsilon,
        'multiplier': multiplier,
        'increments': increments,
        'num_workers': num_workers}
    return (
        scaling(p_grid, multiplier_law=.5, **kwargs),
        scaling(p_grid, multiplier_law=1., **kwargs))


###############################################################################
# Lower bound
###############################################################################


LowerBoundDefaults = collections.namedtuple(
    'LowerBoundDefaults',
    ['steps', 'shift', 'half_width'])


LowerBound = collections.namedtuple(
    'LowerBound',
    ['steps', 'shift', 'half_width', 'interval_mass', 'bound', 'tv'])


def lower_bound_defaults(p):
    """Step count, shift and half width exhibiting the interval argument"""
    log2p = pycdg.log2(p)
    half_width = math.ceil(
        pycdg.HALF_WIDTH_FRACTION * math.sqrt(p) * log2p ** 2)
    return LowerBoundDefaults(
        math.floor(pycdg.STEPS_FRACTION * log2p ** 2),
        math.ceil(pycdg.SHIFT_FRACTION * log2p),

        # Cap strictly below p / 4
        min(half_width, p // 4))


def lower_bound(params, steps=None, shift=None, half_width=None):
    """Lower bound on the distance from the mass of a short interval

    The law Q of a^shift X_n puts most of its mass on the residues
    [-W, W] when n is small, while the uniform law puts (2W + 1) / p there.
    Negative shifts multiply by powers of the inverse of a.

    Arguments
        params : Params
            Step law
        steps : int
            Number of steps n
        shift : int
            Signed exponent s of the multiplier a
        half_width : int
            Half width W of the interval, below p / 2

    Returns
        result : LowerBound
            Interval mass, the bound Q([-W, W]) - (2W + 1) / p, and the
            exact distance
    """
    p = params.p
    defaults = lower_bound_defaults(p)
    steps = defaults.steps if steps is None else steps
    shift = defaults.shift if shift is None else shift
    half_width = defaults.half_width if half_width is None else half_width
    if not 0 <= 2 * half_width < p:
        raise ValueError(
            f'Half width must lie in [0, p / 2), got {half_width} for p = {p}')

    with pycdg.time.timer('evolve'):
        _, distribution = pycdg.process.evolve(params, steps)

    # Law of c X is P(c^{-1} s) at residue s
    scale = pow(params.multiplier, shift, p)
    mass = distribution.mass[pycdg.process.gather(scale, p)]

    interval = np.r_[0:half_width + 1, p - half_width:p]
    interval_mass = float(mass[np.unique(interval % p)].sum())
    bound = interval_mass - (2 * half_width + 1) / p
    tv = pycdg.group.tv_distance(distribution)

    if bound > tv + pycdg.INVARIANT_TOLERANCE:
        raise pycdg.InvariantError(
            f'Interval bound {bound} exceeds the distance {tv} at n = {steps}')
    return LowerBound(steps, shift, half_width, interval_mass, bound, tv)


###############################################################################
# Conditional laws
###############################################################################


ConditionalResult = collections.namedtuple(
    'ConditionalResult',
    ['which', 'steps', 'seed', 'tv', 'ub_bound', 'classes'])


def multiplier_sequence(params, steps, which, seed=pycdg.RANDOM_SEED):
    """Multiplier sequence of an n-step run by kind"""
    if steps < 2:
        raise ValueError(f'Conditional runs need at least 2 steps, got {steps}')
    if which == 'alternating':
        return pycdg.process.MultiplierSequence.alternating(steps - 1)
    if which == 'forward':
        return pycdg.process.MultiplierSequence.forward(steps - 1)
    if which == 'random':
        return pycdg.process.MultiplierSequence.random(
            steps - 1,
            seed,
            params.multiplier_law)
    raise ValueError(f'Sequence kind {which} is not defined')


def conditional(
    params,
    steps,
    which='random',
    seed=pycdg.RANDOM_SEED,
    beta=pycdg.BETA):
    """Distance, bound and frequency classes of one conditional law"""
    sequence = multiplier_sequence(params, steps, which, seed)

    with pycdg.time.timer('conditional'):
        distribution = pycdg.process.conditional(params, sequence)
    tv = pycdg.group.tv_distance(distribution)
    bound = pycdg.fourier.conditional_ub_bound(sequence, params)
    if tv ** 2 > bound + pycdg.INVARIANT_TOLERANCE:
        raise pycdg.InvariantError(
            f'Squared distance {tv ** 2} exceeds the bound {bound} '
            f'for the {which} sequence at n = {steps}')

    # Frequency classes for the sequence's exponent path
    with pycdg.time.timer('classify'):
        occupation = pycdg.walk.occupation_counts(
            sequence.to_path(),
            occupation_window(params.p))
        lower, upper = pycdg.fourier.thresholds(params.p, beta)
        codes = pycdg.fourier.classify_all(
            occupation,
            steps,
            params.p,
            lower,
            upper,
            params.multiplier)

    return ConditionalResult(
        which,
        steps,
        seed if which == 'random' else None,
        tv,
        bound,
        pycdg.fourier.class_counts(codes))


def conditional_sweep(
    params,
    steps,
    seeds,
    beta=pycdg.BETA,
    num_workers=pycdg.NUM_WORKERS):
    """Conditional results for many random multiplier sequences"""
    return pycdg.parallel_map(
        functools.partial(
            conditional,
            params,
            steps,
            'random',
            beta=beta),
        seeds,
        num_workers,
        'Conditional laws')


###############################################################################
# Cutoff
###############################################################################


CutoffProfile = collections.namedtuple(
    'CutoffProfile',
    ['curve', 'crossings', 'width'])


def cutoff(
    params,
    threshold=pycdg.CUTOFF_THRESHOLD,
    levels=pycdg.CUTOFF_LEVELS):
    """Full distance curve until it drops below threshold

    Returns
        profile : CutoffProfile
            The curve, the first step below each level, and the window
            between the highest and lowest level crossings normalized by
            the crossing of the middle level
    """
    if not 0 < threshold < 1:
        raise ValueError(f'Threshold must lie in (0, 1), got {threshold}')
    levels = sorted(levels, reverse=True)

    # Every level must be crossed after step 0
    initial = pycdg.group.tv_distance(pycdg.group.point_mass(params.modulus))
    if not levels or not all(threshold <= level <= initial for level in levels):
        raise ValueError(
            f'Levels must lie in [{threshold}, {initial}], got {levels}')

    curve = pycdg.process.MixingCurve(params)
    with pycdg.time.timer('evolve'):
        for index, distribution in enumerate(
            pycdg.process.trajectory(params)
        ):
            tv = pycdg.group.tv_distance(distribution)
            curve.append(index, tv)
            if tv < threshold:
                break

    crossings = {level: curve.crossing(level) for level in levels}
    middle = crossings[levels[len(levels) // 2]]
    width = (crossings[levels[-1]] - crossings[levels[0]]) / middle
    return CutoffProfile(curve, crossings, width)


###############################################################################
# Census
###############################################################################


def census(
    params,
    steps,
    seed=pycdg.RANDOM_SEED,
    beta=pycdg.BETA):
    """Measure the frequency classes and alternation sums along one walk

    Returns
        rows : list of dict
            Per class: the number of frequencies and the sum of their
            grouped products
        summary : dict
            Thresholds, tail frequencies, the range event, and the
            alternation census of the window the walk covers
    """
    p = params.p
    sequence = multiplier_sequence(params, steps, 'random', seed)
    path = sequence.to_path()
    occupation = pycdg.walk.occupation_counts(path, occupation_window(p))
    lower, upper = pycdg.fourier.thresholds(p, beta)

    # Classify
    with pycdg.time.timer('classify'):
        codes = pycdg.fourier.classify_all(
            occupation,
            steps,
            p,
            lower,
            upper,
            params.multiplier)
        grouped = pycdg.fourier.grouped_products(params, occupation, steps)

    rows = []
    for label, count in pycdg.fourier.class_counts(codes).items():
        rows.append({
            'class': label,
            'count': count,
            'grouped_sum': float(grouped[codes == class_code(label)].sum())})

    # Alternations over the binary places the walk covers
    extremes = pycdg.walk.extremes(path, len(path) - 1)
    loglog = pycdg.loglog2(p)
    alternations = None
    if extremes.range > pycdg.log2(p):
        with pycdg.time.timer('census'):
            report = pycdg.fourier.alternation_census(
                p,
                steps + extremes.min,
                extremes.range,
                pycdg.DECAY,
                beta * loglog)
        alternations = {
            'start': steps + extremes.min,
            'length': extremes.range,
            'histogram': report.histogram.tolist(),
            'weighted_sum': report.weighted_sum,
            'majorant': report.majorant}

    summary = {
        'steps': steps,
        'seed': seed,
        'window': occupation.window,
        'lower_threshold': lower,
        'upper_threshold': upper,
        'middle_band_empty': lower >= upper,
        'levels': len(occupation),
        'tail_frequency_lower': occupation.tail_frequency(lower),
        'tail_frequency_upper': occupation.tail_frequency(upper),
        'tail_frequency_cap': occupation.tail_frequency(
            loglog ** pycdg.CAP_EXPONENT),
        'max': extremes.max,
        'min': extremes.min,
        'range': extremes.range,
        'range_exceeds_log2p': extremes.range > pycdg.log2(p),
        'alternations': alternations}
    return rows, summary


def class_code(label):
    """Inverse of the class label encoding used by classify_all"""
    if label == pycdg.fourier.Tag.S1.value:
        return -1
    if label == pycdg.fourier.Tag.UNRESOLVED.value:
        return 0
    return int(label[3:-1])


###############################################################################
# Walk laws
###############################################################################


def walk_laws(steps, walks=pycdg.WALKS, seed=pycdg.RANDOM_SEED):
    """Exact, floating-point and empirical laws of the maximum and returns

    Returns
        rows : list of dict
            One row per (law, value) with exact, pmf and empirical columns
    """
    paths = pycdg.walk.simulate_walks(steps, walks, seed)

    # Maximum of w_0, ..., w_j
    maxima = np.bincount(paths.max(axis=1), minlength=steps + 1)
    pmf = pycdg.walk.max_pmf(steps)
    rows = [
        {
            'law': 'max',
            'value': level,
            'exact': pycdg.walk.max_law(steps, level),
            'pmf': float(pmf[level]),
            'empirical': maxima[level] / walks}
        for level in range(steps + 1)]

    # Returns to 0 in the largest even number of steps
    two_n = steps - steps % 2
    returns = np.count_nonzero(paths[:, 1:two_n + 1] == 0, axis=1)
    counts = np.bincount(returns, minlength=two_n // 2 + 1)
    pmf = pycdg.walk.returns_pmf(two_n)
    rows.extend(
        {
            'law': 'returns',
            'value': count,
            'exact': pycdg.walk.returns_law(count, two_n),
            'pmf': float(pmf[count]),
            'empirical': counts[count] / walks}
        for count in range(two_n // 2 + 1))
    return rows


###############################################################################
# Sampling
###############################################################################


def sample(
    params,
    steps,
    samples=pycdg.SAMPLES,
    seed=pycdg.RANDOM_SEED,
    num_workers=pycdg.NUM_WORKERS):
    """Compare the empirical and exact laws of X_n

    Returns
        rows : list of dict
            Exact and empirical probability per residue
        summary : dict
            Exact and empirical distances and the sampling error scale
    """
    with pycdg.time.timer('evolve'):
        _, exact = pycdg.process.evolve(params, steps)
    with pycdg.time.timer('sample'):
        tv, error, empirical = pycdg.process.empirical_tv(
            params,
            steps,
            samples,
            seed,
            num_workers)
    rows = [
        {'residue': residue, 'exact': float(x), 'empirical': float(y)}
        for residue, (x, y) in enumerate(zip(exact.mass, empirical.mass))]
    summary = {
        'steps': steps,
        'samples': samples,
        'seed': seed,
        'tv': pycdg.group.tv_distance(exact),
        'empirical_tv': tv,
        'error': error}
    return rows, summary


###############################################################################
# Utilities
###############################################################################


def occupation_window(p):
    """Revisit window floor((log2 p)^2)"""
    return math.floor(pycdg.log2(p) ** 2)


def validate_epsilon(epsilon):
    if not 0 < epsilon < 1:
        raise ValueError(f'Epsilon must lie in (0, 1), got {epsilon}')
