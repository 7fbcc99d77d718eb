import collections
import functools
import math
from fractions import Fraction

import numpy as np
import scipy.stats

import pycdg


###############################################################################
# Exponent paths
###############################################################################


class ExponentPath:
    """Path w_0 = 0, w_1, ... of the +-1 walk on the exponent of a"""

    def __init__(self, w):
        w = np.array(w, dtype=np.int64).ravel()
        if len(w) == 0 or w[0] != 0:
            raise ValueError('Exponent path must start at 0')
        if np.any(np.abs(np.diff(w)) != 1):
            raise ValueError('Exponent path must take unit steps')
        w.flags.writeable = False
        self.w = w

    def __getitem__(self, index):
        return int(self.w[index])

    def __len__(self):
        return len(self.w)

    def __repr__(self):
        return f'ExponentPath({self.w.tolist()})'

    @property
    def steps(self):
        return len(self.w) - 1


WalkExtremes = collections.namedtuple('WalkExtremes', ['max', 'min', 'range'])


def simulate_walk(steps, seed=pycdg.RANDOM_SEED):
    """Simulate one exponent path. Up steps correspond to FORWARD multipliers."""
    if steps < 0:
        raise ValueError(f'Step count must be nonnegative, got {steps}')
    generator = np.random.default_rng(seed)
    increments = 2 * generator.integers(0, 2, steps) - 1
    return ExponentPath(np.concatenate(([0], np.cumsum(increments))))


def simulate_walks(steps, walks=pycdg.WALKS, seed=pycdg.RANDOM_SEED):
    """Simulate many exponent paths

    Returns
        paths : np.ndarray(shape=(walks, steps + 1))
            One path per row
    """
    generator = np.random.default_rng(seed)
    increments = 2 * generator.integers(0, 2, (walks, steps)) - 1
    paths = np.zeros((walks, steps + 1), dtype=np.int64)
    np.cumsum(increments, axis=1, out=paths[:, 1:])
    return paths


def extremes(path, index):
    """Running maximum and minimum of w_0, ..., w_j"""
    if not 0 <= index < len(path):
        raise IndexError(f'Index {index} outside path of length {len(path)}')
    prefix = path.w[:index + 1]
    maximum, minimum = int(prefix.max()), int(prefix.min())
    return WalkExtremes(maximum, minimum, maximum - minimum)


def returns(path, two_n):
    """Number of returns to 0 among w_1, ..., w_{2n}"""
    return int(np.count_nonzero(path.w[1:two_n + 1] == 0))


def range_frequency(
    steps,
    threshold,
    walks=pycdg.WALKS,
    seed=pycdg.RANDOM_SEED):
    """Fraction of simulated paths whose range M_j - m_j exceeds threshold"""
    paths = simulate_walks(steps, walks, seed)
    ranges = paths.max(axis=1) - paths.min(axis=1)
    return float(np.mean(ranges > threshold))


###############################################################################
# Exact laws
###############################################################################


@functools.lru_cache(maxsize=None)
def max_law(steps, level):
    """Exact probability that the maximum of w_0, ..., w_j equals level

    Arguments
        steps : int
            The number of steps j
        level : int
            The level l

    Returns
        probability : Fraction
            P(M_j = l) = p_{j, l} + p_{j, l + 1} where
            p_{j, l} = C(j, (j + l) / 2) 2^{-j}
    """
    if steps < 0:
        raise ValueError(f'Step count must be nonnegative, got {steps}')
    if level < 0 or level > steps:
        return Fraction(0)
    return endpoint_law(steps, level) + endpoint_law(steps, level + 1)


def endpoint_law(steps, level):
    """Exact probability that w_j equals level"""
    if (steps + level) % 2 or abs(level) > steps:
        return Fraction(0)
    return Fraction(math.comb(steps, (steps + level) // 2), 2 ** steps)


@functools.lru_cache(maxsize=None)
def returns_law(count, two_n):
    """Exact probability of exactly r returns to 0 in 2n steps

    Arguments
        count : int
            The number of returns r
        two_n : int
            The even number of steps 2n

    Returns
        probability : Fraction
            z_{r, 2n} = C(2n - r, n) 2^{-(2n - r)}
    """
    if two_n < 0 or two_n % 2:
        raise ValueError(f'Step count must be even and nonnegative, got {two_n}')
    if count < 0:
        raise ValueError(f'Return count must be nonnegative, got {count}')
    n = two_n // 2
    if count > n:
        return Fraction(0)
    return Fraction(math.comb(two_n - count, n), 2 ** (two_n - count))


def max_pmf(steps):
    """Floating-point law of M_j over levels 0, ..., j"""
    levels = np.arange(steps + 1)
    return endpoint_pmf(steps, levels) + endpoint_pmf(steps, levels + 1)


def endpoint_pmf(steps, levels):
    """Floating-point law of w_j at the given levels"""
    levels = np.asarray(levels)
    parity = (steps + levels) % 2 == 0
    pmf = scipy.stats.binom.pmf((steps + levels) // 2, steps, .5)
    return np.where(parity, pmf, 0.)


def returns_pmf(two_n):
    """Floating-point law of the number of returns over r = 0, ..., n"""
    if two_n < 0 or two_n % 2:
        raise ValueError(f'Step count must be even and nonnegative, got {two_n}')
    counts = np.arange(two_n // 2 + 1)
    return scipy.stats.binom.pmf(two_n // 2, two_n - counts, .5)


###############################################################################
# Occupation counts
###############################################################################


class OccupationTable:
    """First visits and windowed revisit counts R(k) per level

    Arguments
        levels : dict
            Level k to (first visit index, revisit count R(k))
        window : int
            Revisits count when 0 < i - first visit <= window
    """

    def __init__(self, levels, window):
        self.levels = dict(sorted(levels.items()))
        self.window = window

    def __contains__(self, level):
        return level in self.levels

    def __getitem__(self, level):
        return self.levels[level][1]

    def __iter__(self):
        return iter(self.levels)

    def __len__(self):
        return len(self.levels)

    def __repr__(self):
        return f'OccupationTable({self.counts()}, window={self.window})'

    @property
    def max(self):
        return max(self.levels)

    @property
    def min(self):
        return min(self.levels)

    def counts(self):
        """Map from level to revisit count"""
        return {level: count for level, (_, count) in self.levels.items()}

    def first_visit(self, level):
        return self.levels[level][0]

    def tail_frequency(self, bound, strict=False):
        """Fraction of levels with R(k) <= bound, or < bound if strict"""
        counts = np.array(list(self.counts().values()))
        hits = counts < bound if strict else counts <= bound
        return float(np.mean(hits))


def occupation_counts(path, window):
    """Count windowed revisits of every visited level

    Arguments
        path : ExponentPath
            The exponent path
        window : int
            Largest distance from the first visit that counts

    Returns
        table : OccupationTable
            Level k to (first visit, R(k))
    """
    if window < 1:
        raise ValueError(f'Window must be positive, got {window}')
    levels = {}
    for level in np.unique(path.w):
        visits = np.flatnonzero(path.w == level)
        distance = visits - visits[0]
        count = np.count_nonzero((distance > 0) & (distance <= window))
        levels[int(level)] = (int(visits[0]), int(count))
    return OccupationTable(levels, window)
