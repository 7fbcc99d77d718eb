import enum
import functools
import itertools
import math
from fractions import Fraction

import numpy as np

import pycdg


###############################################################################
# Constants
###############################################################################


# Increment laws as (value, probability) pairs
INCREMENT_PRESETS = {
    'binary': ((1, Fraction(1, 2)), (-1, Fraction(1, 2))),
    'trinary': ((1, Fraction(1, 3)), (0, Fraction(1, 3)), (-1, Fraction(1, 3)))}


###############################################################################
# Step law
###############################################################################


class Choice(enum.Enum):
    """Which multiplier a step uses"""

    # Multiply by a
    FORWARD = 1

    # Multiply by the inverse of a
    INVERSE = -1


class Params:
    """Law of one step X -> a X + b of the process

    Arguments
        modulus : Modulus or int
            The odd modulus p
        multiplier : int
            The multiplier a, invertible modulo p
        multiplier_law : float or Fraction
            Probability of multiplying by a rather than its inverse
        increments : str or list of (int, probability) pairs
            Law of b. Either a name in INCREMENT_PRESETS or explicit pairs.
    """

    def __init__(
        self,
        modulus,
        multiplier=pycdg.MULTIPLIER,
        multiplier_law=pycdg.MULTIPLIER_LAW,
        increments=pycdg.INCREMENTS):
        self.modulus = pycdg.group.Modulus(modulus)
        p = self.modulus.p

        # Multiplier and its inverse
        if not 2 <= multiplier <= p - 1:
            raise ValueError(f'Multiplier must lie in [2, {p - 1}], got {multiplier}')
        self.multiplier = int(multiplier)
        self.multiplier_inverse = self.modulus.inverse(self.multiplier)

        # Probability of the forward multiplier
        self.multiplier_law = Fraction(multiplier_law).limit_denominator(10 ** 12)
        if not 0 <= self.multiplier_law <= 1:
            raise ValueError(
                f'Multiplier law must lie in [0, 1], got {multiplier_law}')

        # Increments, reduced and merged
        self.source = increments
        self.preset = increments if isinstance(increments, str) else None
        self.increments = parse_increments(increments, p)

    def __eq__(self, other):
        return isinstance(other, Params) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (
            f'Params(p={self.p}, multiplier={self.multiplier}, '
            f'multiplier_law={self.multiplier_law}, '
            f'increments={self.preset or self.increments})')

    @property
    def p(self):
        return self.modulus.p

    @property
    def multipliers(self):
        """Multipliers with positive probability and their probabilities"""
        law = {}
        pairs = (
            (self.multiplier, self.multiplier_law),
            (self.multiplier_inverse, 1 - self.multiplier_law))
        for multiplier, probability in pairs:
            if probability > 0:
                law[multiplier] = law.get(multiplier, 0) + probability
        return tuple(law.items())

    @property
    def symmetric(self):
        """Whether the increment law is invariant under b -> -b"""
        law = dict(self.increments)
        return all(
            law.get((-value) % self.p) == probability
            for value, probability in law.items())

    @property
    def values(self):
        """Increment residues as an array"""
        return np.array([value for value, _ in self.increments], dtype=np.int64)

    @property
    def weights(self):
        """Increment probabilities as an array"""
        return np.array(
            [float(probability) for _, probability in self.increments])

    def key(self):
        return (
            self.p,
            self.multiplier,
            self.multiplier_law,
            self.increments)

    def snapshot(self):
        """JSON-serializable description"""
        return {
            'p': self.p,
            'multiplier': self.multiplier,
            'multiplier_inverse': self.multiplier_inverse,
            'multiplier_law': str(self.multiplier_law),
            'increments': [
                [value, str(probability)]
                for value, probability in self.increments]}

    def with_modulus(self, modulus):
        """Same step law on another modulus"""
        return Params(
            modulus,
            self.multiplier,
            self.multiplier_law,
            self.source)


def parse_increments(increments, p):
    """Reduce an increment law to canonical residues with exact weights"""
    if isinstance(increments, str):
        if increments not in INCREMENT_PRESETS:
            raise ValueError(f'Increment law {increments} is not defined')
        increments = INCREMENT_PRESETS[increments]

    law = {}
    for value, probability in increments:
        probability = Fraction(probability).limit_denominator(10 ** 12)
        if probability <= 0:
            raise ValueError(f'Increment {value} has probability {probability}')
        residue = int(value) % p
        law[residue] = law.get(residue, 0) + probability
    if abs(float(sum(law.values())) - 1.) > pycdg.INVARIANT_TOLERANCE:
        raise ValueError(
            f'Increment probabilities sum to {float(sum(law.values()))}, not 1')
    return tuple(sorted(law.items()))


###############################################################################
# Multiplier sequences
###############################################################################


class MultiplierSequence:
    """Multipliers a_1, ..., a_{n - 1} of an n-step run, in time order"""

    def __init__(self, choices=()):
        self.choices = tuple(Choice(choice) for choice in choices)

    def __eq__(self, other):
        return (
            isinstance(other, MultiplierSequence) and
            self.choices == other.choices)

    def __hash__(self):
        return hash(self.choices)

    def __iter__(self):
        return iter(self.choices)

    def __len__(self):
        return len(self.choices)

    def __repr__(self):
        letters = ''.join(
            'F' if choice is Choice.FORWARD else 'I' for choice in self.choices)
        return f'MultiplierSequence({letters})'

    @property
    def steps(self):
        """Number of steps n of the run the sequence conditions"""
        return len(self.choices) + 1

    @classmethod
    def alternating(cls, length):
        """a_{n - 1} = a, a_{n - 2} = inverse, a_{n - 3} = a, ..."""
        recent_first = [
            Choice.FORWARD if i % 2 == 0 else Choice.INVERSE
            for i in range(length)]
        return cls(reversed(recent_first))

    @classmethod
    def forward(cls, length):
        """Every step multiplies by a"""
        return cls([Choice.FORWARD] * length)

    @classmethod
    def from_path(cls, path):
        """Sequence whose exponent path is the given path"""
        increments = np.diff(np.asarray(path.w))
        return cls(reversed([Choice(int(step)) for step in increments]))

    @classmethod
    def random(cls, length, seed=pycdg.RANDOM_SEED, law=pycdg.MULTIPLIER_LAW):
        """Independent choices, each FORWARD with probability law"""
        generator = np.random.default_rng(seed)
        forward = generator.random(length) < float(law)
        return cls(
            Choice.FORWARD if value else Choice.INVERSE for value in forward)

    def to_path(self):
        """Exponent path, read from the most recent multiplier backwards

        Entry w_r is the exponent of a in the coefficient of b_{n - 1 - r}.
        """
        increments = [choice.value for choice in reversed(self.choices)]
        return pycdg.walk.ExponentPath(
            np.concatenate(([0], np.cumsum(increments, dtype=np.int64))))


###############################################################################
# Exact evolution
###############################################################################


def step(distribution, params):
    """Law of a X + b when X has the given law

    Arguments
        distribution : Distribution
            Law of X
        params : Params
            Step law

    Returns
        distribution : Distribution
            Law of a X + b
    """
    if distribution.modulus != params.modulus:
        raise ValueError(
            f'Distribution modulus {distribution.p} does not match '
            f'process modulus {params.p}')

    # Multiply
    mass = distribution.mass
    scaled = np.zeros(params.p)
    for multiplier, probability in params.multipliers:
        scaled += float(probability) * mass[gather(multiplier, params.p)]

    # Translate
    return pycdg.group.Distribution(params.modulus, translate(scaled, params))


def trajectory(params, start=None):
    """Yield the laws P_0, P_1, ... of the process indefinitely"""
    distribution = (
        pycdg.group.point_mass(params.modulus) if start is None else start)
    while True:
        yield distribution
        distribution = step(distribution, params)


def evolve(params, steps, start=None, offset=0, bound=False):
    """Exact laws of X_0, ..., X_n with their distances to uniform

    Arguments
        params : Params
            Step law
        steps : int
            Number of steps n
        start : Distribution
            Law at step offset. Defaults to the point mass at 0.
        offset : int
            Step index of start
        bound : bool
            Whether to record the Upper Bound Lemma bound at each step

    Returns
        curve : MixingCurve
            Distance to uniform after each step
        distribution : Distribution
            Law of X_{offset + n}
    """
    if steps < 0:
        raise ValueError(f'Step count must be nonnegative, got {steps}')
    curve = MixingCurve(params)
    laws = itertools.islice(trajectory(params, start), steps + 1)
    for index, distribution in enumerate(laws):
        curve.append(
            offset + index,
            pycdg.group.tv_distance(distribution),
            pycdg.group.ub_lemma_bound(distribution) if bound else None)
    return curve, distribution


def conditional(params, sequence):
    """Exact law of X_n given the multipliers a_1, ..., a_{n - 1}

    Only the increments are random. The first step adds b_0 to X_0 = 0.
    """
    mass = pycdg.group.point_mass(params.modulus).mass
    mass = translate(mass, params)
    for choice in sequence:
        multiplier = (
            params.multiplier if choice is Choice.FORWARD
            else params.multiplier_inverse)
        mass = translate(mass[gather(multiplier, params.p)], params)
    return pycdg.group.Distribution(params.modulus, mass)


def sequences(params, steps):
    """All multiplier sequences of an n-step run with their probabilities"""
    law = {
        Choice.FORWARD: params.multiplier_law,
        Choice.INVERSE: 1 - params.multiplier_law}
    for choices in itertools.product(tuple(Choice), repeat=max(steps - 1, 0)):
        probability = math.prod((law[choice] for choice in choices), start=Fraction(1))
        if probability > 0:
            yield MultiplierSequence(choices), probability


def mixture(params, steps):
    """Annealed law of X_n rebuilt as a mixture of conditional laws"""
    validate_mixture(steps)
    if steps == 0:
        return pycdg.group.point_mass(params.modulus)
    mass = np.zeros(params.p)
    for sequence, probability in sequences(params, steps):
        mass += float(probability) * conditional(params, sequence).mass
    return pycdg.group.Distribution(params.modulus, mass)


def mixture_tv_bound(params, steps):
    """Weighted average of conditional distances, which dominates the annealed distance"""
    validate_mixture(steps)
    if steps == 0:
        return pycdg.group.tv_distance(pycdg.group.point_mass(params.modulus))
    return sum(
        float(probability) *
        pycdg.group.tv_distance(conditional(params, sequence))
        for sequence, probability in sequences(params, steps))


def enumerate_exact(params, steps):
    """Exact law of X_n by enumerating every multiplier and increment choice

    Returns
        law : dict
            Residue to Fraction probability
    """
    p = params.p
    law = {}
    multipliers = params.multipliers
    for choices in itertools.product(multipliers, repeat=max(steps - 1, 0)):
        for increments in itertools.product(params.increments, repeat=steps):
            value = 0
            probability = Fraction(1)
            for index, (increment, weight) in enumerate(increments):

                # X_0 = 0 makes a_0 irrelevant
                if index:
                    multiplier, multiplier_weight = choices[index - 1]
                    value *= multiplier
                    probability *= multiplier_weight
                value = (value + increment) % p
                probability *= weight
            law[value] = law.get(value, 0) + probability
    return law


###############################################################################
# Mixing curves
###############################################################################


class MixingCurve:
    """Distance to uniform of P_n along a run of the process"""

    def __init__(self, params):
        self.params = params
        self.points = []
        self.bounds = []

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def p(self):
        return self.params.p

    @property
    def steps(self):
        return np.array([point[0] for point in self.points])

    @property
    def tv(self):
        return np.array([point[1] for point in self.points])

    def append(self, step, tv, bound=None):
        """Record the distance at one step, checking monotonicity and the bound"""
        if self.points and tv > self.points[-1][1] + pycdg.INVARIANT_TOLERANCE:
            raise pycdg.InvariantError(
                f'Distance increased from {self.points[-1][1]} to {tv} '
                f'at step {step} for p = {self.p}')
        if bound is not None and tv ** 2 > bound + pycdg.INVARIANT_TOLERANCE:
            raise pycdg.InvariantError(
                f'Squared distance {tv ** 2} exceeds the Upper Bound Lemma '
                f'bound {bound} at step {step} for p = {self.p}')
        self.points.append((step, tv))
        self.bounds.append(bound)

    def crossing(self, threshold):
        """Smallest recorded step with distance below threshold, or None"""
        for step, tv in self.points:
            if tv < threshold:
                return step

    def rows(self):
        """Table rows for output"""
        return [
            {'n': step, 'tv': tv, 'ub_bound': bound}
            for (step, tv), bound in zip(self.points, self.bounds)]


###############################################################################
# Monte Carlo sampling
###############################################################################


def sample_trajectory(params, steps, seed=pycdg.RANDOM_SEED):
    """Sample X_n and the multipliers used

    Returns
        residue : int
            The sampled X_n
        sequence : MultiplierSequence
            The sampled a_1, ..., a_{n - 1}
    """
    generator = np.random.default_rng(seed)
    values, cumulative = params.values, increment_cdf(params)
    law = float(params.multiplier_law)

    value, choices = 0, []
    for index in range(steps):
        if index:
            choice = (
                Choice.FORWARD if generator.random() < law else Choice.INVERSE)
            choices.append(choice)
            multiplier = (
                params.multiplier if choice is Choice.FORWARD
                else params.multiplier_inverse)
            value = value * multiplier % params.p
        increment = values[np.searchsorted(cumulative, generator.random(), side='right')]
        value = int((value + increment) % params.p)
    return value, MultiplierSequence(choices)


def sample(
    params,
    steps,
    samples=pycdg.SAMPLES,
    seed=pycdg.RANDOM_SEED,
    num_workers=pycdg.NUM_WORKERS):
    """Sample X_n many times

    Samples are drawn in blocks of pycdg.BLOCK_SIZE. Block b uses a generator
    seeded by (seed, b), so results do not depend on the number of workers.

    Returns
        residues : np.ndarray(shape=(samples,))
            Independent samples of X_n
    """
    blocks = [
        (block, min(pycdg.BLOCK_SIZE, samples - begin))
        for block, begin in enumerate(range(0, samples, pycdg.BLOCK_SIZE))]
    results = pycdg.parallel_map(
        functools.partial(sample_block, params, steps, seed),
        blocks,
        num_workers)
    if not results:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(results)


def sample_block(params, steps, seed, block):
    """Sample one block of X_n values"""
    index, size = block
    generator = np.random.default_rng([seed, index])
    p = params.p
    state = np.zeros(size, dtype=np.int64)
    if steps == 0:
        return state

    # First step only adds b_0
    values = params.values
    state = values[np.searchsorted(
        increment_cdf(params), generator.random(size), side='right')]

    # Table of a x + b for every (multiplier, increment) pair
    pairs = [
        (multiplier, float(probability) * weight, value)
        for multiplier, probability in params.multipliers
        for value, weight in zip(values, params.weights)]
    cumulative = np.cumsum([weight for _, weight, _ in pairs])
    cumulative[-1] = 1.
    table = np.stack([
        (multiplier * np.arange(p) + value) % p
        for multiplier, _, value in pairs]).ravel()

    for _ in range(steps - 1):
        codes = np.searchsorted(cumulative, generator.random(size), side='right')
        state = table[codes * p + state]
    return state


def empirical_tv(
    params,
    steps,
    samples=pycdg.SAMPLES,
    seed=pycdg.RANDOM_SEED,
    num_workers=pycdg.NUM_WORKERS):
    """Distance to uniform of the empirical law of X_n

    Returns
        tv : float
            Empirical distance
        error : float
            Multinomial sampling error scale sqrt(p / (4 N))
        distribution : Distribution
            Empirical law
    """
    residues = sample(params, steps, samples, seed, num_workers)
    counts = np.bincount(residues, minlength=params.p)
    distribution = pycdg.group.Distribution(params.modulus, counts / samples)
    return (
        pycdg.group.tv_distance(distribution),
        math.sqrt(params.p / (4 * samples)),
        distribution)


###############################################################################
# Utilities
###############################################################################


def gather(multiplier, p):
    """Indices i such that law(a X)[s] = law(X)[i[s]]"""
    # Cache index arrays
    if not hasattr(gather, 'cache'):
        gather.cache = {}
    key = (multiplier, p)
    if key not in gather.cache:
        inverse = pow(multiplier, -1, p)
        indices = (inverse * np.arange(p, dtype=np.int64)) % p
        indices.flags.writeable = False
        gather.cache[key] = indices
    return gather.cache[key]


def increment_cdf(params):
    """Cumulative increment probabilities, ending exactly at one"""
    cumulative = np.cumsum(params.weights)
    cumulative[-1] = 1.
    return cumulative


def translate(mass, params):
    """Law of X + b for independent increment b"""
    result = np.zeros(params.p)
    for value, weight in zip(params.values, params.weights):
        result += weight * np.roll(mass, value)
    return result


def validate_mixture(steps):
    if not 0 <= steps <= pycdg.MAX_MIXTURE_STEPS:
        raise ValueError(
            f'Cannot enumerate multiplier sequences for {steps} steps; '
            f'at most {pycdg.MAX_MIXTURE_STEPS} are supported')
