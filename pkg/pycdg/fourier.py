import collections
import enum
import math

import numpy as np

import pycdg


###############################################################################
# Binary expansions
###############################################################################


BinaryWindow = collections.namedtuple(
    'BinaryWindow',
    ['m', 'p', 'start', 'digits'])


AlternationProfile = collections.namedtuple(
    'AlternationProfile',
    ['count', 'positions'])


def binary_window(m, p, start=0, length=None):
    """Binary digits of m / p starting after position start

    Digit i is 1 iff the fractional part of 2^(start + i) m / p is at least
    1 / 2. Digits are computed with integer arithmetic only.

    Arguments
        m : int
            The frequency in [1, p - 1]
        p : int
            The odd modulus
        start : int
            Number of leading binary places to skip
        length : int
            Number of digits. Defaults to ceil(log2(p)).

    Returns
        window : BinaryWindow
            The digits
    """
    p = pycdg.group.Modulus(p).p
    if not 1 <= m <= p - 1:
        raise ValueError(f'Frequency must lie in [1, {p - 1}], got {m}')
    if length is None:
        length = math.ceil(pycdg.log2(p))
    if length < 1:
        raise ValueError(f'Window length must be positive, got {length}')
    if start < 0:
        raise ValueError(f'Window start must be nonnegative, got {start}')

    digits = []
    remainder = pow(2, start, p) * m % p
    for _ in range(length):
        digits.append(int(2 * remainder >= p))
        remainder = 2 * remainder % p
    return BinaryWindow(m, p, start, tuple(digits))


def digit_matrix(p, start, length):
    """Binary windows of every frequency m = 1, ..., p - 1

    Returns
        digits : np.ndarray(shape=(p - 1, length), dtype=np.uint8)
            Row m - 1 holds the digits of binary_window(m, p, start, length)
    """
    remainder = (pow(2, start, p) * np.arange(1, p, dtype=np.int64)) % p
    digits = np.empty((p - 1, length), dtype=np.uint8)
    for index in range(length):
        digits[:, index] = 2 * remainder >= p
        remainder = (2 * remainder) % p
    return digits


def alternation_count(window):
    """Count adjacent unequal digits of a binary window"""
    digits = window.digits
    if len(digits) < 2:
        raise ValueError(
            f'Need at least two digits to count alternations, got {len(digits)}')
    positions = tuple(
        i for i in range(len(digits) - 1) if digits[i] != digits[i + 1])
    return AlternationProfile(len(positions), positions)


def windows_distinct(p, start=0, length=None):
    """Whether the binary windows of all frequencies are pairwise distinct"""
    if length is None:
        length = math.ceil(pycdg.log2(p))
    digits = digit_matrix(p, start, length)
    return len(np.unique(digits, axis=0)) == p - 1


###############################################################################
# Alternation bands
###############################################################################


def g_indicator(x):
    """Majorant of the squared trinary Fourier factor

    1 / 9 on the band 1 / 4 <= {x} < 3 / 4 and 1 elsewhere.
    """
    fractional = np.mod(x, 1.)
    value = np.where(
        (fractional >= .25) & (fractional < .75),
        1 / 9,
        1.)
    return float(value) if value.ndim == 0 else value


def in_band(m, p, level, multiplier=pycdg.MULTIPLIER):
    """Whether {a^level m / p} lies in [1 / a^2, 1 - 1 / a^2)

    For a = 2 this is the band [1 / 4, 3 / 4), where binary digits
    level and level + 1 of m / p differ.
    """
    remainder = pow(multiplier, level, p) * m % p
    square = multiplier * multiplier
    return p <= square * remainder < (square - 1) * p


def band_matrix(p, levels, multiplier=pycdg.MULTIPLIER):
    """Band membership of every frequency at every level

    Returns
        band : np.ndarray(shape=(p - 1, len(levels)), dtype=bool)
            Entry (m - 1, i) is in_band(m, p, levels[i], multiplier)
    """
    frequencies = np.arange(1, p, dtype=np.int64)
    powers = np.array(
        [pow(multiplier, int(level), p) for level in levels], dtype=np.int64)
    remainder = (frequencies[:, None] * powers[None]) % p
    square = multiplier * multiplier
    return (square * remainder >= p) & (square * remainder < (square - 1) * p)


def first_band_level(m, p, start=0, multiplier=pycdg.MULTIPLIER):
    """Smallest level >= start in the band, or None if none is reached"""
    for level in range(start, start + p):
        if in_band(m, p, level, multiplier):
            return level


###############################################################################
# Fourier products of the conditional process
###############################################################################


def characteristic(residues, params):
    """Fourier transform of the increment law at x = residues / p

    Arguments
        residues : int or np.ndarray
            Numerators r of x = r / p, reduced modulo p
        params : Params
            Step law supplying the increments

    Returns
        phi : complex or np.ndarray
            Sum over increments b of w_b exp(2 pi i b r / p)
    """
    p = params.p
    residues = np.asarray(residues, dtype=np.int64) % p
    phases = (residues[..., None] * params.values) % p
    result = np.exp(2j * np.pi * phases / p) @ params.weights
    return complex(result) if result.ndim == 0 else result


def coefficient_exponents(sequence):
    """Shifted exponents n + w_r of the coefficients of X_n

    The coefficient of b_{n - 1 - r} in X_n is a^{w_r}. Shifting by n makes
    every exponent nonnegative.
    """
    return sequence.steps + sequence.to_path().w


def conditional_dft_product(
    exponents,
    m,
    p,
    multiplier=pycdg.MULTIPLIER,
    increments=pycdg.INCREMENTS):
    """Product of increment transforms at a^e m / p over the exponents

    With exponents from coefficient_exponents, this equals the Fourier
    transform of the conditional law at frequency a^n m mod p.

    Returns
        product : float or complex
            Real whenever the increment law is symmetric
    """
    exponents = list(exponents)
    if not exponents:
        raise ValueError('Exponent list is empty')
    params = pycdg.process.Params(p, multiplier, increments=increments)
    residues = np.array(
        [pow(multiplier, int(exponent), p) * m % p for exponent in exponents])
    product = complex(np.prod(characteristic(residues, params)))
    return product.real if params.symmetric else product


def frequency_products(exponents, params):
    """Products of increment transforms for every frequency m = 1, ..., p - 1"""
    p = params.p
    frequencies = np.arange(1, p, dtype=np.int64)
    product = np.ones(p - 1, dtype=np.complex128)
    for exponent, count in collections.Counter(
        int(exponent) for exponent in exponents).items():
        residues = (pow(params.multiplier, exponent, p) * frequencies) % p
        product *= characteristic(residues, params) ** count
    return product


def conditional_ub_bound(sequence, params):
    """Upper Bound Lemma bound on the squared distance of the conditional law

    Returns
        bound : float
            One quarter of the sum over m of the squared product magnitudes
    """
    with pycdg.time.timer('bound'):
        exponents = coefficient_exponents(sequence)
        magnitudes = np.abs(frequency_products(exponents, params)) ** 2
        return .25 * float(magnitudes.sum())


def grouped_products(params, occupation, steps):
    """Products grouped by revisit multiplicity for every frequency

    Level k contributes |phi(a^{n + k} m / p)|^{2 R(k)}, so levels that are
    never revisited within the window contribute 1.
    """
    p = params.p
    frequencies = np.arange(1, p, dtype=np.int64)
    product = np.ones(p - 1)
    for level, count in occupation.counts().items():
        if count == 0:
            continue
        power = pow(params.multiplier, steps + level, p)
        residues = (power * frequencies) % p
        product *= np.abs(characteristic(residues, params)) ** (2 * count)
    return product


###############################################################################
# Frequency classification
###############################################################################


class Tag(enum.Enum):
    """Classes of frequencies m"""

    # Some band level is revisited more than the upper threshold
    S1 = 'S1'

    # b band levels are revisited between the thresholds
    S2 = 'S2'

    # No band level clears the lower threshold
    UNRESOLVED = 'UNRESOLVED'


class FrequencyClass(
    collections.namedtuple('FrequencyClass', ['tag', 'b', 'witness'])):
    """Classification of one frequency

    Arguments
        tag : Tag
            The class
        b : int
            Number of band levels with revisits between the thresholds
        witness : tuple of (level, R) pairs
            For S1, the first band level above the upper threshold. For S2,
            every band level between the thresholds.
    """

    __slots__ = ()

    @property
    def label(self):
        if self.tag is Tag.S2:
            return f'S2({self.b})'
        return self.tag.value


def thresholds(
    p,
    beta=pycdg.BETA,
    exponent=pycdg.UPPER_EXPONENT):
    """Lower and upper revisit thresholds for classification"""
    loglog = pycdg.loglog2(p)
    return beta * loglog, loglog ** exponent


def classify_frequency(
    m,
    occupation,
    steps,
    p,
    lower,
    upper,
    multiplier=pycdg.MULTIPLIER):
    """Classify one frequency by the revisit counts of its band levels

    Arguments
        m : int
            The frequency
        occupation : OccupationTable
            Revisit counts R(k) of the exponent path
        steps : int
            Number of steps n. Walk level k is binary level n + k.
        p : int
            The modulus
        lower, upper : float
            The revisit thresholds

    Returns
        frequency_class : FrequencyClass
            The class of m
    """
    middle = []
    for level in occupation:
        if not in_band(m, p, steps + level, multiplier):
            continue
        count = occupation[level]
        if count > upper:
            return FrequencyClass(Tag.S1, 0, ((steps + level, count),))
        if count > lower:
            middle.append((steps + level, count))
    if middle:
        return FrequencyClass(Tag.S2, len(middle), tuple(middle))
    return FrequencyClass(Tag.UNRESOLVED, 0, ())


def classify_all(
    occupation,
    steps,
    p,
    lower,
    upper,
    multiplier=pycdg.MULTIPLIER):
    """Classify every frequency m = 1, ..., p - 1 at once

    Returns
        codes : np.ndarray(shape=(p - 1,))
            -1 for S1, b >= 1 for S2(b), and 0 for UNRESOLVED
    """
    levels = np.array(list(occupation), dtype=np.int64)
    counts = np.array([occupation[level] for level in levels])
    band = band_matrix(p, steps + levels, multiplier)
    s1 = (band & (counts > upper)).any(axis=1)
    b = (band & (counts > lower) & (counts <= upper)).sum(axis=1)
    return np.where(s1, -1, b)


def class_counts(codes):
    """Number of frequencies per class label"""
    counts = {Tag.S1.value: int(np.count_nonzero(codes == -1))}
    for b in np.unique(codes[codes > 0]):
        counts[f'S2({b})'] = int(np.count_nonzero(codes == b))
    counts[Tag.UNRESOLVED.value] = int(np.count_nonzero(codes == 0))
    return counts


###############################################################################
# Alternation census
###############################################################################


CensusReport = collections.namedtuple(
    'CensusReport',
    ['histogram', 'weighted_sum', 'majorant'])


def alternation_census(
    p,
    start,
    length,
    decay=pycdg.DECAY,
    weight=pycdg.BETA):
    """Distribution of alternation counts over all frequencies

    Arguments
        p : int
            The modulus
        start : int
            First binary place of each window
        length : int
            Window length L. Must exceed log2(p) so windows are distinct.
        decay : float
            The base q in (0, 1)
        weight : float
            The weight beta

    Returns
        report : CensusReport
            Histogram of A(B_m), the sum of q^(beta A(B_m)) over m, and the
            majorant 2 sum_s C(L, s) q^(beta s)
    """
    if length <= pycdg.log2(p):
        raise ValueError(
            f'Window length {length} must exceed log2(p) = {pycdg.log2(p):.3f}')
    if not 0 < decay < 1:
        raise ValueError(f'Decay must lie in (0, 1), got {decay}')

    digits = digit_matrix(p, start, length)
    alternations = np.count_nonzero(digits[:, 1:] != digits[:, :-1], axis=1)
    histogram = np.bincount(alternations, minlength=length)

    # Summing per count keeps the reduction order fixed
    powers = decay ** (weight * np.arange(length))
    weighted_sum = float(histogram @ powers)
    majorant = 2. * sum(
        math.comb(length, s) * decay ** (weight * s)
        for s in range(1, length + 1))

    if weighted_sum > majorant * (1. + pycdg.INVARIANT_TOLERANCE):
        raise pycdg.InvariantError(
            f'Census sum {weighted_sum} exceeds majorant {majorant} '
            f'for p = {p}, L = {length}')
    return CensusReport(histogram, weighted_sum, majorant)
