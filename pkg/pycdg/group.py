import collections
import math

import numpy as np

import pycdg


###############################################################################
# Residues modulo p
###############################################################################


class Modulus:
    """An odd modulus p > 1 together with the inverse of 2 modulo p"""

    def __init__(self, p):
        if isinstance(p, Modulus):
            p = p.p
        if int(p) != p or p < 3 or p % 2 == 0:
            raise ValueError(
                f'Modulus must be an odd integer greater than 1, got {p}')
        self.p = int(p)
        self.inv2 = (self.p + 1) // 2

    def __eq__(self, other):
        return isinstance(other, Modulus) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __int__(self):
        return self.p

    def __repr__(self):
        return f'Modulus({self.p})'

    def inverse(self, value):
        """Multiplicative inverse of value modulo p"""
        value = self.reduce(value)
        if math.gcd(value, self.p) != 1:
            raise ValueError(f'{value} is not invertible modulo {self.p}')
        return pow(value, -1, self.p)

    def reduce(self, value):
        """Canonical residue in [0, p - 1]"""
        return int(value) % self.p


###############################################################################
# Distributions
###############################################################################


class Distribution:
    """Probability distribution over the residues modulo p

    Arguments
        modulus : Modulus or int
            The modulus
        mass : array-like(shape=(p,))
            Probability of each residue 0, ..., p - 1
    """

    def __init__(self, modulus, mass):
        self.modulus = Modulus(modulus)
        mass = np.array(mass, dtype=np.float64)

        # Validate
        if mass.shape != (self.modulus.p,):
            raise ValueError(
                f'Expected {self.modulus.p} masses, got shape {mass.shape}')
        if mass.min() < -pycdg.NEGATIVE_TOLERANCE:
            raise ValueError(f'Negative mass {mass.min()}')
        if abs(mass.sum() - 1.) > pycdg.SUM_TOLERANCE:
            raise ValueError(f'Masses sum to {mass.sum()}, not 1')

        mass.flags.writeable = False
        self.mass = mass

    def __getitem__(self, residue):
        return self.mass[self.modulus.reduce(residue)]

    def __len__(self):
        return self.modulus.p

    def __repr__(self):
        return f'Distribution(p={self.p}, tv={tv_distance(self):.6g})'

    @property
    def p(self):
        return self.modulus.p

    def is_symmetric(self, tolerance=pycdg.INVARIANT_TOLERANCE):
        """Returns True iff P(s) = P(-s) for every residue s"""
        reflected = self.mass[(-np.arange(self.p)) % self.p]
        return bool(np.abs(self.mass - reflected).max() <= tolerance)


def point_mass(modulus, site=0):
    """Distribution with all mass on one residue"""
    modulus = Modulus(modulus)
    mass = np.zeros(modulus.p)
    mass[modulus.reduce(site)] = 1.
    return Distribution(modulus, mass)


def uniform(modulus):
    """The uniform distribution"""
    modulus = Modulus(modulus)
    return Distribution(modulus, np.full(modulus.p, 1. / modulus.p))


###############################################################################
# Variation distance
###############################################################################


def tv_distance(distribution):
    """Total variation distance to the uniform distribution"""
    return .5 * float(
        np.abs(distribution.mass - 1. / distribution.p).sum())


def tv_subset_oracle(distribution, chunk=65536):
    """Total variation distance as the largest |P(A) - U(A)| over all events

    Enumerates all 2^p subsets, so only small moduli are supported.
    """
    p = distribution.p
    if p > pycdg.MAX_SUBSET_MODULUS:
        raise ValueError(
            f'Cannot enumerate 2^{p} events; '
            f'modulus must be at most {pycdg.MAX_SUBSET_MODULUS}')
    difference = distribution.mass - 1. / p
    positions = np.arange(p)

    best = 0.
    for begin in range(0, 2 ** p, chunk):
        subsets = np.arange(begin, min(begin + chunk, 2 ** p))

        # Row i holds the indicator of subset begin + i
        indicators = (subsets[:, None] >> positions[None]) & 1
        best = max(best, float(np.abs(indicators @ difference).max()))
    return best


###############################################################################
# Fourier transform
###############################################################################


FourierValue = collections.namedtuple('FourierValue', ['frequency', 'value'])


def dft(distribution, frequency):
    """Fourier transform at one frequency by direct summation

    Arguments
        distribution : Distribution
            The distribution P
        frequency : int
            The frequency k in [0, p - 1]

    Returns
        value : FourierValue
            The sum of P(j) exp(2 pi i j k / p) over residues j
    """
    p = distribution.p
    frequency = int(frequency) % p

    # Reduce phases exactly before leaving the integers
    phases = (np.arange(p) * frequency) % p
    angles = 2. * np.pi * phases / p
    value = complex(
        distribution.mass @ np.cos(angles),
        distribution.mass @ np.sin(angles))
    return FourierValue(frequency, value)


def spectrum(distribution):
    """Fourier transform at all frequencies via the FFT"""
    # ifft uses the positive exponent and divides by p
    return distribution.p * np.fft.ifft(distribution.mass)


def ub_lemma_bound(distribution):
    """Upper Bound Lemma bound on the squared total variation distance"""
    magnitudes = np.abs(spectrum(distribution)[1:]) ** 2
    return .25 * float(magnitudes.sum())
