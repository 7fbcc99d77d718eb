import math
from fractions import Fraction

import numpy as np
import pytest

import pycdg


###############################################################################
# Test step law
###############################################################################


def test_params_defaults():
    params = pycdg.Params(5)
    assert params.multiplier == 2
    assert params.multiplier_inverse == 3
    assert params.multiplier_law == Fraction(1, 2)
    assert params.increments == (
        (0, Fraction(1, 3)), (1, Fraction(1, 3)), (4, Fraction(1, 3)))
    assert params.symmetric


@pytest.mark.parametrize('kwargs', [
    {'modulus': 4},
    {'modulus': 5, 'multiplier': 1},
    {'modulus': 5, 'multiplier': 5},
    {'modulus': 9, 'multiplier': 3},
    {'modulus': 5, 'multiplier_law': 1.5},
    {'modulus': 5, 'increments': 'ternary'},
    {'modulus': 5, 'increments': [(1, .5), (-1, .4)]},
    {'modulus': 5, 'increments': [(1, 1.), (0, 0.)]}])
def test_params_rejects_invalid(kwargs):
    with pytest.raises(ValueError):
        pycdg.Params(**kwargs)


def test_params_merges_increments():
    params = pycdg.Params(3, increments=[(1, .25), (4, .25), (0, .5)])
    assert params.increments == ((0, Fraction(1, 2)), (1, Fraction(1, 2)))
    assert not params.symmetric


def test_params_with_modulus():
    params = pycdg.Params(5, increments='binary').with_modulus(7)
    assert params.p == 7
    assert params.increments == ((1, Fraction(1, 2)), (6, Fraction(1, 2)))


def test_step_from_point_mass(params5):
    distribution = pycdg.process.step(pycdg.group.point_mass(5), params5)
    np.testing.assert_allclose(
        distribution.mass,
        [1 / 3, 1 / 3, 0., 0., 1 / 3],
        atol=1e-15)


def test_two_steps(params5):
    _, distribution = pycdg.process.evolve(params5, 2)
    np.testing.assert_allclose(
        distribution.mass,
        [1 / 9, 2 / 9, 2 / 9, 2 / 9, 2 / 9],
        atol=1e-15)


def test_step_uniform_is_fixed_point():
    params = pycdg.Params(31)
    uniform = pycdg.group.uniform(31)
    np.testing.assert_allclose(
        pycdg.process.step(uniform, params).mass,
        uniform.mass,
        atol=1e-15)


def test_step_rejects_modulus_mismatch(params5):
    with pytest.raises(ValueError):
        pycdg.process.step(pycdg.group.point_mass(7), params5)


###############################################################################
# Test exact evolution
###############################################################################


def test_evolve_small_cases(params5):
    curve, _ = pycdg.process.evolve(pycdg.Params(3), 1)
    assert curve.tv[-1] == pytest.approx(0., abs=1e-15)

    curve, _ = pycdg.process.evolve(params5, 2)
    assert curve.steps.tolist() == [0, 1, 2]
    assert curve.tv[0] == pytest.approx(.8, abs=1e-15)
    assert curve.tv[-1] == pytest.approx(4 / 45, abs=1e-15)


def test_evolve_rejects_negative_steps(params5):
    with pytest.raises(ValueError):
        pycdg.process.evolve(params5, -1)


@pytest.mark.parametrize('p', [3, 5, 7])
@pytest.mark.parametrize('steps', range(6))
def test_evolve_matches_enumeration(p, steps):
    params = pycdg.Params(p)
    _, distribution = pycdg.process.evolve(params, steps)
    law = pycdg.process.enumerate_exact(params, steps)
    assert sum(law.values()) == 1
    expected = np.array([float(law.get(s, 0)) for s in range(p)])
    np.testing.assert_allclose(distribution.mass, expected, atol=1e-13)


def test_generalized_multiplier_matches_enumeration():
    params = pycdg.Params(7, multiplier=3)
    assert params.multiplier_inverse == 5
    for steps in [1, 2, 3]:
        _, distribution = pycdg.process.evolve(params, steps)
        law = pycdg.process.enumerate_exact(params, steps)
        expected = np.array([float(law.get(s, 0)) for s in range(7)])
        np.testing.assert_allclose(distribution.mass, expected, atol=1e-13)


@pytest.mark.parametrize('p', [101, 257, 1009])
def test_evolve_monotone_and_bounded(p):
    params = pycdg.Params(p)
    curve, _ = pycdg.process.evolve(params, 400, bound=True)
    assert np.all(np.diff(curve.tv) <= 1e-12)
    assert np.all(curve.tv ** 2 <= np.array(curve.bounds) + 1e-12)


def test_evolve_symmetric():
    params = pycdg.Params(31)
    for index, distribution in enumerate(pycdg.process.trajectory(params)):
        assert distribution.is_symmetric()
        if index == 20:
            break


def test_evolve_resumes():
    params = pycdg.Params(101)
    _, middle = pycdg.process.evolve(params, 7)
    curve, resumed = pycdg.process.evolve(params, 8, start=middle, offset=7)
    _, direct = pycdg.process.evolve(params, 15)
    assert curve.steps.tolist() == list(range(7, 16))
    np.testing.assert_allclose(resumed.mass, direct.mass, atol=1e-15)


###############################################################################
# Test mixing curves
###############################################################################


def test_mixing_curve_rejects_increase(params5):
    curve = pycdg.MixingCurve(params5)
    curve.append(0, .5)
    with pytest.raises(pycdg.InvariantError):
        curve.append(1, .6)


def test_mixing_curve_rejects_bound_violation(params5):
    curve = pycdg.MixingCurve(params5)
    with pytest.raises(pycdg.InvariantError):
        curve.append(0, .5, bound=.2)


def test_mixing_curve_crossing(params5):
    curve = pycdg.MixingCurve(params5)
    for step, tv in enumerate([.8, .4, .1, .05]):
        curve.append(step, tv)
    assert curve.crossing(.5) == 1
    assert curve.crossing(.1) == 3
    assert curve.crossing(.01) is None
    assert curve.rows()[2] == {'n': 2, 'tv': .1, 'ub_bound': None}


###############################################################################
# Test multiplier sequences
###############################################################################


def test_sequence_paths():
    sequence = pycdg.MultiplierSequence.alternating(3)
    assert sequence.steps == 4
    assert sequence.to_path().w.tolist() == [0, 1, 0, 1]
    assert pycdg.MultiplierSequence.forward(3).to_path().w.tolist() == [
        0, 1, 2, 3]
    assert pycdg.MultiplierSequence().to_path().w.tolist() == [0]


def test_sequence_from_path():
    sequence = pycdg.MultiplierSequence.random(40, seed=3)
    assert pycdg.MultiplierSequence.from_path(sequence.to_path()) == sequence


def test_sequence_random_is_deterministic():
    first = pycdg.MultiplierSequence.random(50, seed=7)
    assert first == pycdg.MultiplierSequence.random(50, seed=7)
    assert len(first) == 50
    assert set(first) == {pycdg.Choice.FORWARD, pycdg.Choice.INVERSE}


###############################################################################
# Test conditional laws
###############################################################################


def test_conditional_empty_sequence(params5):
    distribution = pycdg.process.conditional(
        params5,
        pycdg.MultiplierSequence())
    np.testing.assert_allclose(
        distribution.mass,
        [1 / 3, 1 / 3, 0., 0., 1 / 3],
        atol=1e-15)


def test_conditional_forward_matches_fixed_process():
    fixed = pycdg.Params(101, multiplier_law=1.)
    _, expected = pycdg.process.evolve(fixed, 30)
    distribution = pycdg.process.conditional(
        pycdg.Params(101),
        pycdg.MultiplierSequence.forward(29))
    np.testing.assert_allclose(distribution.mass, expected.mass, atol=1e-14)


def trinomial(count):
    """Integer law of a sum of count trinary increments on [-count, count]"""
    law = np.ones(1)
    for _ in range(count):
        law = np.convolve(law, np.ones(3) / 3)
    return law


@pytest.mark.parametrize('steps', [2, 5, 8])
def test_conditional_alternating(steps):
    p = 11
    distribution = pycdg.process.conditional(
        pycdg.Params(p),
        pycdg.MultiplierSequence.alternating(steps - 1))

    # Unit coefficients on b_{n - 1}, b_{n - 3}, ... and 2 on the rest
    ones, twos = trinomial((steps + 1) // 2), trinomial(steps // 2)
    expected = np.zeros(p)
    for i, x in enumerate(ones):
        for j, y in enumerate(twos):
            value = (i - (len(ones) - 1) // 2) + 2 * (j - (len(twos) - 1) // 2)
            expected[value % p] += x * y
    np.testing.assert_allclose(distribution.mass, expected, atol=1e-14)


def test_conditional_alternating_concentrates():
    p, steps = 10007, 100
    distribution = pycdg.process.conditional(
        pycdg.Params(p),
        pycdg.MultiplierSequence.alternating(steps - 1))
    assert np.count_nonzero(distribution.mass) <= 3 * (steps + 1)
    assert pycdg.group.tv_distance(distribution) >= 1 - 3 * (steps + 1) / p
    assert distribution.is_symmetric()


###############################################################################
# Test mixtures
###############################################################################


@pytest.mark.parametrize('p', [5, 17, 31])
@pytest.mark.parametrize('steps', range(2, 7))
def test_mixture_matches_evolution(p, steps):
    params = pycdg.Params(p)
    _, expected = pycdg.process.evolve(params, steps)
    mixture = pycdg.process.mixture(params, steps)
    np.testing.assert_allclose(mixture.mass, expected.mass, atol=1e-10)
    assert (
        pycdg.group.tv_distance(expected) <=
        pycdg.process.mixture_tv_bound(params, steps) + 1e-12)


def test_mixture_two_steps(params5):
    np.testing.assert_allclose(
        pycdg.process.mixture(params5, 2).mass,
        [1 / 9, 2 / 9, 2 / 9, 2 / 9, 2 / 9],
        atol=1e-15)
    sequences = list(pycdg.process.sequences(params5, 3))
    assert len(sequences) == 4
    assert sum(probability for _, probability in sequences) == 1


def test_mixture_rejects_long_runs(params5):
    with pytest.raises(ValueError):
        pycdg.process.mixture(params5, pycdg.MAX_MIXTURE_STEPS + 1)


###############################################################################
# Test sampling
###############################################################################


def test_sample_trajectory(params5):
    assert pycdg.process.sample_trajectory(params5, 0, seed=1) == (
        0, pycdg.MultiplierSequence())
    first = pycdg.process.sample_trajectory(pycdg.Params(101), 50, seed=9)
    second = pycdg.process.sample_trajectory(pycdg.Params(101), 50, seed=9)
    assert first == second
    assert 0 <= first[0] < 101
    assert len(first[1]) == 49


def test_sample_independent_of_workers():
    params = pycdg.Params(31)
    samples = pycdg.BLOCK_SIZE + 1000
    serial = pycdg.process.sample(params, 12, samples, seed=5, num_workers=1)
    parallel = pycdg.process.sample(params, 12, samples, seed=5, num_workers=2)
    assert serial.shape == (samples,)
    np.testing.assert_array_equal(serial, parallel)


def test_sample_zero_steps():
    residues = pycdg.process.sample(pycdg.Params(7), 0, 100, seed=2)
    assert np.all(residues == 0)


def test_empirical_tv_small():
    params = pycdg.Params(11)
    samples = 40000
    _, exact = pycdg.process.evolve(params, 6)
    _, error, empirical = pycdg.process.empirical_tv(
        params,
        6,
        samples,
        seed=4)
    assert error == pytest.approx(math.sqrt(11 / (4 * samples)))

    # Per-residue binomial error
    sigma = np.sqrt(exact.mass * (1 - exact.mass) / samples)
    assert np.all(np.abs(empirical.mass - exact.mass) <= 5 * sigma + 1e-12)


@pytest.mark.slow
def test_empirical_tv_matches_exact():
    params = pycdg.Params(101)
    curve, _ = pycdg.process.evolve(params, 10000)
    tv, error, _ = pycdg.process.empirical_tv(params, 10000, 1000000, seed=0)
    assert abs(tv - curve.tv[-1]) <= 3 * error
