from fractions import Fraction

import numpy as np
import pytest

import pycdg


###############################################################################
# Test tables
###############################################################################


def test_csv_round_trip(tmp_path):
    rows = [
        {'n': 0, 'tv': 1 / 3, 'exact': Fraction(3, 8), 'label': 'S2(1)'},
        {'n': 1, 'tv': 1e-300, 'exact': Fraction(1, 1), 'label': 'S1'},
        {'n': 2, 'tv': np.float64(.1), 'exact': None, 'label': 'UNRESOLVED'},
        {'n': np.int64(3), 'tv': 2 / 3 + 1e-16, 'exact': 7, 'label': 'x'}]
    file = tmp_path / 'table.csv'
    pycdg.write.csv(rows, ['n', 'tv', 'exact', 'label'], file)
    loaded = pycdg.load.csv(file)
    assert loaded == [
        {'n': 0, 'tv': 1 / 3, 'exact': Fraction(3, 8), 'label': 'S2(1)'},
        {'n': 1, 'tv': 1e-300, 'exact': 1, 'label': 'S1'},
        {'n': 2, 'tv': .1, 'exact': None, 'label': 'UNRESOLVED'},
        {'n': 3, 'tv': 2 / 3 + 1e-16, 'exact': 7, 'label': 'x'}]


def test_csv_floats_are_bit_exact(tmp_path):
    values = np.random.default_rng(0).random(200) ** 7
    file = tmp_path / 'floats.csv'
    pycdg.write.csv([{'x': value} for value in values], ['x'], file)
    loaded = np.array([row['x'] for row in pycdg.load.csv(file)])
    np.testing.assert_array_equal(loaded, values)


def test_csv_format(tmp_path):
    file = tmp_path / 'curve.csv'
    rows = pycdg.process.evolve(pycdg.Params(5), 2, bound=True)[0].rows()
    pycdg.write.csv(rows, ['n', 'tv', 'ub_bound'], file)
    text = file.read_bytes().decode()
    assert '\r' not in text
    assert text.splitlines()[0] == 'n,tv,ub_bound'
    assert len(text.splitlines()) == 4


def test_csv_namedtuple_rows(tmp_path):
    rows = pycdg.experiments.scaling([31])
    file = tmp_path / 'scaling.csv'
    columns = list(pycdg.experiments.ScalingRow._fields)
    pycdg.write.csv(rows, columns, file)
    loaded = pycdg.load.csv(file)
    assert loaded == [row._asdict() for row in rows]


###############################################################################
# Test metadata
###############################################################################


def test_table_sidecar(tmp_path):
    file = tmp_path / 'out' / 'table.csv'
    metadata = {'seed': 3, 'params': pycdg.Params(5), 'ratio': Fraction(1, 3)}
    pycdg.write.table([{'a': 1}], ['a'], metadata, file)
    assert pycdg.load.csv(file) == [{'a': 1}]
    loaded = pycdg.load.json(file.with_suffix('.json'))
    assert loaded['seed'] == 3
    assert loaded['params']['p'] == 5
    assert loaded['ratio'] == '1/3'


def test_table_json(tmp_path):
    file = tmp_path / 'table.json'
    pycdg.write.table(
        [{'a': np.int64(1), 'b': np.float64(.5)}],
        ['a', 'b'],
        {'seed': 1},
        file,
        'json')
    loaded = pycdg.load.json(file)
    assert loaded == {'metadata': {'seed': 1}, 'rows': [{'a': 1, 'b': .5}]}


def test_table_rejects_format(tmp_path):
    with pytest.raises(ValueError):
        pycdg.write.table([], ['a'], {}, tmp_path / 'table.txt', 'txt')
