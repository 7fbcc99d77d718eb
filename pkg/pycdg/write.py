import csv as csvlib
import json as jsonlib
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

import pycdg


###############################################################################
# Writing utilities
###############################################################################


def csv(rows, columns, file=None):
    """Write table rows as comma-separated values

    Floats are written with 17 significant digits so that loading the file
    reproduces them exactly.

    Arguments
        rows : list of dict or namedtuple
            The table
        columns : list of str
            Column names, in order
        file : Path
            Destination. Writes to stdout if None.
    """
    if file is None:
        write_csv(rows, columns, sys.stdout)
        return
    Path(file).parent.mkdir(exist_ok=True, parents=True)
    with open(file, 'w', newline='') as stream:
        write_csv(rows, columns, stream)


def json(obj, file=None):
    """Write an object as JSON, converting numpy and Fraction values"""
    if file is None:
        jsonlib.dump(obj, sys.stdout, indent=4, default=serialize)
        sys.stdout.write('\n')
        return
    Path(file).parent.mkdir(exist_ok=True, parents=True)
    with open(file, 'w') as stream:
        jsonlib.dump(obj, stream, indent=4, default=serialize)


def table(rows, columns, metadata, file=None, format='csv'):
    """Write a table and its run metadata

    With csv format, metadata goes next to the table with a .json suffix,
    or to stderr when the table goes to stdout. With json format, both are
    written together.
    """
    if format == 'json':
        json({'metadata': metadata, 'rows': records(rows, columns)}, file)
    elif format == 'csv':
        csv(rows, columns, file)
        if file is None:
            jsonlib.dump(metadata, sys.stderr, indent=4, default=serialize)
            sys.stderr.write('\n')
        else:
            json(metadata, Path(file).with_suffix('.json'))
    else:
        raise ValueError(f'Output format {format} is not defined')


###############################################################################
# Utilities
###############################################################################


def field(value):
    """Format one CSV field"""
    if value is None:
        return ''
    if isinstance(value, Fraction):
        return f'{value.numerator}/{value.denominator}'
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), '.17g')
    return str(value)


def records(rows, columns):
    """Rows as dictionaries restricted to the given columns"""
    rows = [row._asdict() if hasattr(row, '_asdict') else row for row in rows]
    return [{column: row.get(column) for column in columns} for row in rows]


def serialize(obj):
    """JSON fallback for values the json module does not handle"""
    if isinstance(obj, Fraction):
        return f'{obj.numerator}/{obj.denominator}'
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, pycdg.process.Params):
        return obj.snapshot()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f'Cannot serialize {type(obj).__name__}')


def write_csv(rows, columns, stream):
    writer = csvlib.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    for row in records(rows, columns):
        writer.writerow([field(row[column]) for column in columns])
