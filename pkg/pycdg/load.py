import csv as csvlib
import json as jsonlib
from fractions import Fraction


###############################################################################
# Loading utilities
###############################################################################


def csv(file):
    """Load table rows written by pycdg.write.csv

    Numeric fields become ints, floats or Fractions. Empty fields become None.
    """
    with open(file, newline='') as file:
        reader = csvlib.DictReader(file)
        return [
            {key: value(field) for key, field in row.items()}
            for row in reader]


def json(file):
    """Load a JSON file"""
    with open(file) as file:
        return jsonlib.load(file)


###############################################################################
# Utilities
###############################################################################


def value(field):
    """Parse one CSV field"""
    if field == '':
        return None
    if field in ('True', 'False'):
        return field == 'True'
    for parse in (int, float):
        try:
            return parse(field)
        except ValueError:
            pass
    if '/' in field:
        try:
            return Fraction(field)
        except ValueError:
            pass
    return field
