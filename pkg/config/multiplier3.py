MODULE = 'pycdg'

# Configuration name
CONFIG = 'multiplier3'

# The multiplier a
MULTIPLIER = 3
