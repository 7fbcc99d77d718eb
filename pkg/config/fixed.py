MODULE = 'pycdg'

# Configuration name
CONFIG = 'fixed'

# Always multiply by a
MULTIPLIER_LAW = 1.
