MODULE = 'pycdg'

# Configuration name
CONFIG = 'binary'

# Law of the increments b_n. One of ['binary', 'trinary'].
INCREMENTS = 'binary'
