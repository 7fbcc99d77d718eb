from pathlib import Path


###############################################################################
# Metadata
###############################################################################


# Configuration name
CONFIG = 'pycdg'


###############################################################################
# Process parameters
###############################################################################


# Law of the increments b_n. One of ['binary', 'trinary'].
INCREMENTS = 'trinary'

# The multiplier a. Steps multiply by a or by its inverse modulo p.
MULTIPLIER = 2

# Probability of multiplying by a rather than by its inverse
MULTIPLIER_LAW = .5

# Default odd modulus
P = 1009


###############################################################################
# Numerical tolerances
###############################################################################


# Largest allowed deviation of a distribution's total mass from one
SUM_TOLERANCE = 1e-9

# Most negative mass allowed on any residue
NEGATIVE_TOLERANCE = 1e-12

# Slack allowed when checking monotonicity and bound invariants
INVARIANT_TOLERANCE = 1e-12


###############################################################################
# Exhaustive oracles
###############################################################################


# Largest modulus for which all 2^p events are enumerated
MAX_SUBSET_MODULUS = 20

# Largest step count for which all multiplier sequences are enumerated
MAX_MIXTURE_STEPS = 12


###############################################################################
# Experiment parameters
###############################################################################


# Total variation threshold defining the mixing time
EPSILON = .25

# Odd moduli for scaling experiments
P_GRID = [101, 401, 1009, 4001, 10007, 40009]

# Total variation at which a cutoff profile stops
CUTOFF_THRESHOLD = 1e-3

# Total variation levels whose crossing times define the cutoff window
CUTOFF_LEVELS = [.9, .5, .1]

# Walk length, in units of (log2 p)^2, for the range and walk-law runs
WINDOW_SCALE = 1.5


###############################################################################
# Fourier bound parameters
###############################################################################


# Weight on log log p in the alternation census and classifier thresholds
BETA = 10.

# Per-alternation decay of the squared Fourier factors
DECAY = 1 / 9

# Exponent of log log p above which a revisit count resolves a frequency
UPPER_EXPONENT = 2.1

# Exponent of log log p bounding the number of weakly revisited levels
CAP_EXPONENT = 2.5


###############################################################################
# Lower bound parameters
###############################################################################


# Shift is this fraction of log2 p, rounded up
SHIFT_FRACTION = .25

# Interval half width is this fraction of sqrt(p) (log2 p)^2, rounded up
HALF_WIDTH_FRACTION = .05

# Steps are this fraction of (log2 p)^2, rounded down
STEPS_FRACTION = .05


###############################################################################
# Monte Carlo parameters
###############################################################################


# Number of samples per block. Block b is seeded by (seed, b).
BLOCK_SIZE = 65536

# Seed for all random number generators
RANDOM_SEED = 1234

# Number of Monte Carlo samples of the process
SAMPLES = 1000000

# Number of simulated exponent walks
WALKS = 10000


###############################################################################
# Parallelism
###############################################################################


# Number of worker processes for grids and seeds
NUM_WORKERS = 1


###############################################################################
# Directories
###############################################################################


# Root location for saving outputs
ROOT_DIR = Path(__file__).parent.parent.parent

# Location to save experiment tables
RESULTS_DIR = ROOT_DIR / 'results'
