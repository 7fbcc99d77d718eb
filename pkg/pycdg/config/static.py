import pycdg


###############################################################################
# Benchmarking
###############################################################################


# Whether the global timer records
BENCHMARK = False

# Timer for benchmarking experiments
TIMER = pycdg.time.Context()
