import math
import multiprocessing

import tqdm


###############################################################################
# Errors
###############################################################################


class InvariantError(RuntimeError):
    """A numerical invariant of the process failed at run time"""


###############################################################################
# Parallelism
###############################################################################


def parallel_map(function, items, num_workers=None, message=None):
    """Map a function over items, returning results in input order

    Arguments
        function : callable
            A picklable function of one argument
        items : list
            The inputs
        num_workers : int
            Number of worker processes. Runs serially for None or 1.
        message : str
            Progress bar description. No progress bar if None.

    Returns
        results : list
            function(item) for each item, in the order of items
    """
    items = list(items)

    # Serial
    if num_workers is None or num_workers <= 1 or len(items) <= 1:
        if message is not None:
            items = iterator(items, message)
        return [function(item) for item in items]

    # Parallel with ordered results
    with multiprocessing.Pool(min(num_workers, len(items))) as pool:
        results = pool.imap(function, items)
        if message is not None:
            results = iterator(results, message, total=len(items))
        return list(results)


###############################################################################
# Utilities
###############################################################################


def iterator(iterable, message, initial=0, total=None):
    """Create a tqdm iterator"""
    return tqdm.tqdm(
        iterable,
        desc=message,
        dynamic_ncols=True,
        initial=initial,
        total=len(iterable) if total is None else total)


def log2(p):
    """Base-2 logarithm of the modulus"""
    return math.log2(int(p))


def loglog2(p):
    """Iterated base-2 logarithm of the modulus"""
    return math.log2(math.log2(int(p)))
