import contextlib
import time

import pycdg


###############################################################################
# Profiling utilities
###############################################################################


class Context:
    """Context manager timer"""

    def __init__(self):
        self.reset()

    def __call__(self):
        """Retrieve total seconds per timer name"""
        return {name: sum(times) for name, times in self.history.items()}

    def __enter__(self):
        """Start the timer"""
        self.running.append((self.name, time.perf_counter()))

    def __exit__(self, *_):
        """Stop the timer"""
        name, start = self.running.pop()
        self.history.setdefault(name, []).append(time.perf_counter() - start)

    def reset(self):
        """Reset the timer"""
        self.history = {}
        self.running = []
        self.name = None


@contextlib.contextmanager
def timer(name):
    """Wrapper to handle context changes of global timer"""
    # Don't continue if we aren't benchmarking
    if not pycdg.BENCHMARK:
        yield
        return

    previous = pycdg.TIMER.name
    pycdg.TIMER.name = name
    try:
        with pycdg.TIMER:
            yield
    finally:
        pycdg.TIMER.name = previous
