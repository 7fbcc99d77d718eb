###############################################################################
# Configuration
###############################################################################


# Default configuration parameters to be modified
from .config import defaults

# Modify configuration
import yapecs
yapecs.configure('pycdg', defaults)

# Import configuration parameters
from .config.defaults import *
from . import time
from .config.static import *


###############################################################################
# Module imports
###############################################################################


from .core import *
from .group import Distribution, Modulus
from .process import Choice, MixingCurve, MultiplierSequence, Params
from .walk import ExponentPath, OccupationTable
from . import experiments
from . import fourier
from . import group
from . import load
from . import process
from . import walk
from . import write
