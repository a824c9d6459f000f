"""Short cycle covers of bridgeless multigraphs."""
from .errors import *  # noqa: F401,F403
from .multigraph import Multigraph, ReductionTrace, lift_cycle  # noqa: F401

__version__ = "0.1.0"
