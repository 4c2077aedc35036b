"""Fixed-length task description codes.

Thin Python layer over the C++ core: Renyi entropies of finite laws and Markov
sources, the greedy budgeted partition, task encoders with their moment
bounds, and the mismatch divergence.
"""

from ._core import *  # noqa: F401,F403
from ._core import TaskCodeError  # noqa: F401

__version__ = "0.1.0"
