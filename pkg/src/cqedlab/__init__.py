"""Circuit QED toolkit: operators, circuit quantization, Lindblad dynamics,
driven two-level systems, Jaynes-Cummings physics and the engineered Lambda system."""

__version__ = "0.1.0"

from . import circuits, dynamics, jcm, lambda3, opalg, twolevel  # noqa: F401
from .errors import *  # noqa: F401,F403
