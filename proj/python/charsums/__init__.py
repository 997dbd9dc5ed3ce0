"""Character sums, multiplicative functions, Dickman rho and sumset tools."""

from ._charsums import *  # noqa: F401,F403
from ._charsums import __doc__  # noqa: F401
