"""Generalized Einstein coefficients and quantum Rabi dynamics."""

from qrabi._core import *  # noqa: F401,F403
from qrabi._core import constants, specfun  # noqa: F401
