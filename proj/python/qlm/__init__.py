"""Quasilocal energy-momentum of spacelike 2-surface families.

The compiled core lives in qlm._qlm; everything it exports is re-exported
here.
"""

from ._qlm import *  # noqa: F401,F403
from ._qlm import __version__  # noqa: F401
