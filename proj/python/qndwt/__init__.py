"""Nondecimated wavelet transforms on an exact statevector simulator."""

from ._qndwt import *          # noqa: F401,F403
from ._qndwt import __version__  # noqa: F401
