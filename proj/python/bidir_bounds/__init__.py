"""Bounds on entanglement and secret key from bidirectional quantum channels."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
