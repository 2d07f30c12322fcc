"""Spin squeezing and quantum Fisher information of a dephased collective spin
under dynamical decoupling. Thin wrapper over the C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
