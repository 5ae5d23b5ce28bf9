"""Diffusive molecular channel to a porous spheroidal receiver."""

from ._spheroid import *  # noqa: F401,F403
from ._spheroid import __version__  # noqa: F401
