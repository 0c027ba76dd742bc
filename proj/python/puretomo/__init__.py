"""Rank-1 POVM constructions, pure-state tomography and distinguishability checks."""

from ._core import *          # noqa: F401,F403
from ._core import __version__  # noqa: F401
