"""Witness search and containment tests for circles in triangles."""

from ._core import *  # noqa: F401,F403
from ._core import __version__
