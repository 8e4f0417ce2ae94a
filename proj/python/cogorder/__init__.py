"""Minimum cognitive-cost ordering of partially ordered workflow tasks."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, __version__  # noqa: F401
