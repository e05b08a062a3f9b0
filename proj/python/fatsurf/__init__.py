"""Python bindings for the fatsurf library."""

from ._core import *  # noqa: F401,F403
from ._core import FatsurfError

__all__ = [name for name in dir() if not name.startswith("_")]
