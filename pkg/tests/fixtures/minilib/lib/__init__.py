"""Tiny library fixture with three deprecated elements."""

__version__ = "0.2.0"

from .a import old_fn
from .b import OldStyle, g
