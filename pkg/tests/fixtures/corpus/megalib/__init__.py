"""Synthetic corpus package."""

__version__ = "1.0.0"

from .dec_fn import old1
from .subpkg.mod import K
