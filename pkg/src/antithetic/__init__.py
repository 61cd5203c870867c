"""Antithetical training sets and contrastive center losses for cross-resolution person ReID."""
from .exceptions import AntitheticError

__version__ = "0.1.0"

__all__ = ['AntitheticError', '__version__']
