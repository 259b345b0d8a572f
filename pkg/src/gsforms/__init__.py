"""Geometric quotients by finite groups: smooth models via invariant forms."""

__version__ = "0.1.0"
