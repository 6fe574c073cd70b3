"""Deformation theory of Lie ideals over exact rationals."""
__version__ = "0.1.0"
