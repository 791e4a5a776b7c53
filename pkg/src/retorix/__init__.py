"""Exact rational cohomology rings of real toric spaces."""

__version__ = "0.1.0"
