"""Straight-line drawings of 4-connected triangulations and planar lattices on few lines."""

__version__ = "0.1.0"
