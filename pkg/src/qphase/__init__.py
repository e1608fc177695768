"""Finite-dimensional quantum phase-space operator algebra."""

__version__ = "0.1.0"
