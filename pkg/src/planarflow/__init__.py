"""Planar max-flow oracles, negative-cycle detection and min-cost circulation."""

__version__ = "0.1.0"
