"""Discrete Zariski-dense subgroups of algebraic groups over local fields."""

__version__ = "0.1.0"
