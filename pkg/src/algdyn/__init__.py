"""Exact desk-scale models of algebraic dynamical systems."""

__version__ = "0.1.0"
