"""Chermak-Delgado lattices of finite groups: computation, shape
classification and verification of quasi-antichain structure."""

__version__ = "0.1.0"
