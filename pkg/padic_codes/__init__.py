"""Exact p-adic spherical codes: validation, maximal sizes and LP-style bounds."""

__version__ = "0.1.0"
