"""Slit half-strip graph model, conformal charts, and covering-sum
dimension certificates."""

__version__ = "0.1.0"
