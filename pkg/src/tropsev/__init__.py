"""Tropical Severi-variety toolkit."""

__version__ = "0.1.0"
