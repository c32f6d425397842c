"""Exact and simulated rank distributions in random plane increasing trees."""

__version__ = "1.0.0"
