"""Worst-case error bounds for Lipschitz functions on general domains."""

__version__ = "0.1.0"
