"""Exact cut-and-join / W-operator toolkit."""

__version__ = "0.1.0"
