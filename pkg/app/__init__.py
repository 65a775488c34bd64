"""Uniform sampling of simple directed graphs with prescribed degrees."""

__version__ = "1.0.0"
