"""Exact wall-crossing calculator for stable pairs and DT invariants on local P²."""

__version__ = "0.1.0"
