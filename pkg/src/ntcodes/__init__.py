"""Codes in Johnson graphs: constructions, groups, and exact verification."""

__version__ = "1.0.0"
