"""Exact workbench for singular subgroups of ordered K0-type groups."""

__version__ = "0.1.0"
