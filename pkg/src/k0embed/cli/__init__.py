"""Command line interface and the JSON document formats it reads and writes."""

from .main import main

__all__ = ["main"]
