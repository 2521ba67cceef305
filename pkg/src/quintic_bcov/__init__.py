"""Exact evaluation of the BCOV Feynman rule for the quintic threefold."""
from __future__ import annotations

__version__ = "0.1.0"
