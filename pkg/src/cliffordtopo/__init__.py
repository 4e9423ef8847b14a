"""Clifford algebra periodicity, the tenfold table and 2D band invariants."""

__version__ = "0.1.0"
FORMAT_VERSION = "1"
