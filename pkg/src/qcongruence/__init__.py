"""Exact verification of q-supercongruences for truncated squares of
basic hypergeometric series."""

__version__ = "0.1.0"
