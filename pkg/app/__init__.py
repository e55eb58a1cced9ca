"""Whitham Spectral Lab: periodic pseudospectral solver and verification lab."""

__version__ = "1.0.0"
