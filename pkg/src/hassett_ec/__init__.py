"""Exceptional collections on moduli of weighted pointed rational curves, checked by computer.

The package enumerates the collection for a given number of markings and
checks its invariance, windows, exceptionality, Gram matrix and fullness
certificates.
"""

__version__ = "0.1.0"
