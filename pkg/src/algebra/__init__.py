"""Ulrich Certify - exact polynomial, Groebner, graded, Rees and polygon modules"""

__version__ = "1.0.0"
