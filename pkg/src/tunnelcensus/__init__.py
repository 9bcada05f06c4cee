"""Rational-tangle calculus, Montesinos knot enumeration, exact Jones
polynomial and determinant computation, knot-table identification and
tunnel-number classification for the 11- and 12-crossing census."""

__version__ = "0.1.0"
