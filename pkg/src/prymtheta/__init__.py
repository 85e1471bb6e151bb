"""Exact divisor classes of the even/odd Prym semicanonical-pencil divisors."""

__version__ = "0.1.0"
