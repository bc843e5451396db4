"""Exact values at s=0 of partial Hecke L-functions of real quadratic
fields, with family linearity extraction and the sieve of residue
congruences for class-number-one problems.
"""

__version__ = "0.1.0"
