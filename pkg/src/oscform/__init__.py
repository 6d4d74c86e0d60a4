"""Exact computation of osculating spaces, higher fundamental forms, and
ruledness diagnostics for parameterized projective varieties.

All arithmetic is over the rationals (or the rational function field of
the parameter space); no floating point is used anywhere.
"""

__version__ = "0.1.0"
