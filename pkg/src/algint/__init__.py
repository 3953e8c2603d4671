"""Exact integration of algebraic functions and creative telescoping.

The package decides integrability of elements of K(x)[y]/<m> by a lazy
Hermite reduction followed by a polynomial reduction, and builds telescopers
for bivariate algebraic functions from the resulting remainder ledger.
"""

__version__ = "0.1.0"
