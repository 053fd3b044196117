"""Exact poly-cosecant numbers, poly-Bernoulli numbers and the identities
relating them."""

from .polybernoulli import pb_explicit
from .polycosecant import DRoute, SequenceTable, d_table, poly_cosecant

__all__ = ["DRoute", "SequenceTable", "d_table", "pb_explicit", "poly_cosecant"]
__version__ = "0.1.0"
