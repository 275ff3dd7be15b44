"""Exact integral group-ring computations for the metacyclic groups G(p, p-1)."""

from .exactlin import IntMatrix, hnf, snf, solve_right
from .metacyclic import GroupElem, GroupParams, RingElem
from .modrep import Lattice, Representation
from .report import Check, Report

__version__ = "0.1.0"

__all__ = [
    "Check",
    "GroupElem",
    "GroupParams",
    "IntMatrix",
    "Lattice",
    "Report",
    "Representation",
    "RingElem",
    "hnf",
    "snf",
    "solve_right",
]
