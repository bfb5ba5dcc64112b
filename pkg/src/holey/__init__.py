"""Exact counting of near-perfect matchings (one-hole domino tilings) of
odd-by-odd grids, with checks of their 2-adic and parity structure."""

from .grid import Cell, GridSpec, HoleClass, classify_hole, hole_orbit, parity_predicate_hole, parity_predicate_total
from .profile_dp import count_all_holes, count_perfect, count_with_hole
from .twoadic import TwoAdic, decompose

__all__ = [
    "Cell",
    "GridSpec",
    "HoleClass",
    "TwoAdic",
    "classify_hole",
    "count_all_holes",
    "count_perfect",
    "count_with_hole",
    "decompose",
    "hole_orbit",
    "parity_predicate_hole",
    "parity_predicate_total",
]

__version__ = "0.1.0"
