"""Disjoint sub-boxes of {0,1}^n written as words over {0,1,*}."""

from .family import WordFamily, check_alpha, double, paper_k2_family
from .words import Word, cardinality, clash_positions, intersect, prop

__all__ = [
    "Word",
    "WordFamily",
    "cardinality",
    "check_alpha",
    "clash_positions",
    "double",
    "intersect",
    "paper_k2_family",
    "prop",
]
