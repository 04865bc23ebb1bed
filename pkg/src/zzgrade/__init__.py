"""Exact engine for Z2 x Z2 gradings of the exceptional Lie algebras and so(8)."""

from .chevalley import algebra, build_chevalley
from .classify import classify_so8, construct_witness, enumerate_diagonal_pairs, full_run
from .grading import split, verify_grading
from .rootsys import RootSystem

__version__ = "0.1.0"

__all__ = [
    "RootSystem", "algebra", "build_chevalley", "split", "verify_grading",
    "enumerate_diagonal_pairs", "construct_witness", "classify_so8",
    "full_run", "__version__",
]
