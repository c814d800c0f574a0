"""Conley-Morse theory for combinatorial multivector fields on finite spaces."""

from .complex import HomologySignature, Polynomial, relative_homology
from .conley import IndexPair, conley_index, is_isolated_invariant, minimal_index_pair
from .dynamics import Lasso, essential_sccs, inv
from .estimator import ConleyMorseAnalyzer
from .analysis import AnalysisReport, analyze
from .morse import MorseDecomposition, minimal_morse_decomposition, validate_morse_decomposition
from .mvf import MultivectorField, new_mvf
from .space import CellId, CellSet, FiniteSpace

__all__ = [
    "AnalysisReport",
    "CellId",
    "CellSet",
    "ConleyMorseAnalyzer",
    "FiniteSpace",
    "HomologySignature",
    "IndexPair",
    "Lasso",
    "MorseDecomposition",
    "MultivectorField",
    "Polynomial",
    "analyze",
    "conley_index",
    "essential_sccs",
    "inv",
    "is_isolated_invariant",
    "minimal_index_pair",
    "minimal_morse_decomposition",
    "new_mvf",
    "relative_homology",
    "validate_morse_decomposition",
]
