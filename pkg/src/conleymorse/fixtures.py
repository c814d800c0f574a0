"""Small reference spaces and fields used by tests, docs and the CLI demo."""

from __future__ import annotations

from .mvf import MultivectorField, singleton_field
from .space import FiniteSpace

STRIP_SIMPLICES = [
    ["A", "B", "C"],
    ["B", "C", "D"],
    ["C", "D", "E"],
    ["D", "E", "F"],
    ["E", "F", "G"],
]

STRIP_FIELD_PARTS = [
    ["A", "AC"],
    ["ABC"],
    ["B", "AB"],
    ["C", "BC"],
    ["CE"],
    ["D", "BD", "CD", "BCD"],
    ["DE", "CDE"],
    ["E", "EG"],
    ["EF", "DEF", "EFG"],
    ["F", "DF", "FG"],
    ["G"],
]

# minimal Morse sets of the strip field, listed by their cell contents
STRIP_MORSE_SETS = [
    {"A", "AC", "C", "BC", "B", "AB"},
    {"ABC"},
    {"CE"},
    {"DEF", "EF", "EFG"},
    {"DF", "F", "FG"},
    {"G"},
]


def strip_space() -> FiniteSpace:
    """Triangulated strip of five triangles on vertices A..G (23 cells)."""
    return FiniteSpace.from_simplicial_complex(STRIP_SIMPLICES)


def strip_field() -> MultivectorField:
    """Eleven-multivector field on the strip with five critical multivectors."""
    return MultivectorField(strip_space(), STRIP_FIELD_PARTS)


# B and C both covered by D, which is covered by A
DIAMOND_TAIL_COVERS = [("B", "D"), ("C", "D"), ("D", "A")]

# two 4-cycles: A, D above E, H and B, C above F, G
TWO_SQUARES_COVERS = [
    ("E", "A"), ("H", "A"), ("E", "D"), ("H", "D"),
    ("F", "B"), ("G", "B"), ("F", "C"), ("G", "C"),
]
TWO_SQUARES_PARTS = [["A", "D", "F", "G"], ["B", "C", "E", "H"]]


def four_point_space() -> FiniteSpace:
    """Four points where every singleton but the top one is critical."""
    return FiniteSpace.from_cover_relations(list("ABCD"), DIAMOND_TAIL_COVERS)


def four_point_field() -> MultivectorField:
    return singleton_field(four_point_space())


def eight_point_space() -> FiniteSpace:
    return FiniteSpace.from_cover_relations(list("ABCDEFGH"), TWO_SQUARES_COVERS)


def eight_point_field() -> MultivectorField:
    """Two critical multivectors whose union is a single recurrent component.

    Each multivector is an isolated invariant set, yet the periodic path
    D, H, B, F, D runs through both, so they do not form a Morse
    decomposition.
    """
    return MultivectorField(eight_point_space(), TWO_SQUARES_PARTS)
