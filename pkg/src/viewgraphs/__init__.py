"""Solvability of viewing graphs: necessary conditions, moves, the linear
finite-solvability test, and a census of minimal graphs."""

from .canonical import CanonicalForm, are_isomorphic, canonical_form
from .census import CensusRow, run_census
from .counting import deficiency, e_min, glue, minimal_solvable
from .enumerate import enumerate_connected
from .graph import (
    GraphParseError,
    GraphValidationError,
    ViewingGraph,
    degree,
    is_biconnected,
    is_connected,
    parse_graph,
    serialize_graph,
)
from .lintest import PinholeSet, assemble_system, finite_solvable, lc_rows, sample_pinholes
from .linalg import RationalMatrix
from .moves import MixedGraph, MoveTrace, closure, solvable_with_moves
from .necessary import NecessaryVerdict, Rule, check_all_necessary

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm", "CensusRow", "GraphParseError", "GraphValidationError",
    "MixedGraph", "MoveTrace", "NecessaryVerdict", "PinholeSet", "RationalMatrix",
    "Rule", "ViewingGraph", "are_isomorphic", "assemble_system", "canonical_form",
    "check_all_necessary", "closure", "deficiency", "degree", "e_min",
    "enumerate_connected", "finite_solvable", "glue", "is_biconnected",
    "is_connected", "lc_rows", "minimal_solvable", "parse_graph", "run_census",
    "sample_pinholes", "serialize_graph", "solvable_with_moves",
]
