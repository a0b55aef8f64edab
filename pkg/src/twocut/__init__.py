"""Exact global minimum cuts of weighted undirected graphs via spanning trees
that the cut crosses at most twice."""
from .graph import Graph, GraphError, ParseError, StructureError, parse_graph, parse_trees, serialize_graph
from .oracle import CutOracle, build_cut_oracle
from .pipeline import (
    CutResult,
    PackingConfig,
    brute_force_two_respect,
    greedy_tree_packing,
    min_cut,
    stoer_wagner,
)
from .rangeindex import build_index, compiled_available
from .tree import RootedTree, root_tree
from .tworespect import CutCandidate, SolveStats, solve_tree, two_respect_min

__version__ = "0.1.0"

__all__ = [
    "CutCandidate", "CutOracle", "CutResult", "Graph", "GraphError", "PackingConfig", "ParseError",
    "RootedTree", "SolveStats", "StructureError", "brute_force_two_respect", "build_cut_oracle",
    "build_index", "compiled_available", "greedy_tree_packing", "min_cut", "parse_graph", "parse_trees",
    "root_tree", "serialize_graph", "solve_tree", "stoer_wagner", "two_respect_min",
]
