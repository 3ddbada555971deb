"""Symbolic and numeric tools for the Toeplitz algebra of a finite directed graph."""

from .graph import DirectedGraph, GraphError, parse_graph
from .report import Finding, VerificationReport
from .staralg import GaussianRational, Monomial, StarPolynomial, gen_edge, gen_vertex
from .words import INFINITY, GraphPath

__all__ = [
    "DirectedGraph",
    "Finding",
    "GaussianRational",
    "GraphError",
    "GraphPath",
    "INFINITY",
    "Monomial",
    "StarPolynomial",
    "VerificationReport",
    "gen_edge",
    "gen_vertex",
    "parse_graph",
]

__version__ = "0.1.0"
