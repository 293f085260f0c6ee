"""Knight's tours on rectangular, cylindrical and toroidal boards.

Boards are multigraphs whose edges are knight-jump classes; closed tours on
the cylinder and torus are classified up to homotopy by lifting them to the
strip or plane.  The package searches for tours of a prescribed class,
builds them inductively, and checks the existence characterizations.
"""
from .boardgraph import BoardSpec, DirectedJump, EdgeId, KnightPair, Square, Topology, edge_count, edges
from .errors import KnightTopoError
from .lift import (
    ANY,
    GENERATOR,
    IDENTITY,
    LONGITUDE,
    ClassTarget,
    CylinderClass,
    TorusClass,
    classify,
    lift_tour,
    parity_obstruction,
)
from .search import Budget, SearchProblem, count_tours, find_open_tour, find_tour, prove_nonexistence
from .serialize import TourDocument, deserialize, serialize
from .tour import Tour

__all__ = [
    "ANY",
    "GENERATOR",
    "IDENTITY",
    "LONGITUDE",
    "BoardSpec",
    "Budget",
    "ClassTarget",
    "CylinderClass",
    "DirectedJump",
    "EdgeId",
    "KnightPair",
    "KnightTopoError",
    "SearchProblem",
    "Square",
    "Topology",
    "Tour",
    "TourDocument",
    "TorusClass",
    "classify",
    "count_tours",
    "deserialize",
    "edge_count",
    "edges",
    "find_open_tour",
    "find_tour",
    "lift_tour",
    "parity_obstruction",
    "prove_nonexistence",
    "serialize",
]
