"""Exact relaxation complexity of finite lattice-convex sets."""
from .exact import HPolyhedron, Inequality, UnboundedError, lattice_points
from .lattice import LatticeSet, ball, cross, cube, simplex
from .bounds import HidingGraph, chromatic_number, hiding_graph, max_clique
from .separation import SeparationCertificate, rc_eps, rc_eps_full, rc_finite
from .rc2d import rc_2d
from .relaxations import iterative_rc, verify_relaxation

__all__ = [
    "HPolyhedron", "Inequality", "UnboundedError", "lattice_points",
    "LatticeSet", "ball", "cross", "cube", "simplex",
    "HidingGraph", "chromatic_number", "hiding_graph", "max_clique",
    "SeparationCertificate", "rc_eps", "rc_eps_full", "rc_finite",
    "rc_2d", "iterative_rc", "verify_relaxation",
]
