"""Jacobians, generalized Jacobians and Picard groups of finite graphs, computed exactly."""

from .errors import (
    GraphJacError,
    NotConnected,
    NotHarmonicAt,
    NotWellDefined,
    PreconditionViolated,
    TheoremViolation,
)
from .graph import Edge, Graph, Modulus, build_graph, extend_with_modulus, graph_from_dict, reverse_edges, spanning_forest
from .groups import FgAbGroup, GroupElement, GroupHom, format_group, induced_hom
from .linalg import IntMatrix, hnf, kernel_basis, snf
from .complexes import GraphComplex, hodge_checks
from .jacobian import JacobianContext, abel_jacobi, jacobian_group, verify_abel, verify_diagram
from .modulus import ModulusContext, abel_jacobi_m, generalized_jacobian, ray_class_group0, verify_abel_m
from .sheaves import CellularSheaf, cech_cohomology, picard_geometric, rigidified_picard
from .morphisms import GraphMorphism, harmonic_multiplicities, modulus_functoriality
from .abstract import AbstractSystem, abstract_engine

__version__ = "0.1.0"
