"""Minimal degrees of polynomial generators for fields of rational invariants
of finite abelian groups, computed exactly through integer lattices."""

from .degree import DegreeResult, DegreeTraceRow, degree_invariants, generation_profile, points_of_degree
from .groups import AbelianGroup, CharacterSet, canonical_class_rep, enumerate_classes, image_order, normalize_support, parse_charset
from .lattice import ReprLattice, build_lattice, contains_point

__version__ = "0.1.0"
