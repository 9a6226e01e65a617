"""Exact solvers for integer programs symmetric under block permutation groups.

The package provides exact rational LP/ILP machinery, orbit and fixed-space
computations for products of symmetric groups, fiber enumeration with one
core representative per fiber, a brute-force core point oracle, the
orbit-reversing model transform, a seeded instance generator, and a CLI.
"""

from .errors import (CapExceededError, NotSymmetricError, ParseError,
                     SymcoreError, UnboundedError)
from .rationals import Num, canon, dot, format_rat, parse_rat, rat
from .groups import (Block, BlockGroup, apply_perm, block_sums,
                     fiber_objective, group_to_json, orbit_of_vector,
                     parse_group, project_to_fixed, sort_blockwise_desc)
from .model import (Instance, SymmetryReport, SymmetryViolation,
                    dominating_rows, instance_from_json, instance_to_json,
                    load_instance, loads_instance, make_instance,
                    orbit_closure_rows, require_symmetric, save_instance,
                    validate_symmetry)
from .lp import LPResult, hull_membership, lp_solve
from .projection import (ProjectedPolyhedron, coordinate_bounds,
                         enumerate_lattice_points, project_polyhedron)
from .corepoints import (CoreRep, cyclic_example_point,
                         enumerate_core_points_in_box, fiber_feasible,
                         fiber_rep, hull_lattice_free, is_core_point,
                         lattice_points_in_hull, shift_generator)
from .solver import Solution, solve_bb, solve_fiber
from .transform import (TransformedInstance, export_model, lift_solution,
                        sort_block_descending, transform_instance)
from .generator import GenParams, block_group_for_sizes, generate_instance

__all__ = [
    "Block", "BlockGroup", "CapExceededError", "CoreRep", "GenParams",
    "Instance", "LPResult", "NotSymmetricError", "Num", "ParseError",
    "ProjectedPolyhedron", "Solution", "SymcoreError", "SymmetryReport",
    "SymmetryViolation", "TransformedInstance", "UnboundedError",
    "apply_perm", "block_group_for_sizes", "block_sums", "canon",
    "coordinate_bounds", "cyclic_example_point", "dominating_rows", "dot",
    "enumerate_core_points_in_box", "enumerate_lattice_points",
    "export_model", "fiber_feasible", "fiber_objective", "fiber_rep",
    "format_rat", "generate_instance", "group_to_json", "hull_lattice_free",
    "hull_membership", "instance_from_json", "instance_to_json",
    "is_core_point", "lattice_points_in_hull", "lift_solution",
    "load_instance", "loads_instance", "lp_solve", "make_instance",
    "orbit_closure_rows", "orbit_of_vector", "parse_group", "parse_rat",
    "project_polyhedron", "project_to_fixed", "rat", "require_symmetric",
    "save_instance", "shift_generator", "solve_bb", "solve_fiber",
    "sort_block_descending", "sort_blockwise_desc", "transform_instance",
    "validate_symmetry",
]
