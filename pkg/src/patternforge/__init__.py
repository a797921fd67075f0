"""Exact construction and verification of planar point sets that contain
many similar copies of a fixed pattern.

Coordinates live in cyclotomic fields Q(zeta_M), so containment,
collinearity and similarity tests are exact; counts come with verified
claim ledgers and an exhaustive oracle for cross-checking.
"""

from .constructions import (BuildReport, CATALOG, GenericParam,
                            build_catalog, equilateral15,
                            equilateral_triangle, even_kgon,
                            hex_lattice_cluster, isosceles8,
                            isosceles_triangle, minkowski_iterate,
                            minkowski_sum_generic, pentagon120, pfree_Q,
                            pfree_iterate, regular_polygon, scalene14,
                            scalene5, scalene_triangle, size_cap,
                            square_pattern, theorem3_generic)
from .documents import (dump_point_set, dumps_point_set, from_document,
                        load_point_set, loads_point_set, to_document)
from .errors import (AngleExcludedError, BuildCheckError,
                     DegenerateInputError, DocumentError,
                     DuplicatePointError, LiftError, OracleGuardError,
                     OrderMismatchError, PatternForgeError,
                     PreconditionError, ResampleBudgetError, SizeCapError)
from .exactnum import (CycloField, CycloNum, common_order,
                       cyclotomic_polynomial, field, from_coeffs, from_text,
                       gaussian, lift_all, one, rational, zero, zeta)
from .geom import (PointSet, collinear, find_parallelogram,
                   has_parallel_segments, max_collinear)
from .ledger import Claim, VerdictLedger
from .patterns import (CountReport, Pattern, brute_force_count,
                       count_similar, index, proper_symmetry_order,
                       subset_regular_bound)
from .verify import (check_iteration_bound, check_k22_freeness,
                     check_minkowski_lemma, check_pfree_bounds,
                     run_acceptance_suite)

__version__ = "0.1.0"

__all__ = [
    "AngleExcludedError", "BuildCheckError", "BuildReport", "CATALOG",
    "Claim", "CountReport", "CycloField", "CycloNum",
    "DegenerateInputError", "DocumentError", "DuplicatePointError",
    "GenericParam", "LiftError", "OracleGuardError", "OrderMismatchError",
    "Pattern", "PatternForgeError", "PointSet", "PreconditionError",
    "ResampleBudgetError", "SizeCapError", "VerdictLedger",
    "brute_force_count", "build_catalog", "check_iteration_bound",
    "check_k22_freeness", "check_minkowski_lemma", "check_pfree_bounds",
    "collinear", "common_order", "count_similar", "cyclotomic_polynomial",
    "dump_point_set", "dumps_point_set", "equilateral15",
    "equilateral_triangle", "even_kgon", "field", "find_parallelogram",
    "from_coeffs", "from_document", "from_text", "gaussian",
    "has_parallel_segments", "hex_lattice_cluster", "index", "isosceles8",
    "isosceles_triangle", "lift_all", "load_point_set", "loads_point_set",
    "max_collinear", "minkowski_iterate", "minkowski_sum_generic", "one",
    "pentagon120", "pfree_Q", "pfree_iterate", "proper_symmetry_order",
    "rational", "regular_polygon", "run_acceptance_suite", "scalene14",
    "scalene5", "scalene_triangle", "size_cap", "square_pattern",
    "subset_regular_bound", "theorem3_generic", "to_document", "zero",
    "zeta",
]
