"""Orbifold fundamental groups of curves, their characteristic varieties at
torsion characters, and finite unbranched covers.

All arithmetic is exact: integer matrices, cyclotomic fields and rationals.
"""

from .abelian import (
    AbelianQuotient,
    AbelianStructure,
    Character,
    SmithForm,
    characters,
    finite_abelian,
    h1,
    pull_back,
    smith_normal_form,
)
from .alexander import charvar, depth, depth_table, fox_jacobian, length, restriction_report
from .covers import (
    CoverReport,
    PermRep,
    Permutation,
    analyze_cover,
    cover_from_fibers,
    euler_orb,
    is_suborbifold,
    regular_rep,
    reidemeister_schreier,
    saturation_check,
    validate_rep,
)
from .cyclotomic import Cyclo, cyclo_root, cyclotomic_polynomial, rank_over_cyclotomic
from .errors import ConsistencyError, OrbikitError, PreconditionError
from .fixtures import fixture, fixture_names
from .fpgroup import OrbicurveSpec, Presentation, Word, orbicurve_group, orbicurve_meridians
from .sakuma import SakumaReport, abelian_cover_genus, length_count_b1, namba_uniformizing, oracle_b1, sakuma_b1

__version__ = "0.1.0"

__all__ = [
    "AbelianQuotient",
    "AbelianStructure",
    "Character",
    "ConsistencyError",
    "CoverReport",
    "Cyclo",
    "OrbicurveSpec",
    "OrbikitError",
    "PermRep",
    "Permutation",
    "PreconditionError",
    "Presentation",
    "SakumaReport",
    "SmithForm",
    "Word",
    "abelian_cover_genus",
    "analyze_cover",
    "characters",
    "charvar",
    "cover_from_fibers",
    "cyclo_root",
    "cyclotomic_polynomial",
    "depth",
    "depth_table",
    "euler_orb",
    "finite_abelian",
    "fixture",
    "fixture_names",
    "fox_jacobian",
    "h1",
    "is_suborbifold",
    "length",
    "length_count_b1",
    "namba_uniformizing",
    "orbicurve_group",
    "orbicurve_meridians",
    "oracle_b1",
    "pull_back",
    "rank_over_cyclotomic",
    "regular_rep",
    "reidemeister_schreier",
    "restriction_report",
    "sakuma_b1",
    "saturation_check",
    "smith_normal_form",
    "validate_rep",
]
