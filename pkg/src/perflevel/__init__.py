"""Exact level bounds for bounded complexes over graded quotient rings over GF(p)."""

from .complexes import (
    ChainComplex,
    ChainMap,
    FreeModule,
    HomologyData,
    ModulePresentation,
    RMatrix,
    cone,
    direct_sum,
    find_null_homotopy,
    homology,
    identity_map,
    is_ghost,
    is_null_homotopic,
    lift_map,
    make_complex,
    minimize,
    multiplication_map,
    suspend,
    tensor_base_change,
    truncate_geq,
    truncate_leq,
)
from .errors import (
    AlgebraError,
    ComplexError,
    LiftObstructed,
    MalformedInput,
    NotHomogeneous,
    PreconditionError,
)
from .koszul import (
    KoszulData,
    check_well_defined,
    cycles_in_mK,
    depth_via_koszul,
    kappa_nonzero_degrees,
    koszul,
    koszul_of_ideal,
)
from .level import (
    BoundCertificate,
    LevelReport,
    everyn_example,
    level_of_module,
    level_report,
    lower_bound_gap,
    lower_bound_gapsmap,
    lower_bound_minimal_gap,
    nit_cited_bound,
    upper_bound,
)
from .polyring import PolynomialRing, buchberger, krull_dim, module_gb, nf, syzygies
from .resolutions import (
    free_module,
    is_free,
    pd_probe,
    quotient_module,
    residue_field,
    resolution_of_complex,
    resolve_module,
    syzygy,
)
from .rings import Ideal, Ring, beta, dim_quotient, ideal, make_ring, minimal_generators, reduce

__all__ = [
    "AlgebraError",
    "BoundCertificate",
    "ChainComplex",
    "ChainMap",
    "ComplexError",
    "FreeModule",
    "HomologyData",
    "Ideal",
    "KoszulData",
    "LevelReport",
    "LiftObstructed",
    "MalformedInput",
    "ModulePresentation",
    "NotHomogeneous",
    "PolynomialRing",
    "PreconditionError",
    "RMatrix",
    "Ring",
    "beta",
    "buchberger",
    "check_well_defined",
    "cone",
    "cycles_in_mK",
    "depth_via_koszul",
    "dim_quotient",
    "direct_sum",
    "everyn_example",
    "find_null_homotopy",
    "free_module",
    "homology",
    "ideal",
    "identity_map",
    "is_free",
    "is_ghost",
    "is_null_homotopic",
    "kappa_nonzero_degrees",
    "koszul",
    "koszul_of_ideal",
    "krull_dim",
    "level_of_module",
    "level_report",
    "lift_map",
    "lower_bound_gap",
    "lower_bound_gapsmap",
    "lower_bound_minimal_gap",
    "make_complex",
    "make_ring",
    "minimal_generators",
    "minimize",
    "module_gb",
    "multiplication_map",
    "nf",
    "nit_cited_bound",
    "pd_probe",
    "quotient_module",
    "reduce",
    "residue_field",
    "resolution_of_complex",
    "resolve_module",
    "suspend",
    "syzygies",
    "syzygy",
    "tensor_base_change",
    "truncate_geq",
    "truncate_leq",
    "upper_bound",
]
