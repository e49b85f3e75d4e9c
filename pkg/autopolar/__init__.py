# autopolar package
from .scalars import FLOAT, RATIONAL, ScalarMode, ScalarPolicy
from .polyhedron import (
    AdmissibleHyperplane,
    ConicPolytope,
    FullOrthant,
    HalfCone,
    Side,
    canonical_equal,
    distance_to_origin,
    from_inequalities,
    from_vertices,
    minkowski_functional,
    polar,
    polytope_from_doc,
    polytope_to_doc,
    ridge_section,
    slice_by_halfcone,
)
from .antinorm import (
    Antinorm,
    ConcatenatedAntinorm,
    OrthogonalExtensionAntinorm,
    PiecewiseLinearAntinorm,
    ProductAntinorm,
    RestrictedDualAntinorm,
    antinorm_from_doc,
    concatenate,
    dual_eval,
    evaluate,
    orthogonal_extension,
)
from .construct import LiftInput, algorithm1_2d, build_pn, lift_antinorm, lift_polytope, pn_points, product_split
from .verify import (
    check_autopolar,
    check_selfdual_sampled,
    detect_admissible_lifting,
    find_orthogonal_splitting,
    property_suite,
)
from .errors import AutopolarError
from .utils import parse_scalar

__version__ = "0.1.0"
__all__ = [
    "FLOAT",
    "RATIONAL",
    "ScalarMode",
    "ScalarPolicy",
    "AdmissibleHyperplane",
    "ConicPolytope",
    "FullOrthant",
    "HalfCone",
    "Side",
    "canonical_equal",
    "distance_to_origin",
    "from_inequalities",
    "from_vertices",
    "minkowski_functional",
    "polar",
    "polytope_from_doc",
    "polytope_to_doc",
    "ridge_section",
    "slice_by_halfcone",
    "Antinorm",
    "ConcatenatedAntinorm",
    "OrthogonalExtensionAntinorm",
    "PiecewiseLinearAntinorm",
    "ProductAntinorm",
    "RestrictedDualAntinorm",
    "antinorm_from_doc",
    "concatenate",
    "dual_eval",
    "evaluate",
    "orthogonal_extension",
    "LiftInput",
    "algorithm1_2d",
    "build_pn",
    "lift_antinorm",
    "lift_polytope",
    "pn_points",
    "product_split",
    "check_autopolar",
    "check_selfdual_sampled",
    "detect_admissible_lifting",
    "find_orthogonal_splitting",
    "property_suite",
    "AutopolarError",
    "parse_scalar",
]
