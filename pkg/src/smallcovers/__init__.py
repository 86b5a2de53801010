"""Exact enumeration and classification of small covers of right-angled polytopes.

Builds the right-angled dodecahedron and 120-cell combinatorially from
H3/H4 Coxeter geometry over Q(sqrt 5), enumerates all normalized GF(2)
facet labelings by backtracking, and classifies them up to symmetry and
change of basis, including stabilizer subgroups and isometry-group orders.
"""

from .coxeter import CoxeterDiagram, group_closure, h3, h4
from .enumeration import (
    brute_force_enumerate,
    enumerate_labelings,
    is_characteristic,
    iter_labelings,
)
from .errors import (
    ClosureError,
    FormatError,
    NotABasisError,
    SearchInfeasibleError,
    SmallCoversError,
    ValidationError,
)
from .gf2 import LinearMap, is_independent, normalizing_map, subset_sums
from .pipeline import RunConfig, run_pipeline
from .polytope import (
    CombPolytope,
    build_polytope,
    choose_facet_order,
    deserialize,
    facet_polytope,
    serialize,
    validate,
)
from .quadfield import QuadExt
from .symmetry import (
    EquivClass,
    act,
    equivalence_classes,
    fingerprint,
    isometry_order,
    restrict_labeling,
    stabilizer,
)

__version__ = "0.1.0"

__all__ = [
    "CombPolytope",
    "CoxeterDiagram",
    "EquivClass",
    "LinearMap",
    "QuadExt",
    "RunConfig",
    "SmallCoversError",
    "NotABasisError",
    "ClosureError",
    "ValidationError",
    "FormatError",
    "SearchInfeasibleError",
    "act",
    "brute_force_enumerate",
    "build_polytope",
    "choose_facet_order",
    "deserialize",
    "enumerate_labelings",
    "equivalence_classes",
    "facet_polytope",
    "fingerprint",
    "group_closure",
    "h3",
    "h4",
    "is_characteristic",
    "is_independent",
    "isometry_order",
    "iter_labelings",
    "normalizing_map",
    "restrict_labeling",
    "run_pipeline",
    "serialize",
    "stabilizer",
    "subset_sums",
    "validate",
]
