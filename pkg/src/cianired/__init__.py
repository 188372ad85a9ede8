"""Stable reduction types of plane quartics with three commuting involutions.

The package classifies, at an odd prime p, the stable reduction of smooth
curves F = Ax^4 + By^4 + Cz^4 + ay^2z^2 + bx^2z^2 + cx^2y^2 and of the
hyperelliptic curves arising as their degenerations, purely from p-adic
valuations of five exact stratum invariants.  It also reconstructs the dual
graph independently from rational branch data (the stable-model oracle) and
exposes both routes on the command line.
"""

from __future__ import annotations

from .classify import (
    ArrangementNotFound,
    ClassificationResult,
    ComponentReport,
    Inconsistent,
    MultiMatch,
    UnmatchedProfile,
    classify,
    classify_curve,
    match_l_valuations,
)
from .graphs import (
    DecoratedGraph,
    MarkedTree,
    ReductionType,
    StableCurveGraph,
    admissible_cover,
    edge_labels,
    enumerate_decorated,
    identify,
    stabilize,
    stable_catalog,
    type_name,
)
from .hyperelliptic import (
    DegenerateOrbit,
    HypCianiModel,
    LInvariants,
    classify_hyp,
    classify_hyp_model,
    hyp_transform_orbit,
    l_invariants,
    l_valuation_profile,
)
from .oracle import (
    MoebiusMap,
    NotATree,
    ProjPoint,
    RationalBranchData,
    branch_points,
    build_tree,
    coordinate_classes,
    equivalent,
    oracle_classify,
    parametrize_conic,
)
from .quartic import (
    CianiQuartic,
    QuarticInvariants,
    SingularCurve,
    ValuationProfile,
    apply_transform,
    deltas,
    invariants,
    normalize_coefficient_valuations,
    valuation_profile,
)
from .valuations import (
    INF,
    AllInfinite,
    EvenPrime,
    FractionalShift,
    NegativeValuation,
    ValuedContext,
    ZeroInput,
    canonical_shift,
    odd_bad_primes,
    residue,
    val_p,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # valuations
    "INF",
    "ValuedContext",
    "val_p",
    "residue",
    "canonical_shift",
    "odd_bad_primes",
    "EvenPrime",
    "NegativeValuation",
    "AllInfinite",
    "ZeroInput",
    "FractionalShift",
    # quartic
    "CianiQuartic",
    "QuarticInvariants",
    "ValuationProfile",
    "SingularCurve",
    "deltas",
    "invariants",
    "apply_transform",
    "normalize_coefficient_valuations",
    "valuation_profile",
    # classification
    "ClassificationResult",
    "ComponentReport",
    "classify",
    "classify_curve",
    "match_l_valuations",
    "UnmatchedProfile",
    "MultiMatch",
    "Inconsistent",
    "ArrangementNotFound",
    # hyperelliptic
    "HypCianiModel",
    "LInvariants",
    "DegenerateOrbit",
    "l_invariants",
    "l_valuation_profile",
    "classify_hyp",
    "classify_hyp_model",
    "hyp_transform_orbit",
    # graphs
    "ReductionType",
    "MarkedTree",
    "DecoratedGraph",
    "StableCurveGraph",
    "edge_labels",
    "admissible_cover",
    "stabilize",
    "stable_catalog",
    "enumerate_decorated",
    "identify",
    "type_name",
    # oracle
    "RationalBranchData",
    "ProjPoint",
    "MoebiusMap",
    "branch_points",
    "parametrize_conic",
    "coordinate_classes",
    "equivalent",
    "build_tree",
    "oracle_classify",
    "NotATree",
]
