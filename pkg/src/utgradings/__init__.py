"""Exact construction, verification, and classification of group gradings on
the Lie algebra of strictly and weakly upper triangular matrices."""

from .fields import Field, FieldError, parse_field_flag
from .groups import AbelianGroup, GroupError, parse_group_flag
from .linalg import Subspace, QuotientMap
from .gradings import Grading, GradingError, QuotientGrading, VerificationReport
from .descriptors import (
    DescriptorError,
    GradingDescriptor,
    build,
    canonical,
    canonical_practical,
    count_classes,
    graded_isomorphic,
    practically_isomorphic,
)
from .classify import ClassificationError, ClassificationTrace, classify
from .identities import (
    AdPower,
    GradedVariable,
    LieWord,
    Separator,
    find_separator,
    holds_adpower,
    holds_multilinear,
    make_xi,
    make_xi_type2,
)
from .oracle import (
    CensusConfig,
    CensusResult,
    OracleError,
    census,
    enumerate_gradings,
    graded_isomorphic_search,
    practical_isomorphic_search,
)
from .kernel import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "AdPower",
    "BACKEND",
    "CensusConfig",
    "CensusResult",
    "ClassificationError",
    "ClassificationTrace",
    "DescriptorError",
    "Field",
    "FieldError",
    "GradedVariable",
    "Grading",
    "GradingDescriptor",
    "GradingError",
    "GroupError",
    "LieWord",
    "OracleError",
    "QuotientGrading",
    "QuotientMap",
    "Separator",
    "Subspace",
    "VerificationReport",
    "build",
    "canonical",
    "canonical_practical",
    "census",
    "classify",
    "count_classes",
    "enumerate_gradings",
    "find_separator",
    "graded_isomorphic",
    "graded_isomorphic_search",
    "holds_adpower",
    "holds_multilinear",
    "make_xi",
    "make_xi_type2",
    "parse_field_flag",
    "parse_group_flag",
    "practical_isomorphic_search",
    "practically_isomorphic",
]
