"""Exact verification engine for almost hypercomplex structures with
Hermitian-Norden metrics on 4-dimensional Lie algebras."""

from .algebra import (
    ABELIAN,
    BUILTIN,
    FAMILY_NAMES,
    LieAlgebra,
    LieAlgebraSpec,
    builtin,
    check_jacobi,
    load_algebra,
    parse_algebra,
    serialize_algebra,
)
from .classify import (
    AdmissibleSpace,
    ClassLabel,
    admissible_space,
    classify,
    decompose,
)
from .connection import (
    Connection,
    FundamentalTensors,
    check_connection,
    fundamental_tensors,
    koszul_connection,
    verify_f_identities,
)
from .curvature import (
    CurvatureReport,
    curvature_report,
    ricci_and_scalars,
    riemann,
    sectional,
)
from .exprparse import parse_scalar, parse_vector
from .scalar import Scalar, format_scalar, sign
from .structure import HNStructure, check_structure, metric_inverse, standard_structure

__version__ = "0.1.0"
