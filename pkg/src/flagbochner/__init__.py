"""Exact coordinate charts and Bochner classification on classical flag
manifolds."""

from .bochner import (
    BochnerStatus,
    BochnerVerdict,
    ForbiddenReport,
    Trinomial,
    catalog_trinomials,
    catalog_sum,
    classify,
    forbidden_report,
    render_constraint,
    verdict_from_report,
)
from .expansion import (
    AdmissibleMinors,
    DiastasisExpansion,
    NumericDomainError,
    admissible_minors,
    diastasis,
    eval_numeric,
    exp_Z,
    gram,
    hessian_fd,
    is_admissible,
    symbolic_metric,
    truncated_value,
)
from .lie_core import (
    Family,
    GroupSpec,
    PaintedDiagram,
    PaintingError,
    PoincarePoly,
    Root,
    all_roots,
    black_roots,
    flag_dimension,
    height,
    iter_black_sets,
    poincare,
    positive_roots,
    simple_coefficients,
    simple_roots,
    validate_Q,
    white_roots,
)
from .matrices import (
    CoordinateAtlas,
    RootVectorMatrix,
    build_Z,
    cartan_diagonal,
    nilpotency_index,
    numeric_Z,
    root_vector,
)
from .poly import (
    CoeffForm,
    EngineInvariantError,
    Monomial,
    NonlinearCoefficientError,
    Polynomial,
    SymbolicMatrix,
    log1p_expand,
    minor_det,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleMinors",
    "BochnerStatus",
    "BochnerVerdict",
    "CoeffForm",
    "CoordinateAtlas",
    "DiastasisExpansion",
    "EngineInvariantError",
    "Family",
    "ForbiddenReport",
    "GroupSpec",
    "Monomial",
    "NonlinearCoefficientError",
    "NumericDomainError",
    "PaintedDiagram",
    "PaintingError",
    "PoincarePoly",
    "Polynomial",
    "Root",
    "RootVectorMatrix",
    "SymbolicMatrix",
    "Trinomial",
    "admissible_minors",
    "all_roots",
    "black_roots",
    "build_Z",
    "cartan_diagonal",
    "catalog_sum",
    "catalog_trinomials",
    "classify",
    "diastasis",
    "eval_numeric",
    "exp_Z",
    "flag_dimension",
    "forbidden_report",
    "gram",
    "height",
    "hessian_fd",
    "is_admissible",
    "iter_black_sets",
    "log1p_expand",
    "minor_det",
    "nilpotency_index",
    "numeric_Z",
    "poincare",
    "positive_roots",
    "render_constraint",
    "root_vector",
    "simple_coefficients",
    "simple_roots",
    "symbolic_metric",
    "truncated_value",
    "validate_Q",
    "verdict_from_report",
    "white_roots",
]
