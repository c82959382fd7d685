"""Curve and surface modeling with normalized B-bases of ODE solution spaces."""

from .bench import ConfidenceInterval, confidence_interval, time_trials
from .charpoly import (
    CharacteristicPolynomial,
    CharacteristicZero,
    contains,
    derivative_polynomial,
    eval_polynomial,
    expanded_coefficients,
    is_reflection_invariant,
    make_polynomial,
    reflected_polynomial,
)
from .basis import (
    OrdinaryBasisFunction,
    eval_ordinary_derivative,
    latex_basis_function,
    ordinary_basis,
)
from .critical import critical_length, critical_length_for_design
from .curve import (
    BCurve,
    InterpolationProblem,
    SampledCurve,
    elevate_order,
    elevate_to,
    eval_curve,
    interpolate,
    represent_ordinary_curve,
    sample_curve,
    subdivide,
)
from .emitters import write_csv, write_obj, write_svg
from .errors import (
    ConfigError,
    DegeneratePoint,
    DimensionMismatch,
    ECGeomError,
    IllConditioned,
    IntervalMismatch,
    InvalidInterval,
    IoFailure,
    MissingZeroRoot,
    NotASubspace,
    OutOfDomain,
    RankDeficient,
    SearchFailed,
    Singular,
    SingularCollocation,
    TooFewSamples,
    ZeroDenominator,
    ZeroDiagonal,
    ZeroPivot,
)
from .linalg import ConditionReport, LUFactors
from .space import (
    ECSpace,
    alternative_b_coefficients,
    b_matrix,
    build_space,
    eval_b_basis,
    latex_ordinary_basis,
    lu_solve_flop_count,
    ordinary_matrix,
    transformation_flop_count,
    transformation_matrix,
)
from .surface import (
    BSurface,
    ScalarField,
    SeparableSurfaceSpec,
    TriangleMesh,
    curvature_field,
    elevate_order_surface,
    eval_surface,
    isoparametric_lines,
    represent_ordinary_surface,
    subdivide_surface,
    tessellate,
)

__version__ = "0.1.0"
