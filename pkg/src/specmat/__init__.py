"""Matrix functions F(tA) of dense complex matrices by spectral synthesis.

The characteristic polynomial reduces every entire function of an n-by-n
matrix to a polynomial of degree n-1 in that matrix; this package computes
the reduction coefficients from the spectrum (deflation formula on distinct
eigenvalues, confluent divided differences on clustered ones) and ships an
independent scaling-and-squaring oracle for verification.
"""

from .charpoly import (
    CharacteristicPolynomial,
    DeflatedCoefficients,
    char_poly,
    companion,
    deflate,
    poly_from_roots,
    power_column,
)
from .numkernel import (
    SquareMatrix,
    frobenius_norm,
    horner_matrix_poly,
    mat_add,
    mat_mul,
    mat_scale,
    mat_sub,
)
from .oracle import (
    DEFAULT_ORACLE_CONFIG,
    OracleConfig,
    OracleConvergenceError,
    oracle_expm,
    oracle_matfun,
)
from .roots import (
    DEFAULT_CLUSTER_TOL,
    RESIDUAL_TOL,
    ClusteredSpectrum,
    EigenNode,
    RootConvergenceError,
    cluster,
    solve,
    solve_closed,
    solve_general,
)
from .synthesis import (
    DerivativeUnsupportedError,
    Diagnostics,
    ScalarFunction,
    SynthesisTrace,
    TraceConsistencyError,
    build_trace,
    divided_difference_table,
    evaluate_matrix_function,
    hermite_coefficients,
    lagrange_coefficients,
    polynomial_derivative_at,
)

__version__ = "0.1.0"

__all__ = [
    "CharacteristicPolynomial",
    "ClusteredSpectrum",
    "DEFAULT_CLUSTER_TOL",
    "DEFAULT_ORACLE_CONFIG",
    "DeflatedCoefficients",
    "DerivativeUnsupportedError",
    "Diagnostics",
    "EigenNode",
    "OracleConfig",
    "OracleConvergenceError",
    "RESIDUAL_TOL",
    "RootConvergenceError",
    "ScalarFunction",
    "SquareMatrix",
    "SynthesisTrace",
    "TraceConsistencyError",
    "build_trace",
    "char_poly",
    "cluster",
    "companion",
    "deflate",
    "divided_difference_table",
    "evaluate_matrix_function",
    "frobenius_norm",
    "hermite_coefficients",
    "horner_matrix_poly",
    "lagrange_coefficients",
    "mat_add",
    "mat_mul",
    "mat_scale",
    "mat_sub",
    "oracle_expm",
    "oracle_matfun",
    "poly_from_roots",
    "polynomial_derivative_at",
    "power_column",
    "solve",
    "solve_closed",
    "solve_general",
]
