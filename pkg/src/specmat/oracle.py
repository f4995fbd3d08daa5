"""Independent reference evaluations used to cross-check the synthesis path.

The exponential is a plain scaling-and-squaring truncated Taylor series,
deliberately free of any interpolation machinery. sin and cos come from the
exponential at +-iA; monomials and polynomials are evaluated directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numkernel import SquareMatrix, frobenius_norm, mat_mul
from .synthesis import ScalarFunction

_MAX_TAYLOR_TERMS = 200


class OracleConvergenceError(RuntimeError):
    """Taylor summation failed to terminate (defensive; unreachable after scaling)."""


@dataclass(frozen=True)
class OracleConfig:
    target_tolerance: float = 1e-13
    max_squarings: int = 40

    def __post_init__(self):
        if not 0.0 < self.target_tolerance <= 1e-2:
            raise ValueError("target_tolerance must lie in (0, 1e-2]")
        if not 0 <= self.max_squarings <= 60:
            raise ValueError("max_squarings must lie in [0, 60]")


DEFAULT_ORACLE_CONFIG = OracleConfig()


def oracle_expm(a: SquareMatrix, cfg: OracleConfig = DEFAULT_ORACLE_CONFIG) -> SquareMatrix:
    """exp(A) by scaling and squaring around a truncated Taylor series.

    Scales A by 2^-s until its Frobenius norm is at most 0.5, sums the series
    until the next term falls below target_tolerance * |partial sum| * 2^-s,
    then squares s times.
    """
    norm = frobenius_norm(a)
    s = 0
    while norm / 2.0**s > 0.5:
        s += 1
        if s > cfg.max_squarings:
            raise ValueError(
                f"norm {norm:.3e} needs more than {cfg.max_squarings} squarings"
            )

    B = a.data / 2.0**s
    n = a.n
    total = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    for k in range(1, _MAX_TAYLOR_TERMS + 1):
        term = term @ B / k
        total = total + term
        if np.linalg.norm(term) <= cfg.target_tolerance * np.linalg.norm(total) / 2.0**s:
            break
    else:
        raise OracleConvergenceError("Taylor series did not terminate")

    for _ in range(s):
        total = total @ total
    return SquareMatrix(total)


def _horner_any_degree(a: SquareMatrix, coeffs) -> SquareMatrix:
    eye = np.eye(a.n, dtype=np.complex128)
    acc = complex(coeffs[-1]) * eye
    for c in reversed(coeffs[:-1]):
        acc = acc @ a.data + complex(c) * eye
    return SquareMatrix(acc)


def oracle_matfun(
    a: SquareMatrix, fn: ScalarFunction, cfg: OracleConfig = DEFAULT_ORACLE_CONFIG
) -> SquareMatrix:
    """Reference F(A) for the built-in scalar function kinds."""
    if fn.kind == "exp":
        return oracle_expm(a, cfg)
    if fn.kind in ("sin", "cos"):
        plus = oracle_expm(SquareMatrix(1j * a.data), cfg)
        minus = oracle_expm(SquareMatrix(-1j * a.data), cfg)
        if fn.kind == "sin":
            return SquareMatrix((plus.data - minus.data) / 2j)
        return SquareMatrix((plus.data + minus.data) / 2.0)
    if fn.kind == "monomial":
        m = fn.param
        if m == 0:
            return SquareMatrix.identity(a.n)
        acc = a
        for _ in range(m - 1):
            acc = mat_mul(acc, a)
        return acc
    if fn.kind == "polynomial":
        return _horner_any_degree(a, fn.param)
    raise ValueError(f"no oracle path for function kind {fn.kind!r}")
