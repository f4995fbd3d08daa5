"""Dense complex square matrices and the handful of operations the method needs.

Scalars are plain Python ``complex`` / numpy ``complex128`` everywhere; the
only custom container is :class:`SquareMatrix`, an immutable validated wrapper
around a dense ``(n, n)`` complex array. All operations are pure functions and
safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """Immutable dense n-by-n complex matrix.

    Non-finite entries (NaN or infinite real/imaginary parts) are rejected at
    construction instead of being propagated silently.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square 2-D array, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("matrix dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def zeros(cls, n: int) -> "SquareMatrix":
        return cls(np.zeros((n, n), dtype=np.complex128))

    def __repr__(self):
        return f"SquareMatrix(n={self.n})"


def _check_same_dimension(a: SquareMatrix, b: SquareMatrix):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def mat_mul(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """Matrix product a @ b."""
    _check_same_dimension(a, b)
    return SquareMatrix(a.data @ b.data)


def mat_add(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    _check_same_dimension(a, b)
    return SquareMatrix(a.data + b.data)


def mat_sub(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    _check_same_dimension(a, b)
    return SquareMatrix(a.data - b.data)


def mat_scale(a: SquareMatrix, s: complex) -> SquareMatrix:
    return SquareMatrix(a.data * complex(s))


def frobenius_norm(a: SquareMatrix) -> float:
    """Square root of the sum of squared entry moduli."""
    return float(np.linalg.norm(a.data))


def horner_matrix_poly(a: SquareMatrix, coeffs) -> SquareMatrix:
    """Evaluate f0*E + f1*A + ... + f_{n-1}*A^(n-1) by Horner's scheme.

    ``coeffs`` must hold exactly ``a.n`` values f0..f_{n-1}; the scheme uses
    n-1 matrix multiplications.
    """
    f = np.asarray(coeffs, dtype=np.complex128)
    if f.shape != (a.n,):
        raise ValueError(f"expected {a.n} coefficients, got shape {f.shape}")
    eye = np.eye(a.n, dtype=np.complex128)
    acc = f[-1] * eye
    for c in f[-2::-1]:
        acc = acc @ a.data + c * eye
    return SquareMatrix(acc)
