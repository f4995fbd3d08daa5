"""Characteristic polynomials, companion matrices, deflation and power reduction.

The monic convention used throughout: a degree-n polynomial is
lam^n + p[0]*lam^(n-1) + ... + p[n-2]*lam + p[n-1], so ``p[0]`` is minus the
trace and ``p[n-1]`` is (-1)^n times the determinant of the source matrix.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .numkernel import SquareMatrix

# Faddeev-LeVerrier loses accuracy as the recurrence amplifies rounding; the
# library targets desk-scale n and warns past this point.
FADDEEV_STABLE_LIMIT = 12


@dataclass(frozen=True, eq=False)
class CharacteristicPolynomial:
    """Monic polynomial of degree ``n`` with coefficients ``p`` (p1..pn)."""

    n: int
    p: np.ndarray

    def __post_init__(self):
        arr = np.array(self.p, dtype=np.complex128)
        if arr.shape != (self.n,):
            raise ValueError(f"expected {self.n} coefficients, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("polynomial coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)

    def __call__(self, z: complex) -> complex:
        """Evaluate the monic polynomial at ``z`` by Horner's scheme."""
        acc = complex(1.0)
        for c in self.p:
            acc = acc * z + c
        return acc

    def derivative_at(self, z: complex) -> complex:
        """Evaluate the first derivative at ``z``."""
        acc = complex(1.0)
        dacc = complex(0.0)
        for c in self.p:
            dacc = dacc * z + acc
            acc = acc * z + c
        return dacc

    @property
    def coefficient_scale(self) -> float:
        """max(1, max |p_j|), the scale used by residual tolerances."""
        return max(1.0, float(np.max(np.abs(self.p))))


@dataclass(frozen=True, eq=False)
class DeflatedCoefficients:
    """Quotient of a monic polynomial by (lam - node), q[0] == 1.

    When ``node`` is the eigenvalue alpha_k of the parent polynomial, q[j]
    equals the parent coefficient p_j with every term containing alpha_k
    removed, which is also the j-th entry (from the bottom) of the companion
    matrix eigenvector at alpha_k.
    """

    node: complex
    q: np.ndarray

    def __post_init__(self):
        arr = np.array(self.q, dtype=np.complex128)
        arr.setflags(write=False)
        object.__setattr__(self, "q", arr)
        object.__setattr__(self, "node", complex(self.node))


def char_poly(a: SquareMatrix) -> CharacteristicPolynomial:
    """Coefficients of det(lam*E - A) via the Faddeev-LeVerrier recurrence."""
    n = a.n
    if n > FADDEEV_STABLE_LIMIT:
        warnings.warn(
            f"characteristic polynomial for n={n} > {FADDEEV_STABLE_LIMIT}: "
            "the coefficient recurrence is numerically unstable at this size",
            RuntimeWarning,
            stacklevel=2,
        )
    A = a.data
    eye = np.eye(n, dtype=np.complex128)
    p = np.zeros(n, dtype=np.complex128)
    M = A.copy()
    p[0] = -np.trace(M)
    for k in range(2, n + 1):
        M = A @ (M + p[k - 2] * eye)
        p[k - 1] = -np.trace(M) / k
    return CharacteristicPolynomial(n, p)


def companion(p: CharacteristicPolynomial) -> SquareMatrix:
    """Companion matrix: unit subdiagonal, last column (-pn, ..., -p1)^T."""
    n = p.n
    L = np.zeros((n, n), dtype=np.complex128)
    for i in range(1, n):
        L[i, i - 1] = 1.0
    L[:, n - 1] = -p.p[::-1]
    return SquareMatrix(L)


def deflate(p: CharacteristicPolynomial, node: complex) -> DeflatedCoefficients:
    """Synthetic division of the monic polynomial by (lam - node).

    ``node`` is expected to be (approximately) a root; accuracy of the
    quotient is policed by the reconstruction invariant, not checked here.
    """
    node = complex(node)
    q = np.empty(p.n, dtype=np.complex128)
    q[0] = 1.0
    for j in range(1, p.n):
        q[j] = p.p[j - 1] + node * q[j - 1]
    return DeflatedCoefficients(node, q)


def poly_from_roots(roots) -> CharacteristicPolynomial:
    """Expand prod (lam - alpha_j) into monic coefficients."""
    alphas = np.asarray(roots, dtype=np.complex128)
    coeffs = np.array([1.0], dtype=np.complex128)
    for alpha in alphas:
        nxt = np.zeros(len(coeffs) + 1, dtype=np.complex128)
        nxt[:-1] = coeffs
        nxt[1:] -= alpha * coeffs
        coeffs = nxt
    return CharacteristicPolynomial(len(alphas), coeffs[1:])


def power_column(p: CharacteristicPolynomial, m: int) -> np.ndarray:
    """First column of the m-th companion-matrix power.

    Returns the coordinates c with A^m = sum_l c[l] * A^l for any matrix A
    whose characteristic polynomial is ``p``. Computed by applying the
    companion recurrence m times to the first basis vector, never forming
    the matrix power.
    """
    if m < 0:
        raise ValueError("power must be nonnegative")
    n = p.n
    c = np.zeros(n, dtype=np.complex128)
    c[0] = 1.0
    for _ in range(m):
        top = c[n - 1]
        nxt = np.empty(n, dtype=np.complex128)
        nxt[0] = -p.p[n - 1] * top
        for i in range(1, n):
            nxt[i] = c[i - 1] - p.p[n - 1 - i] * top
        c = nxt
    return c
