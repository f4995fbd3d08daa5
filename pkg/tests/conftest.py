"""Shared reference implementations kept independent of the paths they check."""

import itertools
from fractions import Fraction

import numpy as np

from specmat import SquareMatrix


def rel_frob(got: np.ndarray, want: np.ndarray) -> float:
    scale = max(float(np.linalg.norm(want)), np.finfo(float).tiny)
    return float(np.linalg.norm(np.asarray(got) - np.asarray(want))) / scale


def naive_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise triple-loop product."""
    n = a.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            acc = 0j
            for k in range(n):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def int_det(rows) -> int:
    """Exact integer determinant by Laplace cofactor expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * int_det(minor)
    return total


def charpoly_by_interpolation(a_int: np.ndarray) -> list:
    """Exact characteristic coefficients of an integer matrix.

    Evaluates det(lam*I - A) by cofactor expansion at the integer points
    0..n and interpolates with Fraction-exact Newton divided differences,
    returning [p1, ..., pn] as Fractions (monic leading 1 dropped).
    """
    n = a_int.shape[0]
    lams = list(range(n + 1))
    vals = []
    for lam in lams:
        rows = [
            [int(lam) * (1 if i == j else 0) - int(a_int[i, j]) for j in range(n)]
            for i in range(n)
        ]
        vals.append(Fraction(int_det(rows)))

    # Newton divided differences, exact.
    table = [vals[:]]
    for j in range(1, n + 1):
        prev = table[-1]
        table.append(
            [
                (prev[i + 1] - prev[i]) / Fraction(lams[i + j] - lams[i])
                for i in range(len(prev) - 1)
            ]
        )
    newton = [table[j][0] for j in range(n + 1)]

    # Expand sum_j newton[j] * prod_{i<j} (lam - lams[i]) into monomials.
    coeffs = [newton[n]]
    for j in range(n - 1, -1, -1):
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        nxt[0] = newton[j] - Fraction(lams[j]) * coeffs[0]
        for k in range(1, len(coeffs)):
            nxt[k] = coeffs[k - 1] - Fraction(lams[j]) * coeffs[k]
        nxt[-1] = coeffs[-1]
        coeffs = nxt
    assert coeffs[-1] == 1  # monic
    # coeffs is low-to-high; return p1..pn = high-to-low below the leading 1.
    return list(reversed(coeffs[:-1]))


def multiset_match_error(xs, ys) -> float:
    """Best max-modulus pairing error between two equal-size complex multisets."""
    xs = list(xs)
    best = np.inf
    for perm in itertools.permutations(ys):
        err = max(abs(x - y) for x, y in zip(xs, perm))
        best = min(best, err)
    return float(best)


def random_separated_points(
    rng: np.random.Generator, n: int, min_sep: float = 0.1, max_modulus: float = 2.0
) -> np.ndarray:
    """Random complex points in a disk, pairwise separated by at least min_sep."""
    while True:
        pts = (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)) * max_modulus / np.sqrt(2)
        ok = all(
            abs(pts[i] - pts[j]) >= min_sep
            for i in range(n)
            for j in range(i + 1, n)
        )
        if ok:
            return pts.astype(np.complex128)


def random_matrix(rng: np.random.Generator, n: int, scale: float = 1.0) -> SquareMatrix:
    data = scale * (rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n)))
    return SquareMatrix(data)
