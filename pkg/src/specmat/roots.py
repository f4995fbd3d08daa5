"""Roots of the characteristic polynomial and multiplicity clustering.

Degrees 1-4 are solved in closed form (quadratic formula, Cardano, Ferrari),
always through principal complex square/cube roots with no real-case special
paths. Degree 5 and up use Aberth-Ehrlich simultaneous iteration. Returned
spectra are plain complex arrays; ``cluster`` groups near-coincident roots
into a multiplicity-tagged spectrum for the confluent synthesis path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .charpoly import CharacteristicPolynomial

# Residual acceptance for returned roots: |p(root)| <= RESIDUAL_TOL * coefficient_scale.
RESIDUAL_TOL = 1e-8

# Default clustering tolerance, about sqrt(machine epsilon): below this gap the
# distinct-root formula has lost half its digits and the confluent path wins.
DEFAULT_CLUSTER_TOL = 1e-8

_ABERTH_MAX_SWEEPS = 200
_ABERTH_CORRECTION_TOL = 1e-13
_GOLDEN_FRACTION = (math.sqrt(5.0) - 1.0) / 2.0


class RootConvergenceError(RuntimeError):
    """Simultaneous iteration failed the residual acceptance bound.

    Carries the best iterate seen (lowest worst-case residual) and the
    residuals of that iterate.
    """

    def __init__(self, message: str, best_roots: np.ndarray, residuals: np.ndarray):
        super().__init__(message)
        self.best_roots = best_roots
        self.residuals = residuals


@dataclass(frozen=True)
class EigenNode:
    """One clustered eigenvalue with its multiplicity."""

    value: complex
    multiplicity: int


@dataclass(frozen=True)
class ClusteredSpectrum:
    """Eigenvalues after tolerance clustering; multiplicities sum to n."""

    nodes: tuple[EigenNode, ...]

    @property
    def n(self) -> int:
        return sum(node.multiplicity for node in self.nodes)

    @property
    def max_multiplicity(self) -> int:
        return max(node.multiplicity for node in self.nodes)

    def expanded(self) -> np.ndarray:
        """The multiset of eigenvalues with repetition, equal values adjacent."""
        out = []
        for node in self.nodes:
            out.extend([node.value] * node.multiplicity)
        return np.array(out, dtype=np.complex128)


def _residuals(p: CharacteristicPolynomial, roots: np.ndarray) -> np.ndarray:
    return np.array([abs(p(z)) for z in roots])


def _accept(p: CharacteristicPolynomial, roots: np.ndarray) -> np.ndarray:
    res = _residuals(p, roots)
    bound = RESIDUAL_TOL * p.coefficient_scale
    if np.max(res) > bound:
        raise RootConvergenceError(
            f"root residual {np.max(res):.3e} exceeds acceptance bound {bound:.3e}",
            roots,
            res,
        )
    return roots


def _solve_quadratic(b: complex, c: complex) -> tuple[complex, complex]:
    """Roots of z^2 + b z + c with the cancellation-safe branch choice."""
    sq = cmath.sqrt(b * b - 4.0 * c)
    if (b.conjugate() * sq).real < 0.0:
        sq = -sq
    t = -(b + sq) / 2.0
    if t == 0:
        return 0j, 0j
    return t, c / t


def _principal_cbrt(z: complex) -> complex:
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z) / 3.0)


def _solve_cubic(a: complex, b: complex, c: complex) -> tuple[complex, complex, complex]:
    """Roots of z^3 + a z^2 + b z + c by Cardano's depressed-cubic substitution."""
    shift = a / 3.0
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    s = cmath.sqrt(disc)
    # Pick the larger-modulus branch of u^3 to dodge cancellation.
    u3_plus = -q / 2.0 + s
    u3_minus = -q / 2.0 - s
    u3 = u3_plus if abs(u3_plus) >= abs(u3_minus) else u3_minus
    if u3 == 0:
        t = _principal_cbrt(-q)
        return t - shift, t - shift, t - shift
    u = _principal_cbrt(u3)
    v = -p / (3.0 * u)
    omega = complex(-0.5, math.sqrt(3.0) / 2.0)
    roots = []
    for k in range(3):
        w = omega**k
        roots.append(u * w + v / w - shift)
    return roots[0], roots[1], roots[2]


def _solve_quartic(a: complex, b: complex, c: complex, d: complex):
    """Roots of z^4 + a z^3 + b z^2 + c z + d via Ferrari's resolvent cubic."""
    shift = a / 4.0
    p = b - 3.0 * a * a / 8.0
    q = c - a * b / 2.0 + a**3 / 8.0
    r = d - a * c / 4.0 + a * a * b / 16.0 - 3.0 * a**4 / 256.0

    if q == 0:
        # Biquadratic: y^4 + p y^2 + r = 0.
        z1, z2 = _solve_quadratic(p, r)
        y1 = cmath.sqrt(z1)
        y2 = cmath.sqrt(z2)
        ys = (y1, -y1, y2, -y2)
        return tuple(y - shift for y in ys)

    # Resolvent: 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0 (monic form below).
    m_roots = _solve_cubic(p, p * p / 4.0 - r, -q * q / 8.0)
    m = max(m_roots, key=abs)
    if m == 0:
        # Underflowed q^2; numerically biquadratic.
        z1, z2 = _solve_quadratic(p, r)
        y1 = cmath.sqrt(z1)
        y2 = cmath.sqrt(z2)
        ys = (y1, -y1, y2, -y2)
        return tuple(y - shift for y in ys)
    s2m = cmath.sqrt(2.0 * m)
    half = p / 2.0 + m
    bias = q / (2.0 * s2m)
    ya, yb = _solve_quadratic(-s2m, half + bias)
    yc, yd = _solve_quadratic(s2m, half - bias)
    return ya - shift, yb - shift, yc - shift, yd - shift


def solve_closed(p: CharacteristicPolynomial) -> np.ndarray:
    """All roots of a degree 1..4 monic polynomial via closed-form radicals."""
    if p.n > 4:
        raise ValueError(
            f"closed forms stop at degree 4 (got {p.n}); use solve_general"
        )
    c = p.p
    if p.n == 1:
        roots = np.array([-c[0]])
    elif p.n == 2:
        roots = np.array(_solve_quadratic(c[0], c[1]))
    elif p.n == 3:
        roots = np.array(_solve_cubic(c[0], c[1], c[2]))
    else:
        roots = np.array(_solve_quartic(c[0], c[1], c[2], c[3]))
    return _accept(p, roots.astype(np.complex128))


def solve_general(p: CharacteristicPolynomial) -> np.ndarray:
    """All roots by Aberth-Ehrlich simultaneous iteration.

    Starts on a circle of radius 1 + max|p_j| with a golden-ratio angular
    offset (irrational, so the start never aligns with axes or roots of
    unity). Sweeps run until every correction drops below
    1e-13 * (1 + |root|) or the sweep cap; the final iterate must pass the
    residual acceptance bound, otherwise RootConvergenceError carries the
    best iterate seen.
    """
    n = p.n
    if n == 1:
        return _accept(p, np.array([-p.p[0]], dtype=np.complex128))

    radius = 1.0 + float(np.max(np.abs(p.p)))
    angles = 2.0 * np.pi * (np.arange(n) + _GOLDEN_FRACTION) / n
    z = radius * np.exp(1j * angles)

    best = z.copy()
    best_worst_res = np.inf
    # Overflow or 0/0 during a sweep only spoils that iterate; acceptance is
    # decided by the residual bound at the end, so silence numpy here.
    with np.errstate(all="ignore"):
        for _ in range(_ABERTH_MAX_SWEEPS):
            pv = np.empty(n, dtype=np.complex128)
            dv = np.empty(n, dtype=np.complex128)
            for k in range(n):
                pv[k] = p(z[k])
                dv[k] = p.derivative_at(z[k])

            worst = float(np.max(np.abs(pv)))
            if worst < best_worst_res:
                best_worst_res = worst
                best = z.copy()

            corr = np.zeros(n, dtype=np.complex128)
            for k in range(n):
                if pv[k] == 0:
                    continue
                if dv[k] == 0:
                    # Flat spot: nudge off it proportionally to the scale.
                    corr[k] = radius * 1e-3
                    continue
                newton = pv[k] / dv[k]
                repulsion = 0j
                for j in range(n):
                    if j != k:
                        diff = z[k] - z[j]
                        if diff != 0:
                            repulsion += 1.0 / diff
                denom = 1.0 - newton * repulsion
                corr[k] = newton if denom == 0 else newton / denom
            z = z - corr
            if np.all(np.abs(corr) <= _ABERTH_CORRECTION_TOL * (1.0 + np.abs(z))):
                break

    # Multiple roots stall the correction criterion yet still satisfy the
    # residual bound; acceptance is by residual, not by correction size.
    res = _residuals(p, z)
    bound = RESIDUAL_TOL * p.coefficient_scale
    if np.max(res) <= bound:
        return z
    best_res = _residuals(p, best)
    if np.max(best_res) <= bound:
        return best
    raise RootConvergenceError(
        f"Aberth-Ehrlich did not reach residual bound {bound:.3e} "
        f"after {_ABERTH_MAX_SWEEPS} sweeps (best {np.max(best_res):.3e})",
        best,
        best_res,
    )


def solve(p: CharacteristicPolynomial) -> np.ndarray:
    """Dispatch: closed forms for degree <= 4, simultaneous iteration above."""
    return solve_closed(p) if p.n <= 4 else solve_general(p)


def cluster(spectrum, tol: float) -> ClusteredSpectrum:
    """Single-linkage grouping of roots closer than tol * max(1, max|root|).

    Each cluster is replaced by its arithmetic mean (the second-order-accurate
    estimate of a defective eigenvalue) with multiplicity equal to the cluster
    size. Nodes keep the first-occurrence order of the input.
    """
    if tol < 0:
        raise ValueError("clustering tolerance must be nonnegative")
    values = np.asarray(spectrum, dtype=np.complex128)
    n = len(values)
    if n == 0:
        raise ValueError("empty spectrum")
    link = tol * max(1.0, float(np.max(np.abs(values))))

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= link:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    order: list[int] = []
    for i in range(n):
        r = find(i)
        if r not in groups:
            groups[r] = []
            order.append(r)
        groups[r].append(i)

    nodes = []
    for r in order:
        members = groups[r]
        # Anchored mean: exact when the members are exactly equal.
        anchor = values[members[0]]
        mean = complex(anchor + np.mean(values[members] - anchor))
        nodes.append(EigenNode(mean, len(members)))
    return ClusteredSpectrum(tuple(nodes))
