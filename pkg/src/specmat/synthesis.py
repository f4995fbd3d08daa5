"""Synthesis coefficients f0..f_{n-1} and assembly of F(A).

Any entire function F of an n-by-n matrix A collapses, by the
Cayley-Hamilton reduction, to a polynomial of degree n-1 in A:

    F(A) = f0*E + f1*A + ... + f_{n-1}*A^(n-1)

where the f_l are the monomial coefficients of the polynomial interpolating
F on the spectrum of A. For pairwise-distinct eigenvalues the coefficients
come from the deflation (cofactor) formula

    f_l = (-1)^(n+1) * sum_k q_k[n-l-1] * F(alpha_k) / prod_{j!=k} (alpha_j - alpha_k)

with q_k the quotient coefficients of the characteristic polynomial deflated
at alpha_k. Repeated (or clustered) eigenvalues take the confluent route:
Newton divided differences with derivative data, expanded back to monomial
form. The two paths agree in the limit and on every distinct spectrum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .charpoly import CharacteristicPolynomial, char_poly, companion, deflate
from .numkernel import SquareMatrix, horner_matrix_poly
from .roots import (
    DEFAULT_CLUSTER_TOL,
    ClusteredSpectrum,
    EigenNode,
    cluster,
    solve_closed,
    solve_general,
)


class DerivativeUnsupportedError(ValueError):
    """The scalar function cannot supply the derivative order a confluent path needs."""


class ScalarFunction:
    """Entire scalar function F with derivative evaluation at complex points.

    Built-in kinds: ``exp``, ``sin``, ``cos``, ``monomial`` (with exponent
    parameter), ``polynomial`` (with low-to-high coefficients). A
    ``tabulated`` function supplies order-0 values only and is rejected by
    any path that needs derivatives (repeated eigenvalues).
    """

    def __init__(self, kind: str, param, rule):
        self.kind = kind
        self.param = param
        self._rule = rule

    def __repr__(self):
        if self.param is None:
            return f"ScalarFunction({self.kind})"
        return f"ScalarFunction({self.kind}, {self.param!r})"

    @property
    def supports_derivatives(self) -> bool:
        return self.kind != "tabulated"

    def __call__(self, z: complex) -> complex:
        return self.derivative(z, 0)

    def derivative(self, z: complex, order: int) -> complex:
        """Value of F^(order) at z; order 0 is plain evaluation."""
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        return self._rule(complex(z), int(order))

    @classmethod
    def exp(cls) -> "ScalarFunction":
        return cls("exp", None, lambda z, r: cmath.exp(z))

    @classmethod
    def sin(cls) -> "ScalarFunction":
        cycle = (cmath.sin, cmath.cos, lambda z: -cmath.sin(z), lambda z: -cmath.cos(z))
        return cls("sin", None, lambda z, r: cycle[r % 4](z))

    @classmethod
    def cos(cls) -> "ScalarFunction":
        cycle = (cmath.cos, lambda z: -cmath.sin(z), lambda z: -cmath.cos(z), cmath.sin)
        return cls("cos", None, lambda z, r: cycle[r % 4](z))

    @classmethod
    def monomial(cls, m: int) -> "ScalarFunction":
        m = int(m)
        if m < 0:
            raise ValueError("monomial exponent must be nonnegative")

        def rule(z, r):
            if r > m:
                return 0j
            falling = 1.0
            for i in range(r):
                falling *= m - i
            return falling * z ** (m - r)

        return cls("monomial", m, rule)

    @classmethod
    def polynomial(cls, coeffs) -> "ScalarFunction":
        c = tuple(complex(x) for x in coeffs)
        if not c:
            raise ValueError("polynomial needs at least one coefficient")

        def rule(z, r):
            d = list(c)
            for _ in range(r):
                d = [k * d[k] for k in range(1, len(d))]
                if not d:
                    return 0j
            acc = 0j
            for coef in reversed(d):
                acc = acc * z + coef
            return acc

        return cls("polynomial", c, rule)

    @classmethod
    def tabulated(cls, values: dict) -> "ScalarFunction":
        table = {complex(k): complex(v) for k, v in values.items()}

        def rule(z, r):
            if r > 0:
                raise DerivativeUnsupportedError(
                    "tabulated functions supply order-0 values only"
                )
            try:
                return table[z]
            except KeyError:
                raise DerivativeUnsupportedError(
                    f"point {z} is not tabulated"
                ) from None

        return cls("tabulated", table, rule)


def polynomial_derivative_at(coeffs, z: complex, order: int = 0) -> complex:
    """Evaluate the order-th derivative of sum_l coeffs[l] * lam^l at z."""
    d = [complex(c) for c in coeffs]
    for _ in range(order):
        d = [k * d[k] for k in range(1, len(d))]
        if not d:
            return 0j
    acc = 0j
    for c in reversed(d):
        acc = acc * complex(z) + c
    return acc


def _time_scaled(fn: ScalarFunction, t: float) -> ScalarFunction:
    """G(lam) = F(t*lam); G^(r)(lam) = t^r F^(r)(t*lam)."""
    if t == 1.0:
        return fn
    return ScalarFunction(fn.kind, fn.param, lambda z, r: (t**r) * fn.derivative(t * z, r))


def _require_distinct(values: np.ndarray, caller: str):
    n = len(values)
    for i in range(n):
        for j in range(i + 1, n):
            if values[i] == values[j]:
                raise ValueError(
                    f"{caller} needs pairwise-distinct eigenvalues; "
                    "use hermite_coefficients for repeated ones"
                )


def lagrange_coefficients(
    p: CharacteristicPolynomial, spectrum, fn: ScalarFunction
) -> np.ndarray:
    """Synthesis coefficients for pairwise-distinct eigenvalues.

    Implements the deflation formula literally: for each eigenvalue the
    characteristic polynomial is deflated to quotient coefficients
    (1, q1, ..., q_{n-1}) and the cofactor weight F(alpha_k) / prod of gaps
    is accumulated with the (-1)^(n+1) prefactor. The result is the monomial
    coefficient vector of the degree-(n-1) interpolant matching F on the
    spectrum.
    """
    alphas = np.asarray(spectrum, dtype=np.complex128)
    n = p.n
    if alphas.shape != (n,):
        raise ValueError(f"expected {n} eigenvalues, got shape {alphas.shape}")
    _require_distinct(alphas, "lagrange_coefficients")

    sign = (-1.0) ** (n + 1)
    f = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        q = deflate(p, alphas[k]).q
        denom = complex(1.0)
        for j in range(n):
            if j != k:
                denom *= alphas[j] - alphas[k]
        weight = sign * fn(alphas[k]) / denom
        for l in range(n):
            f[l] += q[n - l - 1] * weight
    return f


def divided_difference_table(nodes, fn: ScalarFunction) -> np.ndarray:
    """Newton divided differences with the confluent rule for repeated nodes.

    ``nodes`` may repeat but equal values must be adjacent. Entry [i, j] holds
    F[z_i, ..., z_{i+j}]; when z_i == z_{i+j} the entry is F^(j)(z_i) / j!,
    otherwise the usual quotient recurrence. Cells below the triangle are 0.
    """
    z = np.asarray(nodes, dtype=np.complex128)
    n = len(z)
    if n == 0:
        raise ValueError("need at least one node")
    seen = set()
    prev = None
    for v in z:
        key = complex(v)
        if key != prev and key in seen:
            raise ValueError("equal nodes must be adjacent")
        seen.add(key)
        prev = key

    table = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        fact = math.factorial(j)
        for i in range(n - j):
            if z[i] == z[i + j]:
                table[i, j] = fn.derivative(z[i], j) / fact
            else:
                table[i, j] = (table[i + 1, j - 1] - table[i, j - 1]) / (z[i + j] - z[i])
    return table


def hermite_coefficients(cs: ClusteredSpectrum, fn: ScalarFunction) -> np.ndarray:
    """Synthesis coefficients for a clustered spectrum (any multiplicities).

    Builds the Newton-form interpolant from the confluent divided-difference
    table over the eigenvalue multiset, then expands the Newton basis into
    monomial coefficients f0..f_{n-1}. Coincides with
    ``lagrange_coefficients`` when every multiplicity is 1 and with the
    Jordan-limit of the distinct formula otherwise.
    """
    if cs.max_multiplicity > 1 and not fn.supports_derivatives:
        raise DerivativeUnsupportedError(
            "repeated eigenvalues need derivative data; "
            f"{fn.kind} functions cannot supply it"
        )
    z = cs.expanded()
    n = len(z)
    d = divided_difference_table(z, fn)[0, :]

    # Expand Newton form sum_j d_j * prod_{i<j} (lam - z_i) by reverse Horner:
    # c <- c * (lam - z_j) + d_j, growing one degree per step.
    c = np.array([d[n - 1]], dtype=np.complex128)
    for j in range(n - 2, -1, -1):
        nxt = np.empty(len(c) + 1, dtype=np.complex128)
        nxt[0] = d[j] - z[j] * c[0]
        nxt[1:-1] = c[:-1] - z[j] * c[1:]
        nxt[-1] = c[-1]
        c = nxt
    return c


@dataclass(frozen=True)
class Diagnostics:
    """What the pipeline saw: clustered eigenvalues, gaps, residuals, path."""

    eigenvalues: tuple[EigenNode, ...]
    path: str  # "lagrange" | "hermite"
    residual_max: float
    min_gap: float | None  # smallest distance between distinct nodes; None if single node
    cluster_tol: float


def evaluate_matrix_function(
    a: SquareMatrix,
    fn: ScalarFunction,
    t: float = 1.0,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> tuple[SquareMatrix, np.ndarray, Diagnostics]:
    """Evaluate F(t*A) as a degree-(n-1) matrix polynomial in A.

    Pipeline: characteristic polynomial, root solve (closed forms for
    n <= 4, simultaneous iteration above), tolerance clustering, then the
    Lagrange path on a distinct spectrum or the Hermite path whenever
    clustering merged anything. The time parameter scales the interpolation
    nodes (F is sampled as F(t*alpha_k)), so one characteristic polynomial
    serves a whole t sweep. Returns (F(tA), coefficients, diagnostics).
    """
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("time parameter must be finite")

    p = char_poly(a)
    spectrum = solve_closed(p) if p.n <= 4 else solve_general(p)
    residual_max = max(abs(p(z)) for z in spectrum)
    cs = cluster(spectrum, cluster_tol)

    node_values = [node.value for node in cs.nodes]
    min_gap = None
    if len(node_values) > 1:
        min_gap = min(
            abs(node_values[i] - node_values[j])
            for i in range(len(node_values))
            for j in range(i + 1, len(node_values))
        )

    g = _time_scaled(fn, t)
    if cs.max_multiplicity > 1:
        path = "hermite"
        f = hermite_coefficients(cs, g)
    else:
        path = "lagrange"
        f = lagrange_coefficients(p, np.array(node_values), g)

    result = horner_matrix_poly(a, f)
    diag = Diagnostics(
        eigenvalues=cs.nodes,
        path=path,
        residual_max=float(residual_max),
        min_gap=None if min_gap is None else float(min_gap),
        cluster_tol=float(cluster_tol),
    )
    return result, f, diag


@dataclass(frozen=True, eq=False)
class SynthesisTrace:
    """Intermediate matrices of the modal route, for verification only.

    The production path never inverts the modal matrix; this trace exists so
    tests can check the structure it shortcuts: the modal matrix factors as
    hankel @ vandermonde, its columns are companion eigenvectors, and the
    cofactor weight vector is simultaneously the first inverse-modal column
    and the last inverse-vandermonde column.
    """

    companion: SquareMatrix
    basis_first: np.ndarray  # e1 convention (1, 0, ..., 0)^T
    basis_last: np.ndarray  # en convention (0, ..., 0, 1)^T
    vandermonde: SquareMatrix
    hankel: SquareMatrix
    modal: SquareMatrix
    diagonal: SquareMatrix
    cofactor_weights: np.ndarray


class TraceConsistencyError(RuntimeError):
    """An internal structure identity failed while building the trace."""


def build_trace(p: CharacteristicPolynomial, spectrum) -> SynthesisTrace:
    """Materialize companion, Vandermonde, Hankel, modal and diagonal matrices.

    Requires pairwise-distinct eigenvalues. Raises TraceConsistencyError if
    any of the structure identities fails at verification tolerance.
    """
    alphas = np.asarray(spectrum, dtype=np.complex128)
    n = p.n
    if alphas.shape != (n,):
        raise ValueError(f"expected {n} eigenvalues, got shape {alphas.shape}")
    _require_distinct(alphas, "build_trace")

    L = companion(p)

    Q = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        Q[i, :] = alphas**i

    # Hankel of coefficients: P[i, j] = p_{n-1-i-j} with p_0 = 1, 0 past the edge.
    P = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            k = n - 1 - i - j
            if k == 0:
                P[i, j] = 1.0
            elif k > 0:
                P[i, j] = p.p[k - 1]

    # Modal columns are the deflated quotient coefficients, bottom-up.
    U = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        q = deflate(p, alphas[k]).q
        U[:, k] = q[::-1]

    D = np.diag(alphas)

    scale = max(1.0, float(np.linalg.norm(U)))
    if np.linalg.norm(U - P @ Q) > 1e-10 * scale:
        raise TraceConsistencyError("modal matrix does not factor as hankel @ vandermonde")
    l_scale = max(1.0, float(np.linalg.norm(L.data)))
    if np.linalg.norm(L.data @ U - U @ D) > 1e-8 * l_scale:
        raise TraceConsistencyError("modal columns are not companion eigenvectors")

    sign = (-1.0) ** (n + 1)
    w = np.empty(n, dtype=np.complex128)
    for k in range(n):
        denom = complex(1.0)
        for j in range(n):
            if j != k:
                denom *= alphas[j] - alphas[k]
        w[k] = sign / denom

    e1 = np.zeros(n, dtype=np.complex128)
    e1[0] = 1.0
    en = np.zeros(n, dtype=np.complex128)
    en[-1] = 1.0
    if np.linalg.norm(U @ w - e1) > 1e-8 * scale:
        raise TraceConsistencyError("cofactor weights are not the first inverse-modal column")
    if np.linalg.norm(Q @ w - en) > 1e-8 * max(1.0, float(np.linalg.norm(Q))):
        raise TraceConsistencyError(
            "cofactor weights are not the last inverse-vandermonde column"
        )

    exp_fn = ScalarFunction.exp()
    f_modal = U @ (w * np.array([exp_fn(z) for z in alphas]))
    f_direct = lagrange_coefficients(p, alphas, exp_fn)
    if np.linalg.norm(f_modal - f_direct) > 1e-8 * max(1.0, float(np.linalg.norm(f_direct))):
        raise TraceConsistencyError("modal route disagrees with deflation coefficients")

    return SynthesisTrace(
        companion=L,
        basis_first=e1,
        basis_last=en,
        vandermonde=SquareMatrix(Q),
        hankel=SquareMatrix(P),
        modal=SquareMatrix(U),
        diagonal=SquareMatrix(D),
        cofactor_weights=w,
    )
