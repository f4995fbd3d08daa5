"""Command-line front end: evaluate, verify and benchmark matrix functions.

Subcommands:
  eval    evaluate F(tA) for a matrix document, emit a result document
  coeffs  eval restricted to the coefficient vector
  verify  run the invariant suite on one matrix, one pass/fail line each
  bench   seeded random sweep comparing the spectral path to the oracle (CSV)

Exit codes: 0 success, 2 parse/usage failure, 3 numerical failure. The
environment variable SPECMAT_CLUSTER_TOL overrides the default clustering
tolerance when --cluster-tol is not given.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from .charpoly import char_poly, poly_from_roots, power_column
from .matio import (
    MatrixFormatError,
    emit_document,
    matrix_entries,
    parse_matrix_document,
    _fmt,
)
from .numkernel import (
    SquareMatrix,
    frobenius_norm,
    horner_matrix_poly,
    mat_mul,
    mat_sub,
)
from .oracle import OracleConvergenceError, oracle_matfun
from .roots import DEFAULT_CLUSTER_TOL, RootConvergenceError, RESIDUAL_TOL, solve
from .synthesis import (
    ScalarFunction,
    TraceConsistencyError,
    build_trace,
    evaluate_matrix_function,
    polynomial_derivative_at,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERICAL = 3

CSV_HEADER = "n,trial,seed,method,err_rel,wall_ms,status"

CLUSTER_TOL_ENV = "SPECMAT_CLUSTER_TOL"


@dataclass
class JobRequest:
    input_path: str | None = None
    function: str = "exp"
    t: float = 1.0
    method: str = "spectral"
    output: str = "both"
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    seed: int = 0
    timing: bool = False


class UsageError(ValueError):
    """Bad request content that argparse cannot catch (exit 2)."""


def parse_function(spec: str) -> ScalarFunction:
    if spec == "exp":
        return ScalarFunction.exp()
    if spec == "sin":
        return ScalarFunction.sin()
    if spec == "cos":
        return ScalarFunction.cos()
    if spec.startswith("poly:"):
        body = spec[len("poly:"):]
        try:
            coeffs = [float(x) for x in body.split(",") if x != ""]
        except ValueError:
            raise UsageError(f"bad polynomial coefficients in {spec!r}") from None
        if not coeffs:
            raise UsageError("poly: needs at least one coefficient")
        return ScalarFunction.polynomial(coeffs)
    raise UsageError(f"unknown function {spec!r} (expected exp|sin|cos|poly:c0,c1,...)")


def parse_sizes(spec: str) -> list[int]:
    """Accepts 'A..B', a single integer, or a comma list."""
    try:
        if ".." in spec:
            lo, hi = spec.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        if "," in spec:
            sizes = [int(x) for x in spec.split(",")]
        else:
            sizes = [int(spec)]
    except ValueError:
        raise UsageError(f"bad sizes {spec!r} (expected e.g. 2..4)") from None
    if any(s < 1 for s in sizes):
        raise UsageError("sizes must be positive")
    return sizes


def default_cluster_tol() -> float:
    env = os.environ.get(CLUSTER_TOL_ENV)
    if env is None:
        return DEFAULT_CLUSTER_TOL
    try:
        tol = float(env)
    except ValueError:
        raise UsageError(f"{CLUSTER_TOL_ENV}={env!r} is not a number") from None
    if tol < 0 or not math.isfinite(tol):
        raise UsageError(f"{CLUSTER_TOL_ENV} must be a nonnegative number")
    return tol


def random_gap_matrix(
    rng: np.random.Generator,
    n: int,
    min_gap: float = 1e-2,
    max_frobenius: float | None = None,
    max_tries: int = 1000,
) -> SquareMatrix:
    """Random matrix, entries uniform on the complex unit square [0,1]+[0,1]i,
    rejection-resampled until the eigenvalue gaps (and optional norm cap) pass."""
    for _ in range(max_tries):
        a = SquareMatrix(rng.random((n, n)) + 1j * rng.random((n, n)))
        if max_frobenius is not None and frobenius_norm(a) > max_frobenius:
            continue
        if n == 1:
            return a
        try:
            spectrum = solve(char_poly(a))
        except RootConvergenceError:
            continue
        gap = min(
            abs(spectrum[i] - spectrum[j])
            for i in range(n)
            for j in range(i + 1, n)
        )
        if gap >= min_gap:
            return a
    raise RuntimeError(f"no admissible random matrix after {max_tries} tries")


def _relative_error(got: SquareMatrix, want: SquareMatrix) -> float:
    scale = max(frobenius_norm(want), np.finfo(float).tiny)
    return frobenius_norm(mat_sub(got, want)) / scale


def _scaled_matrix(a: SquareMatrix, t: float) -> SquareMatrix:
    return SquareMatrix(t * a.data)


def run_eval(req: JobRequest, matrix: SquareMatrix) -> dict:
    """Evaluate one job; returns the result document as a dict."""
    fn = parse_function(req.function)
    if req.method == "oracle" and req.output in ("coeffs", "both"):
        raise UsageError("coefficient output needs the spectral method")

    doc: dict = {"n": matrix.n}
    spectral = None
    diag = None
    if req.method in ("spectral", "both"):
        spectral, coeffs, diag = evaluate_matrix_function(
            matrix, fn, t=req.t, cluster_tol=req.cluster_tol
        )
    reference = None
    if req.method in ("oracle", "both"):
        reference = oracle_matfun(_scaled_matrix(matrix, req.t), fn)

    shown = spectral if spectral is not None else reference
    if req.output in ("matrix", "both"):
        doc["entries"] = matrix_entries(shown)
    if req.output in ("coeffs", "both") and spectral is not None:
        doc["coefficients"] = [[c.real, c.imag] for c in coeffs]
    if diag is not None:
        doc["eigenvalues"] = [
            {"value": [node.value.real, node.value.imag], "multiplicity": node.multiplicity}
            for node in diag.eigenvalues
        ]
        doc["path"] = diag.path
        doc["residual_max"] = diag.residual_max
    if spectral is not None and reference is not None:
        doc["disagreement"] = _relative_error(spectral, reference)
    return doc


def run_bench(req: JobRequest, sizes: list[int], trials: int) -> str:
    """Seeded sweep over sizes x trials; returns the CSV text.

    Rows are ordered by (n, trial). The wall_ms column is filled only when
    timing was requested, since measured time would break the byte-identical
    reproducibility contract of seeded runs.
    """
    fn = parse_function(req.function)
    lines = [CSV_HEADER]
    for n in sizes:
        for trial in range(trials):
            rng = np.random.default_rng([req.seed, n, trial])
            err_text = ""
            wall_text = ""
            status = "ok"
            try:
                a = random_gap_matrix(rng, n)
                # Time the requested method; "both" times the pair.
                start = time.perf_counter()
                if req.method == "oracle":
                    reference = oracle_matfun(_scaled_matrix(a, req.t), fn)
                    elapsed = time.perf_counter() - start
                    spectral, _, _ = evaluate_matrix_function(
                        a, fn, t=req.t, cluster_tol=req.cluster_tol
                    )
                else:
                    spectral, _, _ = evaluate_matrix_function(
                        a, fn, t=req.t, cluster_tol=req.cluster_tol
                    )
                    if req.method == "spectral":
                        elapsed = time.perf_counter() - start
                        reference = oracle_matfun(_scaled_matrix(a, req.t), fn)
                    else:
                        reference = oracle_matfun(_scaled_matrix(a, req.t), fn)
                        elapsed = time.perf_counter() - start
                err_text = _fmt(_relative_error(spectral, reference))
                if req.timing:
                    wall_text = f"{elapsed * 1e3:.3f}"
            except (RootConvergenceError, OracleConvergenceError, RuntimeError) as exc:
                status = type(exc).__name__
            lines.append(
                f"{n},{trial},{req.seed},{req.method},{err_text},{wall_text},{status}"
            )
    return "\n".join(lines) + "\n"


def _verify_lines(req: JobRequest, a: SquareMatrix) -> tuple[list[str], bool]:
    fn = parse_function(req.function)
    lines = []
    all_ok = True

    def report(name: str, ok: bool | None, detail: str = ""):
        nonlocal all_ok
        if ok is None:
            lines.append(f"SKIP {name} {detail}".rstrip())
            return
        if not ok:
            all_ok = False
        tag = "PASS" if ok else "FAIL"
        lines.append(f"{tag} {name} {detail}".rstrip())

    p = char_poly(a)
    try:
        spectrum = solve(p)
    except RootConvergenceError as exc:
        report("root-residuals", False, str(exc))
        return lines, False

    res = max(abs(p(z)) for z in spectrum)
    report("root-residuals", res <= RESIDUAL_TOL * p.coefficient_scale, f"max {res:.3e}")

    rebuilt = poly_from_roots(spectrum)
    vieta = float(np.linalg.norm(rebuilt.p - p.p)) / p.coefficient_scale
    report("vieta-reconstruction", vieta <= 1e-7, f"rel {vieta:.3e}")

    n = a.n
    powers = [SquareMatrix.identity(n)]
    for _ in range(2 * n + 2):
        powers.append(mat_mul(powers[-1], a))
    worst = 0.0
    for m in range(2 * n + 3):
        rebuilt_m = horner_matrix_poly(a, power_column(p, m))
        direct = powers[m]
        scale = max(frobenius_norm(direct), 1.0)
        worst = max(worst, frobenius_norm(mat_sub(rebuilt_m, direct)) / scale)
    report("power-reduction", worst <= 1e-9, f"rel {worst:.3e}")

    result, coeffs, diag = evaluate_matrix_function(a, fn, t=req.t, cluster_tol=req.cluster_tol)
    interp_ok = True
    interp_worst = 0.0
    for node in diag.eigenvalues:
        for r in range(node.multiplicity):
            want = (req.t**r) * fn.derivative(req.t * node.value, r)
            got = polynomial_derivative_at(coeffs, node.value, r)
            err = abs(got - want) / max(1.0, abs(want))
            interp_worst = max(interp_worst, err)
            if err > 1e-8:
                interp_ok = False
    report("interpolation", interp_ok, f"rel {interp_worst:.3e}")

    reference = oracle_matfun(_scaled_matrix(a, req.t), fn)
    err = _relative_error(result, reference)
    report("oracle-agreement", err <= 1e-8, f"rel {err:.3e}")

    exp_fn = ScalarFunction.exp()
    fwd, _, _ = evaluate_matrix_function(a, exp_fn, t=req.t, cluster_tol=req.cluster_tol)
    bwd, _, _ = evaluate_matrix_function(a, exp_fn, t=-req.t, cluster_tol=req.cluster_tol)
    prod = mat_mul(fwd, bwd)
    cond = frobenius_norm(fwd) * frobenius_norm(bwd)
    group = frobenius_norm(mat_sub(prod, SquareMatrix.identity(n)))
    report("group-identity", group <= 1e-9 * max(1.0, cond), f"abs {group:.3e}")

    det = (-1.0) ** n * char_poly(fwd).p[-1]
    want_det = np.exp(req.t * np.trace(a.data))
    det_err = abs(det - want_det) / max(1.0, abs(want_det))
    report("determinant-identity", det_err <= 1e-8, f"rel {det_err:.3e}")

    if diag.path == "lagrange":
        try:
            build_trace(p, spectrum)
            report("modal-structure", True)
        except TraceConsistencyError as exc:
            report("modal-structure", False, str(exc))
    else:
        report("modal-structure", None, "(clustered spectrum)")

    return lines, all_ok


def run_verify(req: JobRequest, a: SquareMatrix) -> tuple[str, bool]:
    lines, ok = _verify_lines(req, a)
    return "\n".join(lines) + "\n", ok


def _read_matrix(path: str) -> SquareMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from None
    return parse_matrix_document(text)


def _write_output(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _add_common_flags(sub, *, with_method=True):
    sub.add_argument("--input", required=True, help="matrix document path")
    sub.add_argument("--fn", default="exp", help="exp|sin|cos|poly:c0,c1,...")
    sub.add_argument("--t", type=float, default=1.0, help="time parameter (default 1.0)")
    if with_method:
        sub.add_argument(
            "--method", choices=["spectral", "oracle", "both"], default="spectral"
        )
    sub.add_argument(
        "--cluster-tol",
        type=float,
        default=None,
        help=f"eigenvalue clustering tolerance (default {DEFAULT_CLUSTER_TOL}, "
        f"or ${CLUSTER_TOL_ENV})",
    )
    sub.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specmat",
        description="Matrix functions via characteristic-polynomial spectral synthesis.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate F(tA) for one matrix")
    _add_common_flags(p_eval)
    p_eval.add_argument("--output", choices=["coeffs", "matrix", "both"], default="both")

    p_coeffs = subs.add_parser("coeffs", help="eval emitting only the coefficients")
    _add_common_flags(p_coeffs)

    p_verify = subs.add_parser("verify", help="run the invariant suite on one matrix")
    _add_common_flags(p_verify, with_method=False)

    p_bench = subs.add_parser("bench", help="seeded spectral-vs-oracle sweep (CSV)")
    p_bench.add_argument("--sizes", default="2..4", help="e.g. 2..6 or 3 or 2,4")
    p_bench.add_argument("--trials", type=int, default=5)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--fn", default="exp")
    p_bench.add_argument("--t", type=float, default=1.0)
    p_bench.add_argument(
        "--method", choices=["spectral", "oracle", "both"], default="spectral"
    )
    p_bench.add_argument("--cluster-tol", type=float, default=None)
    p_bench.add_argument(
        "--timing",
        action="store_true",
        help="fill wall_ms with measured time (breaks byte-identical reruns)",
    )
    p_bench.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cluster_tol = args.cluster_tol if args.cluster_tol is not None else default_cluster_tol()
        if cluster_tol < 0 or not math.isfinite(cluster_tol):
            raise UsageError("--cluster-tol must be a nonnegative number")

        if args.command == "bench":
            req = JobRequest(
                function=args.fn,
                t=args.t,
                method=args.method,
                cluster_tol=cluster_tol,
                seed=args.seed,
                timing=args.timing,
            )
            if args.seed < 0:
                raise UsageError("--seed must be nonnegative")
            if args.trials < 0:
                raise UsageError("--trials must be nonnegative")
            csv_text = run_bench(req, parse_sizes(args.sizes), args.trials)
            _write_output(csv_text, args.out)
            return EXIT_OK

        matrix = _read_matrix(args.input)
        if args.command == "verify":
            req = JobRequest(
                input_path=args.input, function=args.fn, t=args.t, cluster_tol=cluster_tol
            )
            text, ok = run_verify(req, matrix)
            _write_output(text, args.out)
            return EXIT_OK if ok else EXIT_NUMERICAL

        output = "coeffs" if args.command == "coeffs" else args.output
        req = JobRequest(
            input_path=args.input,
            function=args.fn,
            t=args.t,
            method=args.method,
            output=output,
            cluster_tol=cluster_tol,
        )
        doc = run_eval(req, matrix)
        _write_output(emit_document(doc), args.out)
        return EXIT_OK
    except (MatrixFormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (RootConvergenceError, OracleConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        if isinstance(exc, RootConvergenceError):
            worst = float(np.max(exc.residuals))
            print(f"best iterate residual: {worst:.6e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
