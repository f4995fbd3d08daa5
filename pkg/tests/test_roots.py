import numpy as np
import pytest

from specmat import (
    CharacteristicPolynomial,
    RootConvergenceError,
    cluster,
    poly_from_roots,
    solve_closed,
    solve_general,
)

from conftest import multiset_match_error, random_separated_points


def test_quadratic_factored():
    p = CharacteristicPolynomial(2, np.array([-3.0, 2.0], dtype=complex))
    assert multiset_match_error(solve_closed(p), [1.0, 2.0]) < 1e-14


def test_cubic_known_roots_residual():
    p = CharacteristicPolynomial(3, np.array([-6.0, 11.0, -6.0], dtype=complex))
    roots = solve_closed(p)
    assert multiset_match_error(roots, [1.0, 2.0, 3.0]) < 1e-12
    for z in roots:
        assert abs(p(z)) <= 1e-12


def test_quartic_factored():
    # (lam^2 + 1)(lam^2 - 4)
    p = CharacteristicPolynomial(4, np.array([0.0, -3.0, 0.0, -4.0], dtype=complex))
    assert multiset_match_error(solve_closed(p), [1j, -1j, 2.0, -2.0]) < 1e-12


def test_closed_rejects_degree_five():
    p = CharacteristicPolynomial(5, np.zeros(5, dtype=complex))
    with pytest.raises(ValueError, match="solve_general"):
        solve_closed(p)


def test_linear():
    p = CharacteristicPolynomial(1, np.array([2.5 - 1j]))
    assert solve_closed(p)[0] == -2.5 + 1j


def test_quintic_roots_of_unity():
    p = CharacteristicPolynomial(5, np.array([0, 0, 0, 0, -1], dtype=complex))
    roots = solve_general(p)
    want = [np.exp(2j * np.pi * k / 5) for k in range(5)]
    assert multiset_match_error(roots, want) < 1e-10


def test_sextic_integer_roots():
    p = poly_from_roots([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    roots = solve_general(p)
    assert multiset_match_error(roots, [1, 2, 3, 4, 5, 6]) < 1e-8


def test_double_root_cluster_behavior():
    # (lam - 1)^2 (lam - 2): the pair near 1 may split, but only gently.
    p = poly_from_roots([1.0, 1.0, 2.0])
    roots = solve_general(p)
    near_one = sorted(roots, key=lambda z: abs(z - 1.0))[:2]
    assert abs(near_one[0] - near_one[1]) < 1e-6
    assert all(abs(z - 1.0) < 1e-6 for z in near_one)
    assert any(abs(z - 2.0) < 1e-8 for z in roots)


def test_residual_invariant_random():
    rng = np.random.default_rng(17)
    for n in (2, 3, 4, 5, 6):
        coeffs = rng.uniform(-2, 2, n) + 1j * rng.uniform(-2, 2, n)
        p = CharacteristicPolynomial(n, coeffs)
        roots = solve_general(p) if n > 4 else solve_closed(p)
        bound = 1e-8 * max(1.0, float(np.max(np.abs(coeffs))))
        assert all(abs(p(z)) <= bound for z in roots)


def test_closed_vs_general_agreement():
    rng = np.random.default_rng(23)
    for n in (3, 4):
        for _ in range(10):
            pts = random_separated_points(rng, n, min_sep=0.1, max_modulus=2.0)
            p = poly_from_roots(pts)
            a = solve_closed(p)
            b = solve_general(p)
            assert multiset_match_error(a, b) < 1e-9


def test_vieta_consistency():
    rng = np.random.default_rng(29)
    for n in (2, 3, 4, 5):
        pts = random_separated_points(rng, n, min_sep=0.1, max_modulus=3.0)
        p = poly_from_roots(pts)
        solver = solve_closed if n <= 4 else solve_general
        rebuilt = poly_from_roots(solver(p))
        scale = max(1.0, float(np.max(np.abs(p.p))))
        assert np.max(np.abs(rebuilt.p - p.p)) <= 1e-7 * scale


def test_nonconvergence_carries_best_iterate():
    # Coefficients this large overflow the polynomial evaluation at the
    # start radius, so no iterate can meet the residual bound.
    p = CharacteristicPolynomial(5, np.array([0, 0, 0, 0, 1e200], dtype=complex))
    with pytest.raises(RootConvergenceError) as info:
        solve_general(p)
    assert info.value.best_roots.shape == (5,)
    assert info.value.residuals.shape == (5,)


def test_cluster_merges_close_pair():
    s = np.array([1.0, 1.0 + 1e-12, 2.0], dtype=complex)
    cs = cluster(s, 1e-8)
    assert [node.multiplicity for node in cs.nodes] == [2, 1]
    assert abs(cs.nodes[0].value - 1.0) < 1e-12
    assert cs.nodes[1].value == 2.0


def test_cluster_keeps_separated_points():
    s = np.array([1.0, 2.0, 3.0], dtype=complex)
    cs = cluster(s, 1e-8)
    assert [node.multiplicity for node in cs.nodes] == [1, 1, 1]
    assert [node.value for node in cs.nodes] == [1.0, 2.0, 3.0]


def test_cluster_collapses_exact_triple():
    alpha = 0.3 - 0.8j
    cs = cluster(np.array([alpha, alpha, alpha]), 0.0)
    assert cs.nodes == (type(cs.nodes[0])(alpha, 3),)


def test_cluster_idempotent():
    rng = np.random.default_rng(41)
    s = np.concatenate(
        [rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4), [0.5 + 0.5j, 0.5 + 0.5j]]
    )
    tol = 1e-6
    once = cluster(s, tol)
    twice = cluster(once.expanded(), tol)
    assert once.nodes == twice.nodes


def test_cluster_rejects_negative_tolerance():
    with pytest.raises(ValueError, match="nonnegative"):
        cluster(np.array([1.0 + 0j]), -1.0)
