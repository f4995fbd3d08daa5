import numpy as np
import pytest

from specmat import (
    CharacteristicPolynomial,
    SquareMatrix,
    char_poly,
    companion,
    deflate,
    horner_matrix_poly,
    mat_mul,
    poly_from_roots,
    power_column,
)

from conftest import charpoly_by_interpolation, rel_frob


def test_diagonal_123():
    a = SquareMatrix(np.diag([1.0, 2.0, 3.0]).astype(complex))
    p = char_poly(a)
    assert np.allclose(p.p, [-6, 11, -6], atol=1e-12)


def test_identity_2():
    p = char_poly(SquareMatrix.identity(2))
    assert np.allclose(p.p, [-2, 1], atol=1e-14)


def test_random_integer_4x4_matches_interpolated_determinant():
    rng = np.random.default_rng(4040)
    for _ in range(5):
        a_int = rng.integers(-4, 5, size=(4, 4))
        p = char_poly(SquareMatrix(a_int.astype(complex)))
        exact = charpoly_by_interpolation(a_int)
        scale = max(1.0, max(abs(float(c)) for c in exact))
        for got, want in zip(p.p, exact):
            assert abs(got - complex(float(want))) <= 1e-10 * scale


def test_companion_layout_n2():
    p = CharacteristicPolynomial(2, np.array([0.5 + 1j, -2.0]))
    L = companion(p).data
    assert np.array_equal(L, np.array([[0, 2.0], [1, -0.5 - 1j]]))


def test_companion_shift_is_nilpotent():
    n = 5
    p = CharacteristicPolynomial(n, np.zeros(n, dtype=complex))
    L = companion(p)
    power = SquareMatrix.identity(n)
    for _ in range(n):
        power = mat_mul(power, L)
    assert np.array_equal(power.data, np.zeros((n, n)))


def test_companion_roundtrip_random():
    rng = np.random.default_rng(11)
    for n in range(1, 7):
        coeffs = (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)) * 2 / np.sqrt(2)
        p = CharacteristicPolynomial(n, coeffs)
        back = char_poly(companion(p))
        scale = max(1.0, float(np.max(np.abs(coeffs))))
        assert np.max(np.abs(back.p - p.p)) <= 1e-10 * scale


def test_deflate_quadratic():
    alpha, beta = 1.3 - 0.2j, -0.7 + 1.1j
    p = CharacteristicPolynomial(2, np.array([-(alpha + beta), alpha * beta]))
    d = deflate(p, beta)
    assert d.q[0] == 1
    assert abs(d.q[1] - (-alpha)) < 1e-14


def test_deflate_cubic_integer():
    p = CharacteristicPolynomial(3, np.array([-6.0, 11.0, -6.0], dtype=complex))
    d = deflate(p, 3.0)
    assert np.allclose(d.q, [1, -3, 2], atol=1e-12)


def test_deflate_reconstruction_random_quintic():
    rng = np.random.default_rng(55)
    for _ in range(10):
        roots = rng.uniform(-2, 2, 5) + 1j * rng.uniform(-2, 2, 5)
        p = poly_from_roots(roots)
        node = roots[rng.integers(0, 5)]
        q = deflate(p, node).q
        # (lam - node) * q should reproduce p.
        full = np.zeros(6, dtype=complex)
        full[:5] += q
        full[1:] -= node * q
        scale = max(1.0, float(np.max(np.abs(p.p))))
        assert np.max(np.abs(full[1:] - p.p)) <= 1e-10 * scale
        assert full[0] == 1


def test_power_column_below_degree():
    p = CharacteristicPolynomial(4, np.array([1.0, -2.0, 0.5, 3.0], dtype=complex))
    for m in range(4):
        want = np.zeros(4, dtype=complex)
        want[m] = 1
        assert np.array_equal(power_column(p, m), want)


def test_power_column_at_degree():
    p = CharacteristicPolynomial(3, np.array([2.0, -1.0, 5.0], dtype=complex))
    assert np.array_equal(power_column(p, 3), [-5.0, 1.0, -2.0])


def test_power_column_reconstructs_high_power():
    rng = np.random.default_rng(21)
    a_int = rng.integers(-3, 4, size=(3, 3)).astype(complex)
    a = SquareMatrix(a_int)
    p = char_poly(a)
    m = 6
    direct = np.linalg.matrix_power(a.data, m)
    rebuilt = horner_matrix_poly(a, power_column(p, m)).data
    assert rel_frob(rebuilt, direct) < 1e-9


def test_fundamental_lemma_random_integers():
    rng = np.random.default_rng(9)
    for n in (2, 3, 4):
        for _ in range(8):
            a = SquareMatrix(rng.integers(-3, 4, size=(n, n)).astype(complex))
            p = char_poly(a)
            for m in range(2 * n + 3):
                direct = np.linalg.matrix_power(a.data, m)
                rebuilt = horner_matrix_poly(a, power_column(p, m)).data
                scale = max(1.0, float(np.linalg.norm(direct)))
                assert np.linalg.norm(rebuilt - direct) <= 1e-9 * scale


def test_root_coefficient_relations():
    rng = np.random.default_rng(31)
    for n in (2, 3, 5):
        roots = rng.uniform(-2, 2, n) + 1j * rng.uniform(-2, 2, n)
        p = poly_from_roots(roots)
        assert abs(p.p[0] + np.sum(roots)) <= 1e-10
        assert abs(p.p[-1] - (-1) ** n * np.prod(roots)) <= 1e-10


def test_deflation_gives_companion_eigenvector():
    rng = np.random.default_rng(71)
    roots = np.array([0.9, -1.4 + 0.5j, 2.1 - 0.3j, 0.2 + 1.2j])
    p = poly_from_roots(roots)
    L = companion(p).data
    for alpha in roots:
        v = deflate(p, alpha).q[::-1]
        residual = np.linalg.norm(L @ v - alpha * v)
        assert residual <= 1e-8 * np.linalg.norm(L)


def test_instability_warning_past_limit():
    rng = np.random.default_rng(3)
    a = SquareMatrix(rng.uniform(-1, 1, (13, 13)).astype(complex))
    with pytest.warns(RuntimeWarning, match="unstable"):
        char_poly(a)


def test_poly_from_roots_expansion():
    p = poly_from_roots([1.0, 2.0, 3.0])
    assert np.allclose(p.p, [-6, 11, -6], atol=1e-13)
