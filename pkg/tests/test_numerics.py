import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from algaslab.numerics import (
    QuadratureError,
    SingularMatrixError,
    adaptive_quad,
    gauss_legendre,
    lu_det,
    lu_logdet,
    lu_solve,
)


def cofactor_det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    return sum((-1) ** j * A[0][j] * cofactor_det([row[:j] + row[j + 1 :] for row in A[1:]]) for j in range(n))


def test_gl_small_rules():
    r1 = gauss_legendre(1)
    assert r1.nodes.tolist() == [0.0] and r1.weights.tolist() == [2.0]
    r2 = gauss_legendre(2)
    assert np.allclose(r2.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    assert np.allclose(r2.weights, [1.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("m", [1, 5, 16, 64, 200])
def test_gl_rule_invariants(m):
    rule = gauss_legendre(m)
    assert abs(rule.weights.sum() - 2) < 1e-13
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.allclose(rule.nodes, -rule.nodes[::-1], atol=1e-15)
    assert np.all(rule.weights > 0)


def test_gl_x10():
    rule = gauss_legendre(16)
    assert abs(np.dot(rule.weights, rule.nodes**10) - 2 / 11) < 1e-14


@pytest.mark.parametrize("m", range(1, 13))
def test_gl_exact_degree(m):
    rule = gauss_legendre(m)
    for deg in range(2 * m):
        exact = 0.0 if deg % 2 else 2 / (deg + 1)
        assert abs(np.dot(rule.weights, rule.nodes**deg) - exact) < 1e-14


def test_gl_rejects_zero():
    with pytest.raises(ValueError):
        gauss_legendre(0)


def test_lu_det_examples(rng):
    assert lu_det(np.eye(4)) == 1
    assert abs(lu_det(np.diag([2, 3j])) - 6j) < 1e-15
    A = rng.uniform(-1, 1, (5, 5)) + 1j * rng.uniform(-1, 1, (5, 5))
    ref = cofactor_det(A.tolist())
    assert abs(lu_det(A) - ref) < 1e-10 * abs(ref)


def test_lu_det_multiplicative(rng):
    for _ in range(10):
        A = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        B = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        lhs, rhs = lu_det(A @ B), lu_det(A) * lu_det(B)
        assert abs(lhs - rhs) < 1e-9 * abs(rhs)


def test_lu_logdet_matches_det(rng):
    A = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    assert abs(np.exp(lu_logdet(A)) - lu_det(A)) < 1e-12 * abs(lu_det(A))
    big = np.diag(np.full(50, 1e20))
    assert abs(lu_logdet(big).real - 50 * math.log(1e20)) < 1e-9


def test_lu_solve_examples(rng):
    b = rng.normal(size=4) + 0j
    assert np.allclose(lu_solve(np.eye(4), b), b)
    assert np.allclose(lu_solve([[2, 0], [0, 4]], [2, 4]), [1, 1])
    A = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    b = rng.normal(size=8) + 1j * rng.normal(size=8)
    x = lu_solve(A, b)
    resid = np.max(np.abs(A @ x - b))
    assert resid <= 1e-10 * np.max(np.sum(np.abs(A), axis=1)) * np.max(np.abs(x))


def test_lu_solve_matrix_rhs(rng):
    A = rng.normal(size=(5, 5)) + 5 * np.eye(5)
    X = lu_solve(A, np.eye(5))
    assert np.allclose(A @ X, np.eye(5), atol=1e-13)


def test_singular_reported():
    with pytest.raises(SingularMatrixError):
        lu_det([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(SingularMatrixError):
        lu_solve(np.zeros((3, 3)), np.ones(3))


def test_nonsquare_rejected():
    with pytest.raises(ValueError):
        lu_det(np.ones((2, 3)))


def test_quad_examples():
    assert abs(adaptive_quad(lambda x: x, 0, 1) - 0.5) < 1e-14
    assert abs(adaptive_quad(np.sin, 0, math.pi) - 2) < 1e-13
    # x = u^2 removes the endpoint singularity of x^(-1/2)
    assert abs(adaptive_quad(lambda u: 2 * u / u, 0, 1) - 2) < 1e-14


def test_quad_complex_and_peaked():
    val = adaptive_quad(lambda x: np.exp(1j * 40 * x), 0, 1, 1e-13)
    assert abs(val - (np.exp(40j) - 1) / 40j) < 1e-12
    val = adaptive_quad(lambda x: 1 / (1e-4 + x * x), -1, 1, 1e-11)
    assert abs(val - 2 * math.atan(100) / 1e-2) < 1e-8


def test_quad_budget():
    with pytest.raises(QuadratureError):
        adaptive_quad(lambda x: np.sign(x - 1 / math.pi), 0, 1, 1e-15, max_panels=20)


@given(st.floats(0.05, 0.95), st.floats(-2.0, 2.0), st.floats(0.1, 3.0))
def test_quad_additive(frac, a, width):
    f = lambda x: np.cos(3 * x) * np.exp(x / 2)
    b = a + width
    c = a + frac * width
    tol = 1e-12
    whole = adaptive_quad(f, a, b, tol)
    parts = adaptive_quad(f, a, c, tol) + adaptive_quad(f, c, b, tol)
    assert abs(whole - parts) < 2 * tol + 1e-14
