"""Quadrature rules, dense complex LU and an adaptive integrator.

Everything here is a pure function of its arguments.  The LU routines wrap
LAPACK (via scipy) but own the pivot inspection and the singularity report.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
import scipy.linalg as sla


class SingularMatrixError(ArithmeticError):
    """A pivot vanished (or underflowed) during factorization."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature exhausted its panel budget."""


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.nodes)

    def mapped(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights carried affinely onto [a, b]."""
        half = 0.5 * (b - a)
        return a + half * (self.nodes + 1.0), half * self.weights


def _legendre_with_derivative(m: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, m + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = m * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=64)
def _gl_arrays(m: int) -> tuple[np.ndarray, np.ndarray]:
    if m == 1:
        return np.array([0.0]), np.array([2.0])
    k = np.arange(1, m + 1)
    # Tricomi initial guess, good enough for quadratic convergence right away
    x = np.cos(np.pi * (k - 0.25) / (m + 0.5)) * (1 - (m - 1) / (8.0 * m**3))
    for _ in range(100):
        p, dp = _legendre_with_derivative(m, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    _, dp = _legendre_with_derivative(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x = x[::-1].copy()
    w = w[::-1].copy()
    # enforce exact symmetry about the origin
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    if m % 2:
        x[m // 2] = 0.0
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_legendre(m: int) -> QuadratureRule:
    """m-point Gauss-Legendre rule on [-1, 1], exact through degree 2m-1."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    x, w = _gl_arrays(int(m))
    return QuadratureRule(x, w)


def _factor(A) -> tuple[np.ndarray, np.ndarray]:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"square matrix required, got shape {A.shape}")
    if A.shape[0] == 0:
        return A, np.zeros(0, dtype=int)
    with warnings.catch_warnings():
        # singularity is reported below through SingularMatrixError
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(A, check_finite=True)
    pivots = np.abs(np.diag(lu))
    scale = max(np.max(np.abs(A)), np.finfo(float).tiny)
    if np.min(pivots) <= scale * np.finfo(float).eps * 1e-3 or np.min(pivots) < np.finfo(float).tiny:
        raise SingularMatrixError(f"pivot {np.min(pivots):.3e} below working precision")
    return lu, piv


def lu_det(A) -> complex:
    """Determinant from a row-pivoted LU factorization."""
    lu, piv = _factor(A)
    if lu.shape[0] == 0:
        return 1.0 + 0.0j
    swaps = np.count_nonzero(piv != np.arange(len(piv)))
    d = np.prod(np.diag(lu))
    return complex(-d if swaps % 2 else d)


def lu_logdet(A) -> complex:
    """Principal-branch log|det| + i arg(det), for determinants outside float range."""
    lu, piv = _factor(A)
    if lu.shape[0] == 0:
        return 0.0j
    swaps = np.count_nonzero(piv != np.arange(len(piv)))
    diag = np.diag(lu)
    logabs = np.sum(np.log(np.abs(diag)))
    phase = np.angle(diag).sum() + (np.pi if swaps % 2 else 0.0)
    return complex(logabs, np.angle(np.exp(1j * phase)))


def lu_solve(A, b) -> np.ndarray:
    """Solve A x = b; b may be a vector or a matrix of right-hand sides."""
    lu, piv = _factor(A)
    return sla.lu_solve((lu, piv), np.asarray(b, dtype=complex))


def adaptive_quad(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-12,
    order: int = 20,
    max_panels: int = 4000,
) -> complex:
    """Globally adaptive panel Gauss-Legendre.

    Each panel is integrated with an ``order``-point rule and again on its two
    halves; the difference is the error estimate.  The panel with the largest
    estimate is split until the sum falls below ``tol``.  ``f`` must accept an
    array of abscissae.  Endpoint singularities are the caller's business and
    should be removed by substitution first.
    """
    if not b > a:
        raise ValueError("need a < b")
    rule = gauss_legendre(order)

    def panel(lo, hi):
        x, w = rule.mapped(lo, hi)
        coarse = np.dot(w, f(x))
        mid = 0.5 * (lo + hi)
        xl, wl = rule.mapped(lo, mid)
        xr, wr = rule.mapped(mid, hi)
        left = np.dot(wl, f(xl))
        right = np.dot(wr, f(xr))
        return (left, right), abs(left + right - coarse)

    (l, r), err = panel(a, b)
    panels = [(a, b, l + r, err)]
    total_err = err
    count = 1
    # roundoff floor: no estimate below a few ulps of the running magnitude is meaningful
    floor = lambda: 20 * np.finfo(float).eps * sum(abs(p[2]) for p in panels)
    while total_err > max(tol, floor()):
        if count >= max_panels:
            raise QuadratureError(
                f"no convergence on [{a}, {b}] after {count} panels (estimate {total_err:.2e})"
            )
        i = max(range(len(panels)), key=lambda j: panels[j][3])
        lo, hi, _, _ = panels.pop(i)
        mid = 0.5 * (lo + hi)
        for p, q in ((lo, mid), (mid, hi)):
            (l, r), e = panel(p, q)
            panels.append((p, q, l + r, e))
        count += 1
        total_err = sum(p[3] for p in panels)
    return complex(sum(p[2] for p in panels))
