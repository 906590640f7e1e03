"""Exact N-soliton solutions of the focusing Ablowitz-Ladik lattice.

With d_j(n, t) = sqrt(Lambda_j lambda_j^(-n-2) exp(t (1/lambda_j - lambda_j)))
and Psi_jk = d_j d_k / (1 - 1/(lambda_j lambda_k)), the tau function is
det(I - eta Psi).  The potential is read off at the shifted site n + 1.
"""

from __future__ import annotations

import numpy as np

from .numerics import lu_det, lu_solve
from .spectral import SolitonEnsemble, sample_spectrum  # noqa: F401  (re-exported)

LOG_D_MAX = 300.0


class SolitonOverflow(OverflowError):
    """log d_j left the representable window; shrink |n| or |t|."""


def log_dvec(ens: SolitonEnsemble, n: int, t: float) -> np.ndarray:
    lam = ens.lambdas
    return 0.5 * (np.log(ens.norms) - (n + 2) * np.log(lam) + t * (1 / lam - lam))


def dvec(ens: SolitonEnsemble, n: int, t: float) -> np.ndarray:
    logd = log_dvec(ens, n, t)
    if len(logd) and np.max(logd) > LOG_D_MAX:
        raise SolitonOverflow(f"log d reaches {np.max(logd):.1f} at (n, t) = ({n}, {t})")
    return np.exp(logd)


def psi_matrix(d, lambdas) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    lam = np.asarray(lambdas, dtype=float)
    if d.shape != lam.shape:
        raise ValueError("d and lambdas must have equal length")
    return np.outer(d, d) / (1 - 1 / np.outer(lam, lam))


def tau(ens: SolitonEnsemble, n: int, t: float, eta: complex) -> complex:
    """tau(eta; n, t) = det(I - eta Psi(n, t))."""
    if len(ens) == 0:
        return 1.0 + 0.0j
    psi = psi_matrix(dvec(ens, n, t), ens.lambdas)
    return lu_det(np.eye(len(ens)) - eta * psi)


def q_nsoliton(ens: SolitonEnsemble, n: int, t: float) -> complex:
    """q_n(t) = i^(n+1) e^(2it) d^T D (I + Psi^2)^(-1) d, all at site n + 1.

    (I + Psi^2)^(-1) is the real part of (I - i Psi)^(-1); solving the
    N x N complex system avoids squaring the condition number.
    """
    if len(ens) == 0:
        return 0.0j
    d = dvec(ens, n + 1, t)
    psi = psi_matrix(d, ens.lambdas)
    y = lu_solve(np.eye(len(ens)) - 1j * psi, d)
    val = float(np.dot(ens.lambdas * d, y.real))
    return 1j ** ((n + 1) % 4) * np.exp(2j * t) * val


def q_direct(ens: SolitonEnsemble, n: int, t: float) -> complex:
    """Same potential from the real 2N x 2N block system [[I, -Psi], [Psi, I]]."""
    N = len(ens)
    if N == 0:
        return 0.0j
    d = dvec(ens, n + 1, t)
    psi = psi_matrix(d, ens.lambdas)
    eye = np.eye(N)
    block = np.block([[eye, -psi], [psi, eye]])
    sol = lu_solve(block, np.concatenate([d, np.zeros(N)])).real
    alpha = sol[:N]
    return 1j ** ((n + 1) % 4) * np.exp(2j * t) * float(np.dot(ens.lambdas * d, alpha))


def c_nsoliton(ens: SolitonEnsemble, n: int, t: float) -> float:
    """prod_{k >= n} (1 + |q_k|^2) = 1 / Re(tau(i; n+2) / tau(i; n))."""
    if len(ens) == 0:
        return 1.0
    ratio = (tau(ens, n + 2, t, 1j) / tau(ens, n, t, 1j)).real
    if ratio < 1e-14:
        raise ArithmeticError(f"tau ratio {ratio:.3e} too small at (n, t) = ({n}, {t})")
    return 1.0 / ratio
