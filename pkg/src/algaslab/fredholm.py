"""Soliton-gas potential from a Nystrom discretization of the Fredholm determinant.

Writing band points as lambda = i*s, the gas kernel restricted to the band is
the real positive semidefinite matrix

    M_jk = sqrt(w_j w_k r_j r_k) (s_j s_k)^(-n/2)
           * exp(-t (u_j + u_k) / 2) / (2 pi (s_j s_k - 1)),    u = s - 1/s,

and the determinant that continues the N-soliton tau(i) is det(I - i M).
Differentiating in t multiplies M_jk by -(u_j + u_k)/2, which collapses the
trace formula to  Im tr[...] = sum_j u_j Im[(I - i M)^(-1)]_jj.

M factors as E C E with E = diag(exp(sigma_j)) carrying all the growth in |n|
and t.  When exp(2 max sigma) is large the Cauchy-like core C becomes
numerically singular in double precision, so the same formulas are then
evaluated in extended precision with the scaling folded out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from .numerics import gauss_legendre, lu_logdet, lu_solve
from .spectral import ReflectionCoefficient, SpectralBand

DEFAULT_NODES = 96
# 2 max(sigma) above this switches to extended precision (about 5 digits lost in double)
DOUBLE_LOG_RANGE = math.log(1e5)
ENTRY_LOG_MAX = math.log(1e120)


class GasOverflow(OverflowError):
    """Kernel entries beyond 1e120; reduce |n| or t."""


@dataclass(frozen=True)
class NystromGrid:
    svals: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if len(self.svals) != len(self.weights) or len(self.svals) == 0:
            raise ValueError("grid needs matching, nonempty nodes and weights")
        if np.any(np.asarray(self.weights) <= 0):
            raise ValueError("weights must be positive")

    @property
    def m(self) -> int:
        return len(self.svals)

    @classmethod
    def gauss(cls, band: SpectralBand, m: int = DEFAULT_NODES) -> "NystromGrid":
        s, w = gauss_legendre(m).mapped(band.eta1, band.eta2)
        return cls(np.asarray(s), np.asarray(w))


@dataclass(frozen=True)
class GasKernelMatrix:
    """M = diag(exp(sigma)) core diag(exp(sigma)); ``entries`` materializes it."""

    n: int
    t: float
    sigma: np.ndarray
    rw: np.ndarray
    svals: np.ndarray
    _entries: np.ndarray | None = field(default=None, repr=False)

    @property
    def core(self) -> np.ndarray:
        return np.outer(self.rw, self.rw) / (2 * np.pi * (np.outer(self.svals, self.svals) - 1))

    @property
    def log_range(self) -> float:
        return 2.0 * float(np.max(self.sigma))

    @property
    def entries(self) -> np.ndarray:
        if self._entries is None:
            e = np.exp(self.sigma)
            object.__setattr__(self, "_entries", e[:, None] * self.core * e[None, :])
        return self._entries

    @property
    def u(self) -> np.ndarray:
        return self.svals - 1 / self.svals


def _default_grid(band, grid):
    return NystromGrid.gauss(band) if grid is None else grid


def kernel_matrix(
    band: SpectralBand,
    r: ReflectionCoefficient,
    grid: NystromGrid | None,
    n: int,
    t: float,
) -> GasKernelMatrix:
    grid = _default_grid(band, grid)
    s = np.asarray(grid.svals, dtype=float)
    w = np.asarray(grid.weights, dtype=float)
    rw = np.sqrt(w * r(s))
    core = np.outer(rw, rw) / (2 * np.pi * (np.outer(s, s) - 1))
    sigma = -0.5 * n * np.log(s) - 0.5 * t * (s - 1 / s)
    log_entry = 2 * np.max(sigma) + math.log(np.max(core))
    if log_entry > ENTRY_LOG_MAX:
        raise GasOverflow(f"kernel entries reach exp({log_entry:.0f}) at (n, t) = ({n}, {t})")
    return GasKernelMatrix(n, float(t), sigma, rw, s)


def _use_mp(km: GasKernelMatrix, precision: str) -> bool:
    if precision not in ("auto", "double", "extended"):
        raise ValueError(f"unknown precision mode {precision!r}")
    if precision == "auto":
        return km.log_range > DOUBLE_LOG_RANGE
    return precision == "extended"


def _mp_scaled(km: GasKernelMatrix):
    """H = P^-2 - i Et C Et with P = max(1, E), Et = E / P; returns (H, log p, dps)."""
    logp = np.maximum(km.sigma, 0.0)
    dps = 20 + int(math.ceil(km.log_range / math.log(10)))
    m = len(km.sigma)
    with mp.workdps(dps):
        s = [mp.mpf(float(v)) for v in km.svals]
        sig = [mp.mpf(float(v)) for v in km.sigma]
        lp = [mp.mpf(float(v)) for v in logp]
        # Cauchy denominators must be formed in extended precision; the tiny
        # eigenvalues of the core are what the scaling exposes
        sqw = [mp.mpf(float(v)) for v in km.rw]
        et = [mp.exp(sig[j] - lp[j]) for j in range(m)]
        H = mp.matrix(m, m)
        for j in range(m):
            for k in range(m):
                c = sqw[j] * sqw[k] / (2 * mp.pi * (s[j] * s[k] - 1))
                H[j, k] = mp.mpc(0, -1) * et[j] * c * et[k]
            H[j, j] += mp.exp(-2 * lp[j])
    return H, logp, dps


def log_fredholm_det(
    band: SpectralBand,
    r: ReflectionCoefficient,
    grid: NystromGrid | None,
    n: int,
    t: float,
    precision: str = "auto",
) -> complex:
    """log det(I - i M_{n,t}) with the imaginary part in (-pi, pi]."""
    km = kernel_matrix(band, r, grid, n, t)
    if not _use_mp(km, precision):
        return lu_logdet(np.eye(len(km.sigma)) - 1j * km.entries)
    H, logp, dps = _mp_scaled(km)
    with mp.workdps(dps):
        d = mp.det(H)
        val = 2 * mp.fsum(mp.mpf(float(v)) for v in logp) + mp.log(d)
        return complex(float(mp.re(val)), float(mp.arg(mp.exp(mp.mpc(0, mp.im(val))))))


def fredholm_det(
    band: SpectralBand,
    r: ReflectionCoefficient,
    grid: NystromGrid | None,
    n: int,
    t: float,
    precision: str = "auto",
) -> complex:
    """Nystrom value of det(Id + K_{n,t}), oriented to continue tau^[N](i; n, t)."""
    logdet = log_fredholm_det(band, r, grid, n, t, precision)
    if logdet.real > 700:
        raise GasOverflow(f"|det| = exp({logdet.real:.0f}) exceeds double range; use log_fredholm_det")
    return complex(np.exp(logdet))


def _trace_im(km: GasKernelMatrix, precision: str) -> float:
    u = km.u
    if not _use_mp(km, precision):
        m = len(u)
        inv_diag = np.diag(lu_solve(np.eye(m) - 1j * km.entries, np.eye(m)))
        return float(np.dot(u, inv_diag.imag))
    H, logp, dps = _mp_scaled(km)
    with mp.workdps(dps):
        Hi = mp.inverse(H)
        # (I - iM)^-1 = P^-1 H^-1 P^-1, so its diagonal picks up p_j^-2
        acc = mp.fsum(
            mp.mpf(float(u[j])) * mp.im(Hi[j, j]) * mp.exp(-2 * mp.mpf(float(logp[j])))
            for j in range(len(u))
        )
        return float(acc)


def q_gas(
    band: SpectralBand,
    r: ReflectionCoefficient,
    grid: NystromGrid | None,
    n: int,
    t: float,
    precision: str = "auto",
) -> complex:
    """q_n(t) = i^(n+1) e^(2it) d/dt Im ln det(Id + K_{n+1,t}), differentiated exactly."""
    km = kernel_matrix(band, r, grid, n + 1, t)
    return 1j ** ((n + 1) % 4) * np.exp(2j * t) * _trace_im(km, precision)


def c_gas(
    band: SpectralBand,
    r: ReflectionCoefficient,
    grid: NystromGrid | None,
    n: int,
    t: float,
    precision: str = "auto",
) -> float:
    """prod_{k >= n} (1 + |q_k|^2) from the determinant ratio at sites n + 2 and n."""
    hi = log_fredholm_det(band, r, grid, n + 2, t, precision)
    lo = log_fredholm_det(band, r, grid, n, t, precision)
    ratio = np.exp(hi - lo).real
    if ratio < 1e-14:
        raise ArithmeticError(f"determinant ratio {ratio:.3e} too small at (n, t) = ({n}, {t})")
    return 1.0 / ratio


def q_gas_estimate(
    band: SpectralBand,
    r: ReflectionCoefficient,
    n: int,
    t: float,
    m: int = DEFAULT_NODES,
    precision: str = "auto",
) -> tuple[complex, float]:
    """q_gas on m nodes, with |q(m) - q(m/2)| as a convergence estimate."""
    q = q_gas(band, r, NystromGrid.gauss(band, m), n, t, precision)
    q_half = q_gas(band, r, NystromGrid.gauss(band, max(m // 2, 1)), n, t, precision)
    return q, abs(q - q_half)


@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    det: complex
    diff: float | None


def convergence_report(
    band: SpectralBand,
    r: ReflectionCoefficient,
    n: int,
    t: float,
    m_list,
    precision: str = "auto",
) -> tuple[list[ConvergenceRow], bool]:
    """Determinants over increasing node counts and their successive differences.

    The flag is True when the differences stop shrinking before reaching
    roundoff level (stagnation).
    """
    m_list = list(m_list)
    if any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise ValueError("m_list must be increasing")
    rows: list[ConvergenceRow] = []
    prev = None
    for m in m_list:
        det = fredholm_det(band, r, NystromGrid.gauss(band, m), n, t, precision)
        rows.append(ConvergenceRow(m, det, None if prev is None else abs(det - prev)))
        prev = det
    diffs = [row.diff for row in rows if row.diff is not None]
    floor = 1e-13 * max(abs(row.det) for row in rows)
    stagnant = any(b > a and b > floor for a, b in zip(diffs, diffs[1:]))
    return rows, stagnant
