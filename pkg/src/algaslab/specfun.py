"""Elliptic integrals, the genus-1 theta series and Jacobi's nd.

Complete integrals use the AGM (K, E) and Carlson's symmetric forms (Pi, F).
The theta series is summed directly.  ``jacobi_nd`` is the classical
function, evaluated through the descending Landen/AGM scheme so that it is
independent of the theta code; ``theta_nd_ratio`` is the theta quotient the
reconstruction formulas use, with the half-period normalization
``tau = i K(k') / (2 K(k))``.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = 1e-16


def _check_modulus(k: float) -> float:
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must lie in [0, 1), got {k}")
    return k


def carlson_rf(x: float, y: float, z: float) -> float:
    """R_F(x, y, z) by duplication; at most one argument may vanish."""
    if min(x, y, z) < 0 or (x == 0) + (y == 0) + (z == 0) > 1:
        raise ValueError("R_F needs nonnegative arguments, at most one zero")
    for _ in range(200):
        mu = (x + y + z) / 3.0
        dx, dy, dz = 1 - x / mu, 1 - y / mu, 1 - z / mu
        if max(abs(dx), abs(dy), abs(dz)) < 1e-4:
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x, y, z = (x + lam) / 4, (y + lam) / 4, (z + lam) / 4
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44) / math.sqrt(mu)


def carlson_rc(x: float, y: float) -> float:
    """Degenerate R_C(x, y) = R_F(x, y, y), y > 0."""
    if y <= 0 or x < 0:
        raise ValueError("R_C needs x >= 0, y > 0")
    # atan/atanh forms stay accurate when x and y nearly coincide
    if x == 0:
        return math.pi / (2 * math.sqrt(y))
    if x == y:
        return 1.0 / math.sqrt(x)
    if x < y:
        return math.atan(math.sqrt((y - x) / x)) / math.sqrt(y - x)
    return math.atanh(math.sqrt((x - y) / x)) / math.sqrt(x - y)


def carlson_rd(x: float, y: float, z: float) -> float:
    """R_D(x, y, z) = R_J(x, y, z, z)."""
    return carlson_rj(x, y, z, z)


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """R_J(x, y, z, p) for p > 0 by duplication (Carlson 1995)."""
    if min(x, y, z) < 0 or p <= 0:
        raise ValueError("R_J needs x, y, z >= 0 and p > 0")
    total = 0.0
    scale = 1.0
    for _ in range(200):
        mu = (x + y + z + 2 * p) / 5.0
        dx, dy, dz, dp = 1 - x / mu, 1 - y / mu, 1 - z / mu, 1 - p / mu
        if max(abs(dx), abs(dy), abs(dz), abs(dp)) < 1e-4:
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        alpha = (p * (sx + sy + sz) + sx * sy * sz) ** 2
        beta = p * (p + lam) ** 2
        total += scale * carlson_rc(alpha, beta)
        scale /= 4
        x, y, z, p = (x + lam) / 4, (y + lam) / 4, (z + lam) / 4, (p + lam) / 4
    ea = dx * (dy + dz) + dy * dz
    eb = dx * dy * dz
    ec = dp * dp
    e2 = ea - 3 * ec
    e3 = eb + 2 * dp * (ea - ec)
    e4 = (2 * eb + dp * ea) * dp
    e5 = eb * dp * dp
    series = (
        1
        - 3 * e2 / 14
        + e3 / 6
        + 9 * e2 * e2 / 88
        - 3 * e4 / 22
        - 9 * e2 * e3 / 52
        + 3 * e5 / 26
    )
    return 3 * total + scale * series / (mu * math.sqrt(mu))


def _agm_terms(k: float) -> tuple[float, float]:
    a, b, c = 1.0, math.sqrt(1 - k * k), k
    csum = 0.5 * c * c
    power = 0.5
    # quadratic convergence: 64 steps is far beyond need; the cap guards
    # against a and b oscillating in the last bit
    for _ in range(64):
        if abs(c) <= 4 * _EPS * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        power *= 2
        csum += power * c * c
    return a, csum


def ellip_K(k: float) -> float:
    """K(k) = int_0^1 dx / sqrt((1-x^2)(1-k^2 x^2))."""
    a, _ = _agm_terms(_check_modulus(k))
    return math.pi / (2 * a)


def ellip_E(k: float) -> float:
    """E(k) = int_0^1 sqrt((1-k^2 x^2)/(1-x^2)) dx."""
    a, csum = _agm_terms(_check_modulus(k))
    return math.pi / (2 * a) * (1 - csum)


def ellip_Pi(alpha2: float, k: float) -> float:
    """Pi(alpha^2, k) = int_0^1 dx / ((1 - alpha^2 x^2) sqrt((1-x^2)(1-k^2 x^2)))."""
    k = _check_modulus(k)
    if alpha2 >= 1:
        raise ValueError(f"characteristic must be < 1, got {alpha2}")
    kc2 = 1 - k * k
    return carlson_rf(0.0, kc2, 1.0) + alpha2 / 3 * carlson_rj(0.0, kc2, 1.0, 1 - alpha2)


def ellip_F(m: float, k: float) -> float:
    """Incomplete F(m, k) = int_0^m dx / sqrt((1-x^2)(1-k^2 x^2)), m in [0, 1]."""
    k = _check_modulus(k)
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"upper limit must lie in [0, 1], got {m}")
    if m == 0:
        return 0.0
    return m * carlson_rf(1 - m * m, 1 - k * k * m * m, 1.0)


def theta_terms(z: complex, tau: complex) -> int:
    """Truncation length L: terms with |l| > L are below 1e-15 relative."""
    if not tau.imag > 0:
        raise ValueError(f"theta needs Im tau > 0, got {tau}")
    return int(math.ceil(abs(complex(z).imag) / tau.imag + math.sqrt(36 / (math.pi * tau.imag)))) + 2


def theta3(z: complex, tau: complex, terms: int | None = None) -> complex:
    """Fourier series sum_l exp(2 pi i l z + pi i l^2 tau)."""
    tau = complex(tau)
    z = complex(z)
    # period 1 in z is exact; reducing Re z keeps the phases 2 pi l Re z small
    z -= math.floor(z.real + 0.5)
    L = theta_terms(z, tau) if terms is None else terms
    l = np.arange(-L, L + 1)
    terms = np.exp(2j * np.pi * l * z + 1j * np.pi * l * l * tau)
    # exactly rounded sums: the value no longer depends on how many negligible terms ride along
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def theta_tau(k: float) -> complex:
    """Half-period normalization i K(k') / (2 K(k)) used by the gas formulas."""
    k = _check_modulus(k)
    if k == 0:
        raise ValueError("k = 0 gives a degenerate period")
    return 1j * ellip_K(math.sqrt(1 - k * k)) / (2 * ellip_K(k))


def theta_nd_ratio(x: float, tau: complex) -> float:
    """theta(0) theta(x + 1/2) / (theta(1/2) theta(x)) for real x."""
    num = theta3(0.0, tau) * theta3(x + 0.5, tau)
    den = theta3(0.5, tau) * theta3(x, tau)
    return (num / den).real


def landen_ascending(k: float) -> float:
    """Modulus whose period ratio K'/K is half that of k."""
    k = _check_modulus(k)
    return 2 * math.sqrt(k) / (1 + k)


def _jacobi_dn(u: float, k: float) -> float:
    # descending AGM, Abramowitz & Stegun 16.4
    if k == 0:
        return 1.0
    a, b, c = [1.0], [math.sqrt(1 - k * k)], [k]
    while abs(c[-1]) > 4 * _EPS * a[-1] and len(a) < 64:
        a.append(0.5 * (a[-1] + b[-1]))
        c.append(0.5 * (a[-2] - b[-1]))
        b.append(math.sqrt(a[-2] * b[-1]))
    n = len(a) - 1
    phi = 2**n * a[-1] * u
    phis = [phi]
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[j] / a[j] * math.sin(phi)))
        phis.append(phi)
    # sqrt form rather than cos(phi0)/cos(phi1-phi0), which is 0/0 at u = K
    sn = math.sin(phis[-1])
    return math.sqrt(1 - k * k * sn * sn)


def jacobi_nd(u: float, k: float) -> float:
    """Classical nd(u, k) = 1 / dn(u, k), period 2K(k)."""
    k = _check_modulus(k)
    if k == 0:
        raise ValueError("nd needs k in (0, 1)")
    # reduce to [0, K] using evenness and 2K periodicity; keeps the AGM well inside its range
    K = ellip_K(k)
    u = abs(math.remainder(u, 2 * K))
    return 1.0 / _jacobi_dn(u, k)
