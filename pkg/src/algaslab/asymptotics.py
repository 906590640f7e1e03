"""Genus-1 constants and leading-order formulas for the gas potential.

Conventions
-----------
Spectral points on the upper imaginary axis are written lambda = i*sigma.
For a curve with branch points i*{1/b, 1/a, a, b} (1 < a < b) the principal
sheet of R is

    R(lambda) = -P(lambda; a, b) P(lambda; 1/b, 1/a),
    P(lambda; p, q) = w sqrt(1 - h^2 / w^2),  w = lambda - i(p+q)/2,  h = i(q-p)/2,

so each factor has its cut exactly on its own segment, R(0) = 1 and
R ~ -lambda^2 at infinity.  On the axis |R(i sigma)| = rho(sigma) with
rho = sqrt|prod (sigma - branch point)|; R = -rho on the gap (1/a, a), and
the left boundary value on the upper cut is R_+ = i rho.

All period integrals reduce to real integrals of f(sigma)/rho(sigma) between
adjacent branch points.  Those carry inverse-square-root endpoint behaviour,
which the substitution sigma = p + (q - p) sin^2(theta) removes.

The theta quotient with tau = i K(k')/(2K(k)) is what the potential uses.  It
equals the classical nd with the ascending-Landen modulus 2 sqrt(k)/(1+k) and
argument (1+k) K(k) * phase / pi; ``nd_form`` evaluates that independent route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import adaptive_quad
from .spectral import ReflectionCoefficient, SpectralBand
from .specfun import (
    ellip_E,
    ellip_F,
    ellip_K,
    ellip_Pi,
    jacobi_nd,
    landen_ascending,
    theta3,
    theta_nd_ratio,
    theta_tau,
)

QUAD_TOL = 1e-13


# ---------------------------------------------------------------------------
# the square root R


def _cut_factor(lam, p: float, q: float):
    w = lam - 0.5j * (p + q)
    h = 0.5j * (q - p)
    return w * np.sqrt(1 - h * h / (w * w))


def _sorted_points(branch_points) -> tuple[float, float, float, float]:
    pts = tuple(sorted(float(b) for b in branch_points))
    if len(pts) != 4 or not 0 < pts[0] < pts[1] < pts[2] < pts[3]:
        raise ValueError(f"need four distinct positive branch points, got {branch_points}")
    return pts


def _on_cut(sigma: float, pts) -> bool:
    return pts[0] <= sigma <= pts[1] or pts[2] <= sigma <= pts[3]


def R_eval(lam, branch_points):
    """Principal-sheet R for cuts i(b0, b1) and i(b2, b3) (points sorted)."""
    b0, b1, b2, b3 = _sorted_points(branch_points)
    lam_arr = np.asarray(lam, dtype=complex)
    on_axis = np.abs(lam_arr.real) == 0
    sig = lam_arr.imag
    if np.any(on_axis & (((sig >= b0) & (sig <= b1)) | ((sig >= b2) & (sig <= b3)))):
        raise ValueError("lambda lies on a branch cut; use R_side")
    out = -_cut_factor(lam_arr, b2, b3) * _cut_factor(lam_arr, b0, b1)
    return complex(out) if out.ndim == 0 else out


def rho(sigma, branch_points):
    pts = _sorted_points(branch_points)
    sigma = np.asarray(sigma, dtype=float)
    return np.sqrt(np.abs((sigma - pts[0]) * (sigma - pts[1]) * (sigma - pts[2]) * (sigma - pts[3])))


def R_side(sigma: float, branch_points, side: int) -> complex:
    """Boundary value of R at i*sigma from Re(lambda) < 0 (side=+1) or > 0 (side=-1)."""
    pts = _sorted_points(branch_points)
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    mag = float(rho(sigma, pts))
    if not _on_cut(sigma, pts):
        return complex(R_eval(1j * sigma, pts))
    # the phase is fixed by a nearby off-axis value; the magnitude is exact
    probe = complex(R_eval(1j * sigma - side * 1e-7 * max(sigma, 1.0), pts))
    return complex(0.0, math.copysign(mag, probe.imag))


def R_plus(sigma: float, branch_points) -> complex:
    return R_side(sigma, branch_points, 1)


def R_minus(sigma: float, branch_points) -> complex:
    return R_side(sigma, branch_points, -1)


def band_points(eta1: float, eta2: float) -> tuple[float, float, float, float]:
    return (1 / eta2, 1 / eta1, eta1, eta2)


# ---------------------------------------------------------------------------
# real period integrals


def edge_integral(f: Callable, p: float, q: float, pts, tol: float = QUAD_TOL) -> float:
    """int_p^q f(sigma) / rho(sigma) d sigma for adjacent branch points p < q."""
    others = [b for b in pts if b not in (p, q)]

    def integrand(theta):
        sn2 = np.sin(theta) ** 2
        sig = p + (q - p) * sn2
        # (sigma - p)(q - sigma) = (q - p)^2 sin^2 cos^2 cancels against d sigma
        return 2 * f(sig) / np.sqrt(np.abs((sig - others[0]) * (sig - others[1])))

    return adaptive_quad(integrand, 0.0, math.pi / 2, tol).real


def gap_closed_forms(l1: float, l2: float) -> tuple[float, float, float]:
    """Gap integrals I0, I1 and the ratio I2/I0 for the curve with l-values l1 < l2.

    I_j = int over (1/a, a) of w_j(sigma) / rho, with w_0 = 1,
    w_1 = sigma + 1/sigma, w_2 = sigma^2 + sigma^-2 and a = (1+l1)/(1-l1).
    """
    k = l1 / l2
    K = ellip_K(k)
    E = ellip_E(k)
    Pi = ellip_Pi(l1 * l1, k)
    root = math.sqrt((1 - l1 * l1) * (1 - l2 * l2))
    I0 = root * K / l2
    I1 = 2 * root * (2 * Pi - K) / l2
    ratio2 = 2 + 8 * l1**2 / ((k * k - l1**2) * (l1**2 - 1)) * (
        E / K + (k * k - l1**2) / l1**2 - (k * k - l1**4) / l1**2 * Pi / K
    )
    return I0, I1, ratio2


def _l(x: float) -> float:
    return (x - 1) / (x + 1)


def _ln_r(r: ReflectionCoefficient):
    return lambda s: np.log(r(s))


# ---------------------------------------------------------------------------
# t = 0 construction


def kappa1_const(band: SpectralBand) -> float:
    k = band.k
    return 2 * (2 * ellip_Pi(band.l1**2, k) / ellip_K(k) - 1)


def _g_numerator_t0(band: SpectralBand):
    kap = kappa1_const(band)
    return lambda s: -0.5 * (s - 1 / s - 1j * kap)


def _g_numerator_ray(rc: "RayConstants"):
    c1, c0 = rc.c1, rc.c0
    return lambda s: 0.5 * (1j * (s * s + 1 / (s * s)) + c1 * (s - 1 / s) + c0)


def _g_integral(lam, numer, base: float, pts, side: int | None, tol: float) -> complex:
    """int_{i base}^{lam} numer(s) / R(s) ds."""
    lam = complex(lam)
    if lam.real == 0 and lam.imag > 0:
        sigma = lam.imag
        if _on_cut(sigma, pts) and side is None:
            raise ValueError("lambda on a cut: pass side=+1 (left) or -1 (right)")
        return _axis_integral(numer, base, sigma, pts, side or 1, tol)
    if lam.real == 0:
        raise ValueError("lambda on the lower imaginary axis is not supported")
    start = 1j * base
    span = lam - start

    def integrand(u):
        s = start + span * u * u
        return numer(s) / R_eval(s, pts) * 2 * span * u

    return adaptive_quad(integrand, 0.0, 1.0, tol)


def _axis_integral(numer, base: float, sigma: float, pts, side: int, tol: float) -> complex:
    """int from i*base to i*sigma along the axis, one-sided on the cuts."""
    if sigma == base:
        return 0.0j
    lo, hi = sorted((base, sigma))
    knots = [lo] + [b for b in pts if lo < b < hi] + [hi]
    total = 0.0j
    for p, q in zip(knots, knots[1:]):
        mid = 0.5 * (p + q)
        # R / rho is constant between consecutive branch points
        phase = R_side(mid, pts, side) / float(rho(mid, pts))
        p_cut, q_cut = p in pts, q in pts
        rest = [b for b in pts if not (b == p and p_cut) and not (b == q and q_cut)]

        def integrand(theta, p=p, q=q, phase=phase, p_cut=p_cut, q_cut=q_cut, rest=rest):
            sn, cs = np.sin(theta), np.cos(theta)
            sig = p + (q - p) * sn * sn
            # d sigma = 2 (q-p) sn cs d theta; a branch point at p (or q) puts
            # sqrt(q-p) sn (or sqrt(q-p) cs) into rho, cancelled here exactly
            jac = 2 * (q - p) * np.ones_like(sn)
            jac = jac * (1 / np.sqrt(q - p) if p_cut else sn)
            jac = jac * (1 / np.sqrt(q - p) if q_cut else cs)
            reduced = np.sqrt(np.abs(np.prod([sig - b for b in rest], axis=0)))
            return numer(1j * sig) * 1j * jac / (phase * reduced)

        total += adaptive_quad(integrand, 0.0, math.pi / 2, tol)
    return total if sigma > base else -total


def g_eval_t0(lam, band: SpectralBand, side: int | None = None, tol: float = 1e-12) -> complex:
    """g(lambda) = -1/2 int_{i eta2}^{lambda} (s - 1/s - i kappa1) / R(s) ds.

    Off the axis the path is a straight segment from i*eta2 (never crossing
    the cuts or the negative imaginary axis).  Points on the upper axis are
    reached along it, with ``side`` selecting the boundary value on cuts.
    """
    pts = band_points(band.eta1, band.eta2)
    return _g_integral(lam, _g_numerator_t0(band), band.eta2, pts, side, tol)


def omega_t0(band: SpectralBand) -> float:
    """b-period: Omega = 2i g_+(i eta1)."""
    val = 2j * g_eval_t0(1j * band.eta1, band, side=1)
    if abs(val.imag) > 1e-10 * max(1.0, abs(val)):
        raise ArithmeticError(f"Omega came out complex: {val}")
    return val.real


def _delta_integral(band_lo: float, band_hi: float, pts, r: ReflectionCoefficient) -> float:
    if r.is_unit:
        return 0.0
    return edge_integral(_ln_r(r), band_lo, band_hi, pts)


def delta_t0(band: SpectralBand, r: ReflectionCoefficient) -> float:
    """Delta = 2 int_{eta1}^{eta2} ln r(i s) / rho ds / I0, with I0 the gap integral of 1/rho."""
    pts = band_points(band.eta1, band.eta2)
    I0, _, _ = gap_closed_forms(band.l1, band.l2)
    return 2 * _delta_integral(band.eta1, band.eta2, pts, r) / I0


def delta_contour(band: SpectralBand, r: ReflectionCoefficient, alpha: float | None = None) -> complex:
    """Delta from complex contour integrals with one-sided R (independent of ``delta_t0``).

    -2i * int_{i eta1}^{i alpha} ln r / R_+ ds  /  int_{i/eta1}^{i eta1} ds / R,
    with alpha = eta2 by default.  The result should be real.
    """
    a = band.eta2 if alpha is None else alpha
    pts = band_points(band.eta1, a)
    num = _axis_integral(lambda s: np.log(r(np.imag(s))), band.eta1, a, pts, 1, QUAD_TOL)
    den = _axis_integral(lambda s: np.ones_like(s), 1 / band.eta1, band.eta1, pts, 1, QUAD_TOL)
    return -2j * num / den


@dataclass(frozen=True)
class GasConstantsT0:
    k: float
    l1: float
    l2: float
    kappa1: float
    Omega: float
    Delta: float
    tau_period: complex
    amplitude: float


def gas_constants_t0(band: SpectralBand, r: ReflectionCoefficient) -> GasConstantsT0:
    return GasConstantsT0(
        k=band.k,
        l1=band.l1,
        l2=band.l2,
        kappa1=kappa1_const(band),
        Omega=omega_t0(band),
        Delta=delta_t0(band, r),
        tau_period=theta_tau(band.k),
        amplitude=band.amplitude,
    )


def abel_at_zero(k: float, l2: float) -> float:
    """Abel map at the origin, -(1 + F(l2, k)/K(k)) / 4."""
    return -0.25 * (1 + ellip_F(l2, k) / ellip_K(k))


def z_inf_12_theta(phase: float, k: float, amplitude: float, abel_shift: float = 0.0) -> float:
    """Theta form of the leading coefficient at lambda = 0.

    ``abel_shift`` is A(lambda) - A(0), which vanishes at the origin; it is
    kept so the formula reads as the general one.
    """
    tau = theta_tau(k)
    x = phase / (2 * math.pi)
    num = theta3(-abel_shift + 0.5 + x, tau) * theta3(0.0, tau)
    den = theta3(-abel_shift + 0.5, tau) * theta3(x, tau)
    if abs(den) == 0:
        raise ZeroDivisionError("theta vanishes in the denominator")
    return amplitude * (num / den).real


def nd_form(phase: float, k: float, amplitude: float) -> float:
    """amplitude * nd(K(k~) phase / pi, k~) with the ascending-Landen modulus k~."""
    kt = landen_ascending(k)
    return amplitude * jacobi_nd(ellip_K(kt) * phase / math.pi, kt)


def q_asym_t0(n: int, band: SpectralBand, r: ReflectionCoefficient, consts: GasConstantsT0 | None = None) -> complex:
    """Leading term of q_n(0) as n -> -infinity."""
    if n >= 0:
        raise ValueError("the t = 0 oscillatory asymptotics applies to negative n")
    c = consts or gas_constants_t0(band, r)
    phase = (n + 1) * c.Omega + c.Delta
    return 1j ** ((n + 1) % 4) * c.amplitude * theta_nd_ratio(phase / (2 * math.pi), c.tau_period)


# ---------------------------------------------------------------------------
# rays xi = (n + 1)/t


def xi_crit(band: SpectralBand) -> float:
    """Lower edge of the modulated sector, from its closed form."""
    e1, e2 = band.eta1, band.eta2
    l1, k = band.l1, band.k
    K, E, Pi = ellip_K(k), ellip_E(k), ellip_Pi(l1 * l1, k)
    bracket = E / K + (k * k - l1**2) / l1**2 - (k * k - l1**4) / l1**2 * Pi / K
    num = -(e2**2) - e2**-2 + 2 + 8 * l1**2 / ((k * k - l1**2) * (l1**2 - 1)) * bracket
    den = e2 + 1 / e2 + 2 - 4 * Pi / K
    return (e2 + 1 / e2 + e1 + 1 / e1) / 2 + num / den


def ND_ratio(alpha_val: float, band: SpectralBand) -> float:
    """N(alpha)/D(alpha): the ray xi whose soft edge sits at i*alpha."""
    a, e1 = float(alpha_val), band.eta1
    if not e1 < a <= band.eta2:
        raise ValueError(f"alpha must lie in (eta1, eta2], got {a}")
    l1, la = band.l1, _l(a)
    k = l1 / la
    K, Pi = ellip_K(k), ellip_Pi(l1 * l1, k)
    _, _, ratio2 = gap_closed_forms(l1, la)
    D = a + 1 / a + 2 - 4 * Pi / K
    N = -(a * a) - a**-2 + (a + 1 / a + e1 + 1 / e1) / 2 * D + ratio2
    return N / D


def solve_alpha(xi: float, band: SpectralBand) -> float:
    """Bisection for ND_ratio(alpha) = xi on (eta1, eta2); ND_ratio decreases."""
    lo_xi, hi_xi = xi_crit(band), band.xi0
    if not lo_xi < xi < hi_xi:
        raise ValueError(f"xi = {xi} outside ({lo_xi}, {hi_xi}); alpha is eta2 there")
    lo, hi = band.eta1, band.eta2
    while hi - lo >= 1e-12:
        mid = 0.5 * (lo + hi)
        if ND_ratio(mid, band) > xi:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def alpha_of_xi(xi: float, band: SpectralBand) -> float:
    if xi >= band.xi0:
        raise ValueError("no genus-1 curve in the fast-decay sector")
    return solve_alpha(xi, band) if xi > xi_crit(band) else band.eta2


def c_coeffs(xi: float, band: SpectralBand, alpha: float | None = None) -> tuple[float, complex]:
    """(c1, c0): c1 = S/2 - xi and c0 = i (I2 - c1 I1)/I0 from gap quadratures."""
    a = alpha_of_xi(xi, band) if alpha is None else alpha
    e1 = band.eta1
    pts = band_points(e1, a)
    c1 = (e1 + 1 / e1 + a + 1 / a) / 2 - xi
    gap = (1 / e1, e1)
    I0 = edge_integral(lambda s: np.ones_like(s), *gap, pts)
    I1 = edge_integral(lambda s: s + 1 / s, *gap, pts)
    I2 = edge_integral(lambda s: s * s + 1 / (s * s), *gap, pts)
    return c1, 1j * (I2 - c1 * I1) / I0


@dataclass(frozen=True)
class RayConstants:
    xi: float
    eta1: float
    alpha: float
    k_xi: float
    c1: float
    c0: complex
    Omega: float
    Delta: float
    xi_crit: float

    @property
    def branch_points(self):
        return (1 / self.alpha, 1 / self.eta1, self.eta1, self.alpha)

    @property
    def amplitude(self) -> float:
        return 0.5 * (math.sqrt(self.alpha / self.eta1) - math.sqrt(self.eta1 / self.alpha))

    @property
    def tau_period(self) -> complex:
        return theta_tau(self.k_xi)


def omega_delta_ray(xi: float, band: SpectralBand, r: ReflectionCoefficient, alpha: float | None = None):
    """(Omega, Delta) on the ray, from band integrals over (eta1, alpha)."""
    a = alpha_of_xi(xi, band) if alpha is None else alpha
    e1 = band.eta1
    pts = band_points(e1, a)
    c1, c0 = c_coeffs(xi, band, a)
    b = (-1j * c0).real
    Omega = edge_integral(lambda s: -(s * s + 1 / (s * s)) + c1 * (s + 1 / s) + b, e1, a, pts)
    I0, _, _ = gap_closed_forms(band.l1, _l(a))
    Delta = 2 * _delta_integral(e1, a, pts, r) / I0
    return Omega, Delta


_RAY_CACHE: dict = {}


def ray_constants(xi: float, band: SpectralBand, r: ReflectionCoefficient) -> RayConstants:
    key = (float(xi), band.eta1, band.eta2, repr(r.to_dict()))
    hit = _RAY_CACHE.get(key)
    if hit is not None:
        return hit
    a = alpha_of_xi(xi, band)
    c1, c0 = c_coeffs(xi, band, a)
    Omega, Delta = omega_delta_ray(xi, band, r, a)
    rc = RayConstants(
        xi=float(xi),
        eta1=band.eta1,
        alpha=a,
        k_xi=band.l1 / _l(a),
        c1=c1,
        c0=c0,
        Omega=Omega,
        Delta=Delta,
        xi_crit=xi_crit(band),
    )
    _RAY_CACHE[key] = rc
    return rc


def lambda0(xi: float, band: SpectralBand) -> float:
    """Saddle point: the zero of the ray numerator on (eta1, eta2), curve closed at eta2."""
    c1, c0 = c_coeffs(xi, band, band.eta2)
    b = (-1j * c0).real
    disc = c1 * c1 + 4 * (b + 2)
    if disc < 0:
        raise ArithmeticError("no real saddle")
    u = 0.5 * (c1 + math.sqrt(disc))
    if u <= 2:
        raise ArithmeticError("saddle not on the imaginary axis above i")
    lam = 0.5 * (u + math.sqrt(u * u - 4))
    if not band.eta1 < lam <= band.eta2 * (1 + 1e-9):
        raise ArithmeticError(f"saddle {lam} outside (eta1, eta2]")
    return lam


def g_eval_ray(lam, rc: RayConstants, side: int | None = None, tol: float = 1e-12) -> complex:
    """g(lambda) = 1/2 int_{i alpha}^{lambda} (i(s^2 + s^-2) + c1 (s - 1/s) + c0)/R(s) ds."""
    return _g_integral(lam, _g_numerator_ray(rc), rc.alpha, rc.branch_points, side, tol)


def g_inf_ray(rc: RayConstants) -> complex:
    """lim_{sigma -> infinity} g(i sigma) - phi(i sigma; n+1, t)/(2t) along the ray.

    With phi(i s)/(2t) = (s - 1/s)/2 + i + xi (ln s + i pi/2)/2 the limit is
    int_alpha^inf F - (alpha - 1/alpha)/2 - xi ln(alpha)/2 - i (1 + pi xi/4),
    F being the axis integrand of g minus the derivative of phi/(2t).
    """
    pts = rc.branch_points
    numer = _g_numerator_ray(rc)
    xi, a = rc.xi, rc.alpha

    def primitive(s):
        return 0.5 * (s - 1 / s) + 0.5 * xi * math.log(s)

    ic0 = 1j * rc.c0

    def tail(w):
        # F at sigma = 1/w, with rho = sigma^2 sqrt(prod(1 - b w)); the O(1) and
        # O(w) parts cancel analytically, so only O(w^2) is formed numerically
        w = np.asarray(w, dtype=float)
        em1 = np.expm1(-0.5 * sum(np.log1p(-bp * w) for bp in pts))
        poly = w**4 - rc.c1 * (w + w**3) + ic0 * w**2
        return 0.5 * (em1 * (1 + poly) + poly) - 0.5 * w**2 - 0.5 * xi * w

    near = _axis_integral(numer, a, 2 * a, pts, 1, 1e-13) - (primitive(2 * a) - primitive(a))
    # sigma = 1/w over (2a, infinity), d sigma = dw / w^2
    far = adaptive_quad(lambda w: tail(w) / np.asarray(w, dtype=float) ** 2, 0.0, 1 / (2 * a), 1e-13)
    return near + far - primitive(a) - 1j * (1 + math.pi * xi / 4)


# ---------------------------------------------------------------------------
# sectors of the (n, t) half-plane


@dataclass(frozen=True)
class RegionLabel:
    """One of FastDecay, T_I (with window index m), H_I, T_II, H_II."""

    variant: str
    m: int | None = None

    def __str__(self) -> str:
        return f"T_I({self.m})" if self.variant == "T_I" else self.variant


def _ti_scale(t: float, band: SpectralBand) -> float:
    return math.log(t) / (t * math.log(band.eta1))


def classify_region(n: int, t: float, band: SpectralBand, m_max: int = 2, c_tii: float = 1.0) -> RegionLabel:
    """Label of (n, t) with xi = (n+1)/t.

    Precedence: the T_I windows (half-open, so a shared endpoint goes to the
    lower m), then the fast-decay sector, then T_II (|xi - xi_crit| < C t^(-2/3)),
    then H_I above xi_crit and H_II below it.
    """
    if not t > 0:
        raise ValueError("sectors are defined for t > 0")
    xi = (n + 1) / t
    x = xi - band.xi0
    if t > 1:
        a = _ti_scale(t, band)
        for m in range(m_max + 1):
            if -(2 * m + 1) * a <= x < -(2 * m - 1) * a:
                return RegionLabel("T_I", m)
    if x > 0:
        return RegionLabel("FastDecay")
    xc = xi_crit(band)
    if abs(xi - xc) < c_tii * t ** (-2 / 3):
        return RegionLabel("T_II")
    return RegionLabel("H_I" if xi > xc else "H_II")


def fast_decay_rate(xi: float, band: SpectralBand, samples: int = 401) -> float:
    """min over the band of sigma - 1/sigma + xi ln sigma (positive for xi > xi0)."""
    s = np.linspace(band.eta1, band.eta2, samples)
    return float(np.min(s - 1 / s + xi * np.log(s)))


def error_scale(label: RegionLabel, n: int, t: float, band: SpectralBand) -> float:
    xi = (n + 1) / t
    if label.variant == "FastDecay":
        return math.exp(-max(fast_decay_rate(xi, band), 0.0) * t)
    if label.variant == "T_I":
        m = label.m
        y = (xi - band.xi0) * t * math.log(band.eta1)
        return min(t ** (2 * m - 1) * math.exp(y), t ** (-(2 * m + 1)) * math.exp(-y))
    if label.variant == "T_II":
        return t ** (-1 / 3)
    return 1.0 / t


def q_asym_ray(
    n: int,
    t: float,
    band: SpectralBand,
    r: ReflectionCoefficient,
    m_max: int = 2,
    c_tii: float = 1.0,
) -> tuple[complex, float, RegionLabel]:
    """(leading term, error scale, sector) for q_n(t), t > 0.

    The genus-1 formula is used in H_I, T_II and H_II.  In the fast-decay
    sector and the T_I windows the leading term reported is 0 and the error
    scale carries the size of the neglected contribution.
    """
    label = classify_region(n, t, band, m_max, c_tii)
    scale = error_scale(label, n, t, band)
    if label.variant in ("FastDecay", "T_I"):
        return 0.0j, scale, label
    rc = ray_constants((n + 1) / t, band, r)
    x = (t * rc.Omega + rc.Delta) / (2 * math.pi)
    value = np.exp(2j * t) * 1j ** ((n + 1) % 4) * rc.amplitude * theta_nd_ratio(x, rc.tau_period)
    return complex(value), scale, label
