import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from algaslab import fredholm as fh
from algaslab.nsoliton import c_nsoliton, q_nsoliton, tau
from algaslab.spectral import ReflectionCoefficient, SolitonEnsemble, SpectralBand, sample_spectrum
from algaslab.verification import al_residual

WIDE = SpectralBand(1.5, 2.5)
R1 = ReflectionCoefficient()


def grid(band=WIDE, m=96):
    return fh.NystromGrid.gauss(band, m)


def test_grid_validation():
    g = grid(m=16)
    assert g.m == 16 and np.all((g.svals > 1.5) & (g.svals < 2.5))
    with pytest.raises(ValueError):
        fh.NystromGrid(np.array([1.6]), np.array([-1.0]))


def test_kernel_matrix_properties():
    km = fh.kernel_matrix(WIDE, R1, grid(m=24), -3, 0.0)
    M = km.entries
    assert np.isrealobj(M)
    assert np.allclose(M, M.T, rtol=1e-15, atol=0)
    assert np.min(np.linalg.eigvalsh(M)) > -1e-14
    tiny = ReflectionCoefficient("constant", {"value": 1e-12})
    assert np.max(np.abs(fh.kernel_matrix(WIDE, tiny, grid(m=24), 0, 0.3).entries)) < 1e-11


def test_kernel_overflow():
    with pytest.raises(fh.GasOverflow):
        fh.kernel_matrix(WIDE, R1, grid(), -1000, 0.0)


def test_det_decays_to_one():
    det = fh.fredholm_det(WIDE, R1, None, 30, 0.0)
    assert abs(det - 1) < 1e-6


def test_det_matches_discrete_tau():
    # the determinant continues tau^[N](i) with the sampled spectrum
    n, t = -4, 0.3
    det = fh.fredholm_det(WIDE, R1, grid(m=64), n, t)
    errs = [abs(det - tau(sample_spectrum(WIDE, R1, N), n, t, 1j)) for N in (50, 100, 200)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 1e-3


def test_q_matches_nsoliton_limit():
    q = fh.q_gas(WIDE, R1, grid(), -3, 0.5)
    assert abs(q - q_nsoliton(sample_spectrum(WIDE, R1, 400), -3, 0.5)) < 1e-3
    assert abs(fh.q_gas(WIDE, R1, None, 30, 0.0)) < 1e-6
    tiny = ReflectionCoefficient("constant", {"value": 1e-10})
    assert abs(fh.q_gas(WIDE, tiny, None, -2, 0.4)) < 1e-9


def test_trace_formula_against_differencing(rng):
    h = 1e-4
    g = grid(m=64)
    for _ in range(10):
        n = int(rng.integers(-4, 5))
        t = float(rng.uniform(0.1, 1.5))
        im = lambda s: fh.log_fredholm_det(WIDE, R1, g, n + 1, s).imag
        deriv = (im(t + h) - im(t - h)) / (2 * h)
        expected = 1j ** ((n + 1) % 4) * np.exp(2j * t) * deriv
        assert abs(fh.q_gas(WIDE, R1, g, n, t) - expected) < 1e-6


@pytest.mark.parametrize("n,t", [(-2, 0.4), (0, 0.8), (1, 0.4), (2, 0.8)])
def test_al_residual_gas(n, t):
    g = grid()
    assert al_residual(lambda m, s: fh.q_gas(WIDE, R1, g, m, s), n, t) < 1e-5


def test_c_gas():
    g = grid()
    assert abs(fh.c_gas(WIDE, R1, g, 40, 0.0) - 1) < 1e-6
    for n in range(-3, 3):
        lhs = fh.c_gas(WIDE, R1, g, n, 0.3)
        rhs = (1 + abs(fh.q_gas(WIDE, R1, g, n, 0.3)) ** 2) * fh.c_gas(WIDE, R1, g, n + 1, 0.3)
        assert abs(lhs - rhs) < 1e-6 * lhs
    assert abs(fh.c_gas(WIDE, R1, g, -2, 0.2) - c_nsoliton(sample_spectrum(WIDE, R1, 400), -2, 0.2)) < 1e-3


def test_extended_precision_agrees_where_double_is_fine():
    g = grid(m=32)
    for n, t in ((-3, 0.2), (2, 1.0)):
        a = fh.q_gas(WIDE, R1, g, n, t, precision="double")
        b = fh.q_gas(WIDE, R1, g, n, t, precision="extended")
        assert abs(a - b) < 1e-12
        la = fh.log_fredholm_det(WIDE, R1, g, n, t, precision="double")
        lb = fh.log_fredholm_det(WIDE, R1, g, n, t, precision="extended")
        assert abs(la - lb) < 1e-12


def test_extended_precision_needed_far_left():
    # in double the Cauchy core is numerically singular here; the scaled path converges in m
    band = SpectralBand(1.3, 1.8)
    q48 = fh.q_gas(band, R1, fh.NystromGrid.gauss(band, 48), -60, 0.0)
    q64 = fh.q_gas(band, R1, fh.NystromGrid.gauss(band, 64), -60, 0.0)
    assert abs(q48 - q64) < 1e-8
    with pytest.raises(ValueError):
        fh.q_gas(band, R1, None, 0, 0.0, precision="quad")


def test_estimate_and_report():
    q, est = fh.q_gas_estimate(WIDE, R1, -1, 0.3, m=48)
    assert est < 1e-12
    rows, stagnant = fh.convergence_report(WIDE, R1, -2, 0.3, [4, 8, 16, 32])
    diffs = [r.diff for r in rows[1:]]
    assert diffs[1] < diffs[0] and diffs[2] < max(diffs[1], 1e-14)
    assert not stagnant
    rows, _ = fh.convergence_report(WIDE, R1, -2, 0.0, [12])
    assert len(rows) == 1 and rows[0].diff is None
    with pytest.raises(ValueError):
        fh.convergence_report(WIDE, R1, 0, 0.0, [8, 8])


def test_t0_determinant_is_not_real():
    # det(I - iM) with M real symmetric positive semidefinite: arg det = -sum arctan(mu_j) != 0
    km = fh.kernel_matrix(WIDE, R1, grid(m=32), 0, 0.0)
    mu = np.linalg.eigvalsh(km.entries)
    ld = fh.log_fredholm_det(WIDE, R1, grid(m=32), 0, 0.0)
    assert abs(ld.imag + np.sum(np.arctan(mu))) < 1e-12
    assert abs(ld.real - 0.5 * np.sum(np.log1p(mu**2))) < 1e-12


@given(st.integers(-5, 5), st.floats(0.0, 2.0))
def test_gas_q_finite(n, t):
    q = fh.q_gas(WIDE, R1, grid(m=32), n, t)
    assert math.isfinite(abs(q))
