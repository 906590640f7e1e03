import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from algaslab.numerics import adaptive_quad
from algaslab.spectral import (
    ConfigError,
    Problem,
    ReflectionCoefficient,
    SolitonEnsemble,
    SpectralBand,
    load_problem,
    log_cut_down,
    phase_phi,
    sample_spectrum,
)


def test_band_validation():
    for bad in ((0.9, 1.5), (1.5, 1.5), (2.0, 1.5), (float("nan"), 2.0)):
        with pytest.raises(ConfigError):
            SpectralBand(*bad)


def test_band_derived_quantities():
    b = SpectralBand(1.5, 2.5)
    assert abs(b.amplitude - 0.5 * (math.sqrt(5 / 3) - math.sqrt(3 / 5))) < 1e-15
    assert abs(b.k - (0.5 / 2.5) / (1.5 / 3.5)) < 1e-15
    assert b.xi0 < 0


def test_phase_examples():
    for n, t in ((0, 0.0), (3, 1.7), (-5, 4.0)):
        assert abs(phase_phi(1.0, n, t)) < 1e-15
    for n in (-3, 1, 4):
        assert abs(phase_phi(1j, n, 0.0) - n * 1j * math.pi / 2) < 1e-15
    lam, n, t = 2j, 3, 5.0
    re_alt = t * (lam.imag * (1 - abs(lam) ** -2) + (n / t) * math.log(abs(lam)))
    assert abs(phase_phi(lam, n, t).real - re_alt) < 1e-13
    with pytest.raises(ValueError):
        phase_phi(0.0, 1, 1.0)


def test_log_branch():
    assert abs(log_cut_down(-1).imag - math.pi) < 1e-15
    assert abs(log_cut_down(-1e-9 - 1j).imag - 3 * math.pi / 2) < 1e-6
    assert abs(log_cut_down(1e-9 - 1j).imag + math.pi / 2) < 1e-6


@given(st.floats(0.2, 5.0), st.floats(-math.pi, math.pi), st.integers(-10, 10))
def test_phase_re_at_t0(mod, arg, n):
    lam = mod * complex(math.cos(arg), math.sin(arg))
    assert abs(phase_phi(lam, n, 0.0).real - n * math.log(mod)) < 1e-12


def test_sampling():
    b = SpectralBand(1.5, 2.5)
    r = ReflectionCoefficient("polynomial", {"coeffs": [1.0, 0.2]})
    e1 = sample_spectrum(b, r, 1)
    assert e1.lambdas.tolist() == [1.5]
    assert abs(e1.norms[0] - r(1.5) / (2 * math.pi)) < 1e-16
    e4 = sample_spectrum(b, r, 4)
    assert abs(e4.lambdas[3] - (1.5 + 0.75)) < 1e-15
    assert np.all(e4.norms > 0)
    with pytest.raises(ValueError):
        sample_spectrum(b, r, 0)


def test_riemann_sum_limit():
    # the sampled weights carry 1/(2 pi N); with eta2 - eta1 = 1 this is the band measure
    b = SpectralBand(1.5, 2.5)
    r = ReflectionCoefficient()
    lam = 3.0
    exact = adaptive_quad(lambda s: 1j / (lam - 1j * s), b.eta1, b.eta2, 1e-14) / (2 * math.pi)
    errs = []
    for N in (50, 100, 200, 400):
        e = sample_spectrum(b, r, N)
        errs.append(abs(np.sum(1j * e.norms / (lam - 1j * e.lambdas)) - exact))
    assert all(b2 < a for a, b2 in zip(errs, errs[1:]))


def test_reflection_kinds():
    s = np.linspace(1.3, 1.8, 7)
    assert np.all(ReflectionCoefficient()(s) == 1)
    assert ReflectionCoefficient().is_unit
    poly = ReflectionCoefficient("polynomial", {"coeffs": [1.0, -0.1, 0.05]})
    assert np.allclose(poly(s), 1 - 0.1 * s + 0.05 * s * s)
    tab = ReflectionCoefficient("tabulated", {"s": [1.0, 1.5, 2.0], "r": [1.0, 2.0, 1.5]})
    assert abs(tab(1.5) - 2.0) < 1e-15
    with pytest.raises(ConfigError):
        tab(2.5)


def test_reflection_rejections():
    band = SpectralBand(1.3, 1.8)
    with pytest.raises(ConfigError):
        ReflectionCoefficient("constant", {"value": 0.0})
    with pytest.raises(ConfigError):
        ReflectionCoefficient("cubic", {})
    with pytest.raises(ConfigError):
        ReflectionCoefficient("tabulated", {"s": [1, 1], "r": [1, 2]})
    with pytest.raises(ConfigError):
        ReflectionCoefficient("polynomial", {"coeffs": [1.5, -1.0]}).check_positive(band)
    with pytest.raises(ConfigError):
        ReflectionCoefficient("tabulated", {"s": [1.4, 2.0], "r": [1, 1]}).check_positive(band)
    with pytest.raises(ConfigError):
        Problem(band, ReflectionCoefficient("tabulated", {"s": [1.0, 1.5, 2.0], "r": [1.0, -0.5, 1.0]}))


def test_problem_roundtrip(tmp_path):
    p = Problem(SpectralBand(1.2, 1.6), ReflectionCoefficient("polynomial", {"coeffs": [0.5, 0.5]}))
    path = tmp_path / "p.json"
    path.write_text(json.dumps(p.to_dict()))
    q = load_problem(path)
    assert q == p


@pytest.mark.parametrize(
    "text",
    ["not json", "[1, 2]", '{"eta1": 1.5}', '{"eta1": 2, "eta2": 1.5}', '{"eta1": 1.2, "eta2": 1.5, "reflection": 3}'],
)
def test_problem_file_errors(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_problem(path)


def test_missing_problem_file(tmp_path):
    with pytest.raises(ConfigError):
        load_problem(tmp_path / "nope.json")


def test_ensemble_validation():
    with pytest.raises(ValueError):
        SolitonEnsemble(np.array([0.9]), np.array([1.0]))
    with pytest.raises(ValueError):
        SolitonEnsemble(np.array([2.0, 1.5]), np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        SolitonEnsemble(np.array([2.0]), np.array([-1.0]))
