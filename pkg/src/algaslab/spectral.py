"""Problem definition: the spectral band, the reflection weight and the phase.

Band coordinates are real: a point of the upper band is ``lambda = i*s`` with
``eta1 < s < eta2``.  The reflection coefficient is stored as a positive
function of ``s``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from scipy.interpolate import PchipInterpolator


class ConfigError(ValueError):
    """Invalid problem definition."""


@dataclass(frozen=True)
class SpectralBand:
    eta1: float
    eta2: float

    def __post_init__(self):
        if not (math.isfinite(self.eta1) and math.isfinite(self.eta2)):
            raise ConfigError("band endpoints must be finite")
        if not 1.0 < self.eta1 < self.eta2:
            raise ConfigError(f"need 1 < eta1 < eta2, got ({self.eta1}, {self.eta2})")

    @property
    def l1(self) -> float:
        return (self.eta1 - 1) / (self.eta1 + 1)

    @property
    def l2(self) -> float:
        return (self.eta2 - 1) / (self.eta2 + 1)

    @property
    def k(self) -> float:
        """Elliptic modulus l1 / l2 of the t = 0 curve."""
        return self.l1 / self.l2

    @property
    def amplitude(self) -> float:
        """Leading-order amplitude factor (sqrt(eta2/eta1) - sqrt(eta1/eta2)) / 2."""
        return 0.5 * (math.sqrt(self.eta2 / self.eta1) - math.sqrt(self.eta1 / self.eta2))

    @property
    def xi0(self) -> float:
        """Edge of the fast-decay sector, -(eta1 - 1/eta1) / ln(eta1)."""
        return -(self.eta1 - 1 / self.eta1) / math.log(self.eta1)


@dataclass(frozen=True)
class ReflectionCoefficient:
    """Positive weight r(i s) on the band.

    kind="constant":   params = {"value": c}
    kind="polynomial": params = {"coeffs": [a0, a1, ...]}  (r = a0 + a1 s + ...)
    kind="tabulated":  params = {"s": [...], "r": [...]}   monotone cubic in s
    """

    kind: str = "constant"
    params: dict = field(default_factory=lambda: {"value": 1.0})

    def __post_init__(self):
        if self.kind == "constant":
            value = float(self.params.get("value", 1.0))
            if not value > 0:
                raise ConfigError(f"constant reflection must be positive, got {value}")
        elif self.kind == "polynomial":
            coeffs = self.params.get("coeffs")
            if not coeffs:
                raise ConfigError("polynomial reflection needs a nonempty 'coeffs' list")
        elif self.kind == "tabulated":
            s = np.asarray(self.params.get("s", []), dtype=float)
            r = np.asarray(self.params.get("r", []), dtype=float)
            if s.ndim != 1 or len(s) < 2 or s.shape != r.shape:
                raise ConfigError("tabulated reflection needs matching 's' and 'r' lists, length >= 2")
            if np.any(np.diff(s) <= 0):
                raise ConfigError("tabulated abscissae must be strictly increasing")
            object.__setattr__(self, "_interp", PchipInterpolator(s, r, extrapolate=False))
        else:
            raise ConfigError(f"unknown reflection kind {self.kind!r}")

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "constant":
            return np.full_like(s, float(self.params.get("value", 1.0)))
        if self.kind == "polynomial":
            return np.polynomial.polynomial.polyval(s, self.params["coeffs"])
        out = self._interp(s)
        if np.any(np.isnan(out)):
            raise ConfigError("tabulated reflection evaluated outside its table")
        return out

    @property
    def is_unit(self) -> bool:
        return self.kind == "constant" and float(self.params.get("value", 1.0)) == 1.0

    def check_positive(self, band: SpectralBand, samples: int = 2001) -> None:
        """Reject weights that are not strictly positive on [eta1, eta2]."""
        grid = np.linspace(band.eta1, band.eta2, samples)
        if self.kind == "tabulated":
            s = np.asarray(self.params["s"], dtype=float)
            if s[0] > band.eta1 or s[-1] < band.eta2:
                raise ConfigError("tabulated reflection must cover the whole band")
            grid = np.union1d(grid, s[(s >= band.eta1) & (s <= band.eta2)])
        if self.kind == "polynomial":
            roots = np.polynomial.polynomial.polyroots(self.params["coeffs"])
            real = roots[np.abs(roots.imag) < 1e-12].real
            grid = np.union1d(grid, real[(real >= band.eta1) & (real <= band.eta2)])
        values = self(grid)
        if not np.all(np.isfinite(values)) or np.min(values) <= 0:
            raise ConfigError(f"reflection coefficient not positive on the band (min {np.min(values):.3g})")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}


@dataclass(frozen=True)
class Problem:
    band: SpectralBand
    reflection: ReflectionCoefficient = field(default_factory=ReflectionCoefficient)

    def __post_init__(self):
        self.reflection.check_positive(self.band)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Problem":
        try:
            band = SpectralBand(float(data["eta1"]), float(data["eta2"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad band specification: {exc}") from exc
        refl = data.get("reflection", {"kind": "constant", "params": {"value": 1.0}})
        if not isinstance(refl, dict) or "kind" not in refl:
            raise ConfigError("'reflection' must be an object with a 'kind'")
        return cls(band, ReflectionCoefficient(refl["kind"], dict(refl.get("params", {}))))

    def to_dict(self) -> dict:
        return {"eta1": self.band.eta1, "eta2": self.band.eta2, "reflection": self.reflection.to_dict()}


def load_problem(path: str | Path) -> Problem:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read problem file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"problem file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("problem file must hold a JSON object")
    return Problem.from_dict(data)


def log_cut_down(lam: complex) -> complex:
    """log with its cut on the negative imaginary axis: arg in (-pi/2, 3pi/2]."""
    lam = complex(lam)
    if lam == 0:
        raise ValueError("log of zero")
    arg = cmath.phase(lam)
    if arg <= -math.pi / 2:
        arg += 2 * math.pi
    return complex(math.log(abs(lam)), arg)


def phase_phi(lam: complex, n: int, t: float) -> complex:
    """phi(lambda; n, t) = -i t (lambda + 1/lambda - 2) + n ln(lambda)."""
    lam = complex(lam)
    if lam == 0:
        raise ValueError("phi is singular at lambda = 0")
    return -1j * t * (lam + 1 / lam - 2) + n * log_cut_down(lam)


@dataclass(frozen=True)
class SolitonEnsemble:
    lambdas: np.ndarray
    norms: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        nrm = np.asarray(self.norms, dtype=float)
        if lam.shape != nrm.shape or lam.ndim != 1:
            raise ValueError("lambdas and norms must be 1-d and of equal length")
        if len(lam) and (np.any(lam <= 1) or np.any(np.diff(lam) <= 0)):
            raise ValueError("eigenvalues must exceed 1 and increase strictly")
        if np.any(nrm <= 0):
            raise ValueError("norming constants must be positive")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "norms", nrm)

    def __len__(self) -> int:
        return len(self.lambdas)


def sample_spectrum(band: SpectralBand, r: ReflectionCoefficient, N: int) -> SolitonEnsemble:
    """Left-endpoint sampling: lambda_j = eta1 + (j-1) h, Lambda_j = r(i lambda_j) / (2 pi N)."""
    if N < 1:
        raise ValueError("N must be positive")
    lam = band.eta1 + np.arange(N) * (band.eta2 - band.eta1) / N
    return SolitonEnsemble(lam, r(lam) / (2 * np.pi * N))
