"""Focusing Ablowitz-Ladik soliton gas: exact N-soliton solutions, the
Fredholm-determinant gas limit, and leading-order asymptotics."""

from .spectral import (
    ConfigError,
    Problem,
    ReflectionCoefficient,
    SolitonEnsemble,
    SpectralBand,
    load_problem,
    sample_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Problem",
    "ReflectionCoefficient",
    "SolitonEnsemble",
    "SpectralBand",
    "load_problem",
    "sample_spectrum",
    "__version__",
]
