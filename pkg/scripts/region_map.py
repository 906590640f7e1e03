"""Character map of the sector labels over the (n, t) half-plane."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from algaslab.asymptotics import classify_region, xi_crit
from algaslab.spectral import SpectralBand

GLYPHS = {"FastDecay": ".", "T_I": "1", "H_I": "h", "T_II": "x", "H_II": "H"}


@dataclass
class MapConfig:
    eta1: float = 1.3
    eta2: float = 1.8
    n_min: int = -400
    n_max: int = 40
    t_min: float = 2.0
    t_max: float = 100.0
    rows: int = 25
    cols: int = 110
    m_max: int = 2
    c_tii: float = 1.0


def render(cfg: MapConfig) -> str:
    band = SpectralBand(cfg.eta1, cfg.eta2)
    lines = [f"# xi0 = {band.xi0:.4f}, xi_crit = {xi_crit(band):.4f}; "
             + ", ".join(f"{g} {k}" for k, g in GLYPHS.items())]
    ns = np.linspace(cfg.n_min, cfg.n_max, cfg.cols).round().astype(int)
    for t in np.linspace(cfg.t_max, cfg.t_min, cfg.rows):
        row = "".join(GLYPHS[classify_region(int(n), float(t), band, cfg.m_max, cfg.c_tii).variant] for n in ns)
        lines.append(f"t={t:7.2f} |{row}")
    lines.append(f"{'':10}n from {cfg.n_min} to {cfg.n_max}")
    return "\n".join(lines)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--eta", type=float, nargs=2, default=(1.3, 1.8))
    p.add_argument("--m-max", type=int, default=2)
    p.add_argument("--t-max", type=float, default=100.0)
    args = p.parse_args()
    print(render(MapConfig(eta1=args.eta[0], eta2=args.eta[1], m_max=args.m_max, t_max=args.t_max)))


if __name__ == "__main__":
    main()
