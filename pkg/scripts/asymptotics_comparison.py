"""Gas potential against its leading-order asymptotics.

Two sweeps: n -> -infinity at t = 0, and growing t along a fixed ray
xi = (n+1)/t.  The error column should fall roughly like 1/|n| and 1/t.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from algaslab import asymptotics as asy
from algaslab import fredholm as fh
from algaslab.spectral import ReflectionCoefficient, SpectralBand


@dataclass
class ComparisonConfig:
    eta1: float = 1.3
    eta2: float = 1.8
    r_value: float = 1.0
    nodes: int = 48
    n_values: tuple[int, ...] = (-10, -20, -30, -40, -50, -60)
    xi: float = -5.0
    t_values: tuple[float, ...] = (10.0, 20.0, 40.0, 80.0)
    window: int = 10


def sweep_t0(cfg: ComparisonConfig, band, r, grid):
    consts = asy.gas_constants_t0(band, r)
    print(f"# t = 0: Omega = {consts.Omega:.10f}, Delta = {consts.Delta:.10f}, k = {consts.k:.6f}")
    print(f"{'n':>5} {'|q_gas|':>10} {'|q_asym|':>10} {'error':>10} {'|n| * err':>10}")
    for n in cfg.n_values:
        qg = fh.q_gas(band, r, grid, n, 0.0)
        qa = asy.q_asym_t0(n, band, r, consts)
        err = abs(qg - qa)
        print(f"{n:5d} {abs(qg):10.6f} {abs(qa):10.6f} {err:10.2e} {abs(n) * err:10.4f}")


def sweep_ray(cfg: ComparisonConfig, band, r, grid):
    rc = asy.ray_constants(cfg.xi, band, r)
    print(f"\n# ray xi = {cfg.xi}: alpha = {rc.alpha:.6f}, Omega = {rc.Omega:.8f}, Delta = {rc.Delta:.8f}")
    print(f"{'t':>6} {'region':>9} {'max err':>10} {'t * err':>8}")
    for t0 in cfg.t_values:
        n0 = round(cfg.xi * t0) - 1
        errs, labels = [], set()
        for j in range(cfg.window):
            n = n0 - j
            t = (n + 1) / cfg.xi
            qa, _, label = asy.q_asym_ray(n, t, band, r)
            labels.add(str(label))
            errs.append(abs(fh.q_gas(band, r, grid, n, t) - qa))
        print(f"{t0:6.1f} {'/'.join(sorted(labels)):>9} {max(errs):10.2e} {t0 * max(errs):8.4f}")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--r", type=float, default=1.0, help="constant reflection weight")
    p.add_argument("--xi", type=float, default=-5.0)
    p.add_argument("--skip-ray", action="store_true")
    args = p.parse_args()
    cfg = ComparisonConfig(r_value=args.r, xi=args.xi)
    band = SpectralBand(cfg.eta1, cfg.eta2)
    r = ReflectionCoefficient("constant", {"value": cfg.r_value})
    grid = fh.NystromGrid.gauss(band, cfg.nodes)
    with np.errstate(over="raise"):
        sweep_t0(cfg, band, r, grid)
        if not args.skip_ray:
            sweep_ray(cfg, band, r, grid)


if __name__ == "__main__":
    main()
