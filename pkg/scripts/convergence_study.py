"""Nystrom convergence of the gas determinant and the N -> infinity limit.

Prints two tables at one (n, t): successive determinant differences as the
node count grows, then |q^[N] - q_gas| for growing N.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from algaslab import fredholm as fh
from algaslab.nsoliton import q_nsoliton
from algaslab.spectral import ReflectionCoefficient, SpectralBand, sample_spectrum


@dataclass
class StudyConfig:
    eta1: float = 1.5
    eta2: float = 2.5
    n: int = -3
    t: float = 0.3
    nodes: tuple[int, ...] = (8, 16, 24, 32, 48, 64, 96)
    sizes: tuple[int, ...] = (25, 50, 100, 200, 400, 800)


def nystrom_table(cfg: StudyConfig, band, r):
    rows, stagnant = fh.convergence_report(band, r, cfg.n, cfg.t, cfg.nodes)
    print(f"# Nystrom: det(I - iM) at (n, t) = ({cfg.n}, {cfg.t})")
    print(f"{'m':>5} {'Re det':>22} {'Im det':>22} {'diff':>10}")
    for row in rows:
        diff = "" if row.diff is None else f"{row.diff:10.2e}"
        print(f"{row.m:5d} {row.det.real:22.15e} {row.det.imag:22.15e} {diff}")
    print(f"# stagnation flagged: {stagnant}\n")


def soliton_limit_table(cfg: StudyConfig, band, r):
    q_ref = fh.q_gas(band, r, fh.NystromGrid.gauss(band, max(cfg.nodes)), cfg.n, cfg.t)
    print(f"# N-soliton -> gas, q_gas = {q_ref:.12f}")
    print(f"{'N':>5} {'|q_N - q_gas|':>14} {'N * err':>10}")
    for N in cfg.sizes:
        err = abs(q_nsoliton(sample_spectrum(band, r, N), cfg.n, cfg.t) - q_ref)
        print(f"{N:5d} {err:14.4e} {N * err:10.4f}")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--eta", type=float, nargs=2, default=(1.5, 2.5))
    p.add_argument("--n", type=int, default=-3)
    p.add_argument("--t", type=float, default=0.3)
    args = p.parse_args()
    cfg = StudyConfig(eta1=args.eta[0], eta2=args.eta[1], n=args.n, t=args.t)
    band, r = SpectralBand(cfg.eta1, cfg.eta2), ReflectionCoefficient()
    nystrom_table(cfg, band, r)
    soliton_limit_table(cfg, band, r)


if __name__ == "__main__":
    main()
