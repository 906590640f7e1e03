"""al-gas-lab: batch evaluation of N-soliton, gas and asymptotic potentials.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from . import asymptotics as asy
from . import fredholm as fh
from . import nsoliton as ns
from .numerics import SingularMatrixError
from .spectral import ConfigError, Problem, load_problem, sample_spectrum
from .verification import SUITES, default_problem, run_suite

CSV_HEADER = "# al-gas-lab v1"
COLUMNS = ["n", "t", "method", "re_q", "im_q", "abs_q", "region", "conv_est"]
OVERFLOW = "OVERFLOW"
FAILED = "FAILED"

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    problem: Problem
    n_values: tuple[int, ...]
    t_values: tuple[float, ...]
    N: int = 50
    nodes: int = fh.DEFAULT_NODES
    precision: str = "auto"
    m_max: int = 2
    c_tii: float = 1.0
    tol: float = 1e-6
    fmt: str = "csv"
    jobs: int = 1
    out: str | None = None

    def __post_init__(self):
        if not self.n_values or not self.t_values:
            raise ConfigError("empty n- or t-range")
        if self.nodes < 8:
            raise ConfigError("--nodes must be at least 8")
        if self.N < 1:
            raise ConfigError("--N must be positive")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        if any(t < 0 for t in self.t_values):
            raise ConfigError("times must be nonnegative")


@dataclass(frozen=True)
class ResultRow:
    n: int
    t: float
    method: str
    re_q: float | None
    im_q: float | None
    abs_q: float | None
    region: str = ""
    conv_est: float | None = None
    status: str = "ok"  # ok | overflow | failed


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


def _value_row(n, t, method, q: complex, region="", conv=None) -> ResultRow:
    return ResultRow(n, t, method, float(q.real), float(q.imag), float(abs(q)), region, conv)


def _t0_label(n: int) -> str:
    return "T0_OSC" if n < 0 else "T0_DECAY"


def _evaluate(task) -> ResultRow:
    """Worker entry: one (n, t) point.  Must stay a module-level function for pickling."""
    cfg, n, t = task
    band, r = cfg.problem.band, cfg.problem.reflection
    try:
        if cfg.command == "nsoliton":
            ens = sample_spectrum(band, r, cfg.N)
            return _value_row(n, t, "nsoliton", ns.q_nsoliton(ens, n, t))
        if cfg.command == "gas":
            q, est = fh.q_gas_estimate(band, r, n, t, cfg.nodes, cfg.precision)
            return _value_row(n, t, "gas", q, conv=float(est))
        if cfg.command == "asym":
            if t == 0:
                if n < 0:
                    return _value_row(n, t, "asym", asy.q_asym_t0(n, band, r), _t0_label(n), 1.0 / abs(n))
                return _value_row(n, t, "asym", 0j, _t0_label(n), band.eta1 ** (-n))
            q, scale, label = asy.q_asym_ray(n, t, band, r, cfg.m_max, cfg.c_tii)
            return _value_row(n, t, "asym", q, str(label), scale)
        if cfg.command == "regions":
            label = _t0_label(n) if t == 0 else str(asy.classify_region(n, t, band, cfg.m_max, cfg.c_tii))
            return ResultRow(n, t, "regions", None, None, None, label, None)
    except (ns.SolitonOverflow, fh.GasOverflow, OverflowError):
        return ResultRow(n, t, cfg.command, None, None, None, "", None, "overflow")
    except (SingularMatrixError, ArithmeticError, np.linalg.LinAlgError):
        return ResultRow(n, t, cfg.command, None, None, None, "", None, "failed")
    raise ConfigError(f"unknown command {cfg.command!r}")


def run_grid(cfg: RunConfig) -> list[ResultRow]:
    """Rows in n-major order; the order never depends on ``jobs``."""
    tasks = [(cfg, n, t) for n in cfg.n_values for t in cfg.t_values]
    if cfg.jobs == 1 or len(tasks) == 1:
        return [_evaluate(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        rows = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * cfg.jobs))))
    order = {(n, t): i for i, (_, n, t) in enumerate(tasks)}
    return sorted(rows, key=lambda row: order[(row.n, row.t)])


def render(rows: list[ResultRow], fmt: str) -> str:
    if fmt == "json":
        payload = []
        for row in rows:
            d = asdict(row)
            payload.append({k: d[k] for k in COLUMNS + ["status"]})
        return json.dumps({"format": "al-gas-lab v1", "rows": payload}, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        if row.status == "ok":
            vals = [row.re_q, row.im_q, row.abs_q]
        else:
            marker = OVERFLOW if row.status == "overflow" else FAILED
            vals = [marker] * 3
        writer.writerow([row.n, _fmt(float(row.t)), row.method, *map(_fmt, vals), row.region, _fmt(row.conv_est)])
    return buf.getvalue()


def _write_atomic(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh_out:
            fh_out.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _ranges(args) -> tuple[tuple[int, ...], tuple[float, ...]]:
    n_to = args.n_from if args.n_to is None else args.n_to
    t_to = args.t_from if args.t_to is None else args.t_to
    if n_to < args.n_from:
        raise ConfigError(f"empty n-range [{args.n_from}, {n_to}]")
    if t_to < args.t_from or args.t_steps < 1:
        raise ConfigError(f"empty t-range [{args.t_from}, {t_to}] with {args.t_steps} steps")
    if args.t_steps == 1 and t_to != args.t_from:
        raise ConfigError("a t-range needs --t-steps >= 2")
    n_values = tuple(range(args.n_from, n_to + 1))
    t_values = tuple(float(t) for t in np.linspace(args.t_from, t_to, args.t_steps))
    return n_values, t_values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="al-gas-lab", description="Ablowitz-Ladik soliton gas toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--problem", help="problem JSON (default: band (1.3, 1.8), r = 1)")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--tol", type=float, default=1e-6, help="convergence-estimate warning threshold")

    def grid(p):
        p.add_argument("--n-from", type=int, default=0)
        p.add_argument("--n-to", type=int)
        p.add_argument("--t-from", type=float, default=0.0)
        p.add_argument("--t-to", type=float)
        p.add_argument("--t-steps", type=int, default=1)

    p = sub.add_parser("nsoliton", help="exact N-soliton potential from sampled spectrum")
    common(p), grid(p)
    p.add_argument("--N", type=int, default=50)

    p = sub.add_parser("gas", help="soliton-gas potential from the Fredholm determinant")
    common(p), grid(p)
    p.add_argument("--nodes", type=int, default=fh.DEFAULT_NODES)
    p.add_argument("--precision", choices=("auto", "double", "extended"), default="auto")

    for name, text in (("asym", "leading-order asymptotics"), ("regions", "sector labels only")):
        p = sub.add_parser(name, help=text)
        common(p), grid(p)
        p.add_argument("--m-max", type=int, default=2, help="largest transition-window index")
        p.add_argument("--c-tii", type=float, default=1.0, help="width constant C of the critical strip")

    p = sub.add_parser("verify", help="run an acceptance suite")
    common(p)
    p.add_argument("suite", nargs="?", default="identities", help=f"one of: {', '.join(SUITES)}")
    return parser


def _json_default(obj):
    # numpy scalars and arrays inside check extras
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cmd_verify(args, problem: Problem) -> int:
    if args.suite not in SUITES:
        raise ConfigError(f"unknown suite {args.suite!r}; available suites: {', '.join(SUITES)}")
    results = run_suite(args.suite, problem)
    for res in results:
        print(res.line(), file=sys.stderr if args.format == "json" and args.out is None else sys.stdout)
    summary = {
        "suite": args.suite,
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "checks": [r.to_dict() for r in results],
    }
    text = json.dumps(summary, indent=1, default=_json_default) + "\n"
    if args.out is not None or args.format == "json":
        _write_atomic(text, args.out)
    else:
        print(json.dumps({k: summary[k] for k in ("suite", "passed", "failed")}))
    return EXIT_OK if summary["failed"] == 0 else EXIT_VERIFY


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        problem = load_problem(args.problem) if args.problem else default_problem()
        if args.command == "verify":
            return _cmd_verify(args, problem)
        n_values, t_values = _ranges(args)
        cfg = RunConfig(
            command=args.command,
            problem=problem,
            n_values=n_values,
            t_values=t_values,
            N=getattr(args, "N", 50),
            nodes=getattr(args, "nodes", fh.DEFAULT_NODES),
            precision=getattr(args, "precision", "auto"),
            m_max=getattr(args, "m_max", 2),
            c_tii=getattr(args, "c_tii", 1.0),
            tol=args.tol,
            fmt=args.format,
            jobs=args.jobs,
            out=args.out,
        )
    except ConfigError as exc:
        print(f"al-gas-lab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rows = run_grid(cfg)
    _write_atomic(render(rows, cfg.fmt), cfg.out)
    loose = [r for r in rows if r.conv_est is not None and r.method == "gas" and r.conv_est > cfg.tol]
    if loose:
        print(f"al-gas-lab: {len(loose)} gas rows have convergence estimate above {cfg.tol:g}", file=sys.stderr)
    if any(r.status == "failed" for r in rows):
        print("al-gas-lab: numerical failure at some grid points (rows marked FAILED)", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
