"""Command-line front end emitting plot-ready CSV and JSON.

Exit codes: 0 success, 1 runtime or invariant failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys

import numpy as np

from . import bounds, spectra, tapers
from .checks import run_checks
from .eigen import dpss_taper
from .lattice import new_grid
from .prep import centered_spectrum, prep_report, prepare_approx_taper
from .simulator import SpectralInput, coherent_success, readout_distribution, run_tqpe, sample_shots

log = logging.getLogger("taperqpe")

TAPER_NAMES = ("tophat", "sine", "cosine", "dpss", "phi_plus", "phi_minus")


def build_taper(name, grid):
    if name == "tophat":
        return tapers.tophat(grid)
    if name == "sine":
        return tapers.sine(grid)
    if name == "cosine":
        return tapers.cosine(grid)
    if name == "dpss":
        return dpss_taper(grid)
    if name == "phi_plus":
        t = tapers.phi_shift(grid, grid.half_bin)
    elif name == "phi_minus":
        t = tapers.phi_shift(grid, -grid.half_bin)
    else:
        raise ValueError(f"unknown taper {name!r}")
    return tapers.Taper(t.amps, name)


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _grid(args):
    return new_grid(args.ell, args.m, args.K)


def cmd_design(args):
    grid = _grid(args)
    ts = [build_taper(n, grid) for n in (args.taper or ["dpss"])]
    if args.format == "csv":
        buf = io.StringIO()
        tapers.write_csv(ts, buf)
        _emit(buf.getvalue(), args.out)
    else:
        payload = [t.to_json() for t in ts]
        _emit(json.dumps(payload[0] if len(payload) == 1 else payload) + "\n", args.out)
    return 0


def cmd_sweep(args):
    grid = _grid(args)
    ts = [build_taper(n, grid) for n in (args.taper or ["tophat", "sine", "dpss"])]
    measures = spectra.MEASURES if args.measure == "all" else args.measure
    records = spectra.delta_sweep(ts, grid, args.points, args.range == "full", measures, args.threads)
    if args.format == "json":
        _emit(json.dumps([{"Delta": r.Delta, **r.values} for r in records]) + "\n", args.out)
    else:
        buf = io.StringIO()
        spectra.write_sweep_csv(records, buf)
        _emit(buf.getvalue(), args.out)
    return 0


def cmd_simulate(args):
    grid = _grid(args)
    taper = build_taper((args.taper or ["dpss"])[0], grid)
    spectral = SpectralInput.uniform(args.theta or [0.0])
    state = run_tqpe(taper, spectral, grid)
    dist = readout_distribution(state)
    payload = {
        "N": grid.N,
        "taper": taper.label,
        "thetas": spectral.thetas.tolist(),
        "distribution": dist.tolist(),
        "total": float(dist.sum()),
        "coherent_success": coherent_success(state, spectral, grid),
    }
    if args.shots:
        payload["shots"] = sample_shots(state, args.shots, args.seed).tolist()
    _emit(json.dumps(payload) + "\n", args.out)
    return 0


def cmd_bounds(args):
    reports = []
    for eps in args.eps or [0.1]:
        reports += bounds.report_for_eps(eps)
        if eps < 0.5:
            try:
                reports.append(bounds.required_m_zhu(args.ell, eps, dominant_term_only=True))
            except ValueError as exc:
                log.warning("%s", exc)
    if args.N is not None:
        K = 0 if args.K is None else args.K
        reports.append(bounds.karnik_lower_bound(args.N, K))
    _emit(json.dumps([r.to_dict() for r in reports]) + "\n", args.out)
    return 0


def cmd_prep(args):
    grid = _grid(args)
    eps = (args.eps or [0.1])[0]
    n_params = args.nprime
    if args.format == "csv":
        res = prepare_approx_taper(grid, eps, n_params)
        exact = np.abs(centered_spectrum(dpss_taper(grid)))
        approx = np.abs(centered_spectrum(res.taper))
        lines = ["bin,exact,approx"]
        lines += [f"{k - grid.N // 2},{exact[k]:.17g},{approx[k]:.17g}" for k in range(grid.N)]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(json.dumps(prep_report(grid, eps, n_params)) + "\n", args.out)
    return 0


def cmd_verify(args):
    results = run_checks(quick=args.quick, seed=args.seed or 0)
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}" for r in results]
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(r.ok for r in results) else 1


COMMANDS = {
    "design": cmd_design,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "bounds": cmd_bounds,
    "prep": cmd_prep,
    "verify": cmd_verify,
}


def make_parser():
    parser = argparse.ArgumentParser(prog="taperqpe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--ell", type=int, default=3)
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--K", type=int, default=None)
        p.add_argument("--taper", action="append", choices=TAPER_NAMES)
        p.add_argument("--eps", type=float, action="append")
        p.add_argument("--theta", type=float, action="append")
        p.add_argument("--points", type=int, default=201)
        p.add_argument("--range", choices=("half", "full"), default="half")
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv" if name == "sweep" else "json")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=None)
        if name == "sweep":
            p.add_argument("--measure", choices=spectra.MEASURES + ("all",), default="window")
        if name == "simulate":
            p.add_argument("--shots", type=int, default=0)
        if name == "bounds":
            p.add_argument("--N", type=int, default=None)
        if name == "prep":
            p.add_argument("--nprime", type=int, default=None)
        if name == "verify":
            p.add_argument("--quick", action="store_true")
    return parser


def main(argv=None):
    level = os.environ.get("TAPERQPE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
