"""Command-line surface: density and current profiles, Wigner grids, arrival
times, config-driven sweeps, and the Monte Carlo validation report.

Exit codes: 0 success, 1 validation error (bad flags, bad config file),
2 numerical failure (quadrature or cutoff non-convergence) or a failed
Monte Carlo validation, with the offending configuration echoed.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .arrival import arrival_time_classical, arrival_time_quantum, cutoff_time
from .classical import classical_width, j_c, rho_c
from .csvout import write_rows
from .errors import NumericalError, ValidationError
from .montecarlo import mc_flux, mc_mean_arrival, mc_rho_c, position_bins, sample_d0
from .params import DetectorConfig, make_params
from .quantum import j_q, momentum_density, rho_q, width
from .runconfig import dumps as dump_config
from .runconfig import load as load_config
from .sweep import SweepRow, run_sweep
from .wigner import default_phase_grid, wigner_closed, wigner_marginals


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; remap them onto the
    # validation path (exit 1) instead
    def error(self, message):
        raise ValidationError(message)


def _add_packet_args(p):
    p.add_argument("--sigma0", type=float, required=True, help="initial packet width (cm)")
    p.add_argument("--u", type=float, required=True, help="group velocity (cm/s)")
    p.add_argument("--C", type=float, required=True, help="dimensionless squeezing parameter")
    p.add_argument("--mass", type=float, required=True, help="particle mass (amu)")


def _add_out_arg(p):
    p.add_argument("--out", default="-", help="CSV output path, '-' for stdout (default)")


def _emit(rows, out):
    if out == "-":
        return write_rows(rows, sys.stdout)
    with open(out, "w", newline="") as fh:
        return write_rows(rows, fh)


def _packet_echo(args):
    return f"sigma0={args.sigma0:g} u={args.u:g} C={args.C:g} mass_amu={args.mass:g}"


def _cmd_density(args):
    params = make_params(args.sigma0, args.u, args.C, args.mass)
    if args.t < 0:
        raise ValidationError(f"--t must be >= 0, got {args.t}")
    if (args.xmin is None) != (args.xmax is None):
        raise ValidationError("give both --xmin and --xmax or neither")
    if args.xmin is None:
        half = 6.0 * max(float(width(params, args.t)), float(classical_width(params, args.t)))
        center = params.u * args.t
        xmin, xmax = center - half, center + half
    else:
        xmin, xmax = args.xmin, args.xmax
    if not xmin < xmax:
        raise ValidationError(f"need xmin < xmax, got [{xmin}, {xmax}]")
    xs = np.linspace(xmin, xmax, args.nx)
    rows = [SweepRow("t", args.t, "x", float(x), "rho_q", float(v)) for x, v in zip(xs, rho_q(params, xs, args.t))]
    rows += [SweepRow("t", args.t, "x", float(x), "rho_c", float(v)) for x, v in zip(xs, rho_c(params, xs, args.t))]
    _emit(rows, args.out)
    return 0


def _cmd_current(args):
    params = make_params(args.sigma0, args.u, args.C, args.mass)
    if (args.tmin is None) != (args.tmax is None):
        raise ValidationError("give both --tmin and --tmax or neither")
    if args.tmin is None:
        if not (params.u > 0 and args.X / params.u > 0):
            raise ValidationError("default time window needs X/u > 0; pass --tmin/--tmax explicitly")
        t_transit = args.X / params.u
        tmin, tmax = 0.8 * t_transit, 1.2 * t_transit
    else:
        tmin, tmax = args.tmin, args.tmax
    if not (0 <= tmin < tmax):
        raise ValidationError(f"need 0 <= tmin < tmax, got [{tmin}, {tmax}]")
    ts = np.linspace(tmin, tmax, args.nt)
    rows = [SweepRow("X", args.X, "t", float(t), "j_q", float(v)) for t, v in zip(ts, j_q(params, args.X, ts))]
    rows += [SweepRow("X", args.X, "t", float(t), "j_c", float(v)) for t, v in zip(ts, j_c(params, args.X, ts))]
    _emit(rows, args.out)
    return 0


def _cmd_wigner(args):
    params = make_params(args.sigma0, args.u, args.C, args.mass)
    if args.t < 0:
        raise ValidationError(f"--t must be >= 0, got {args.t}")
    xs, ps = default_phase_grid(params, args.t, nx=args.nx, np_count=args.np, x_sigmas=args.x_sigmas, p_sigmas=args.p_sigmas)
    rows = []
    for p in ps:
        vals = wigner_closed(params, xs, p, args.t)
        rows.extend(SweepRow("p", float(p), "x", float(x), "wigner", float(v)) for x, v in zip(xs, vals))
    _emit(rows, args.out)

    # marginal fidelity report (stderr, so stdout stays valid CSV)
    marg = wigner_marginals(params, args.t, xs, ps)
    rq = rho_q(params, xs, args.t)
    keep = rq > 1e-12 * rq.max()
    dev_x = np.max(np.abs(marg.x_marginal[keep] / rq[keep] - 1.0))
    md = momentum_density(params, ps)
    keep_p = md > 1e-12 * md.max()
    dev_p = np.max(np.abs(marg.p_marginal[keep_p] / md[keep_p] - 1.0))
    print(f"wigner x-marginal vs rho_q: max relative deviation {dev_x:.3e} over {int(keep.sum())} points", file=sys.stderr)
    print(f"wigner p-marginal vs momentum density: max relative deviation {dev_p:.3e} over {int(keep_p.sum())} points", file=sys.stderr)
    return 0


def _detector_from_args(args):
    if args.fixed_cutoff is not None:
        return DetectorConfig(
            X=args.X, cutoff="fixed", fixed_cutoff=args.fixed_cutoff,
            quad_rel_tol=args.rel_tol, max_cutoff_iters=args.max_iters,
        )
    return DetectorConfig(X=args.X, quad_rel_tol=args.rel_tol, max_cutoff_iters=args.max_iters)


def _cmd_arrival_time(args):
    params = make_params(args.sigma0, args.u, args.C, args.mass)
    det = _detector_from_args(args)
    try:
        for label, result in (
            ("quantum", arrival_time_quantum(params, det)),
            ("classical", arrival_time_classical(params, det)),
        ):
            print(
                f"{label}: tau_bar = {result.tau_bar:.12g} s  T_cutoff = {result.t_cutoff:.12g} s  "
                f"arrival_probability = {result.denominator:.12g}  "
                f"negative_flux_fraction = {result.negative_flux_fraction:.3e}"
            )
    except NumericalError as exc:
        raise type(exc)(f"{exc} [{_packet_echo(args)} X={args.X:g}]") from exc
    return 0


def _cmd_sweep(args):
    cfg = load_config(args.config)
    out = args.out or cfg.output_path
    if not out or out == "-":
        raise ValidationError("sweep needs an output path: set [output] path in the config or pass --out")
    spec = cfg.to_sweep_spec()
    result = run_sweep(spec)
    with open(out, "w", newline="") as fh:
        n = write_rows(result.rows, fh)
    meta_path = f"{out}.meta.toml"
    with open(meta_path, "w") as fh:
        fh.write(f"# qcarrival {__version__}\n")
        fh.write(dump_config(cfg))
    n_err = len(result.error_rows)
    print(f"wrote {n} rows ({n_err} error rows) to {out}; resolved config in {meta_path}")
    return 0


def _cmd_mc_validate(args):
    if args.config is not None:
        cfg = load_config(args.config)
        params = cfg.to_params()
        X = cfg.X
        t = cfg.t_eval
        count = cfg.mc_count or 1_000_000
        seed = cfg.mc_seed if cfg.mc_seed is not None else 20250810
        det = cfg.to_detector()
        if t is None:
            raise ValidationError("mc-validate via --config needs [sweep] t_eval for the position histogram")
    else:
        for flag in ("sigma0", "u", "C", "mass", "X", "t"):
            if getattr(args, flag) is None:
                raise ValidationError(f"--{flag} is required (or use --config)")
        params = make_params(args.sigma0, args.u, args.C, args.mass)
        X, t, count, seed = args.X, args.t, args.count, args.seed
        det = DetectorConfig(X=X)
    if not params.u > 0:
        raise ValidationError("mc-validate needs u > 0 (the packet must approach the detector)")

    sample = sample_d0(params, count, seed)
    checks = []

    # initial-ensemble moments
    sx, sp = params.position_spread, params.momentum_spread
    n = sample.count
    z_mean_x = abs(np.mean(sample.x0)) / (sx / np.sqrt(n))
    z_var_x = abs(np.var(sample.x0, ddof=1) - sx**2) / (sx**2 * np.sqrt(2.0 / (n - 1)))
    z_mean_p = abs(np.mean(sample.p0) - params.p_bar) / (sp / np.sqrt(n))
    z_var_p = abs(np.var(sample.p0, ddof=1) - sp**2) / (sp**2 * np.sqrt(2.0 / (n - 1)))
    z_corr = abs(np.corrcoef(sample.x0, sample.p0)[0, 1]) * np.sqrt(n)
    print(f"sample moments (count={n}, seed={seed}):")
    for name, z in (("mean(x0)", z_mean_x), ("var(x0)", z_var_x), ("mean(p0)", z_mean_p),
                    ("var(p0)", z_var_p), ("corr(x0,p0)", z_corr)):
        ok = z <= 4.0
        checks.append(ok)
        print(f"  {name:<12s} z = {z:5.2f}  {'pass' if ok else 'FAIL'} (<= 4)")

    # position histogram vs closed-form density
    hist = mc_rho_c(sample, params, position_bins(params, t), t)
    centers, edges = hist.centers, hist.edges
    expected_p = (
        (rho_c(params, edges[:-1], t) + 4.0 * rho_c(params, centers, t) + rho_c(params, edges[1:], t))
        / 6.0 * np.diff(edges)
    )
    sigma_bin = np.sqrt(np.maximum(n * expected_p * (1.0 - expected_p), 1.0))
    z_bins = np.abs(hist.counts - n * expected_p) / sigma_bin
    ok = bool(np.all(z_bins <= 4.0))
    checks.append(ok)
    print(f"position histogram at t={t:g}: {len(centers)} bins, worst |z| = {z_bins.max():.2f}, "
          f"bins beyond 4 sigma: {int(np.sum(z_bins > 4.0))}  {'pass' if ok else 'FAIL'}")

    # crossing flux vs closed-form current
    t_transit = X / params.u
    w_t = float(classical_width(params, t_transit)) / params.u
    lo = max(t_transit - 4.0 * w_t, 0.0)
    flux = mc_flux(sample, params, X, np.linspace(lo, t_transit + 4.0 * w_t, 81))
    rich = flux.n_crossings >= 100
    z_flux = np.abs(flux.value[rich] - j_c(params, X, flux.centers[rich])) / flux.std_error[rich]
    frac = float(np.mean(z_flux <= 3.0)) if rich.any() else 0.0
    ok = frac >= 0.95 and rich.any()
    checks.append(ok)
    print(f"flux at X={X:g}: {int(rich.sum())} bins with >= 100 crossings, "
          f"{frac:.1%} within 3 std_error  {'pass' if ok else 'FAIL'} (>= 95%)")

    # mean arrival time: trajectories vs quadrature of the classical current
    try:
        T = cutoff_time(params, det)
        reference = arrival_time_classical(params, det)
        mc = mc_mean_arrival(sample, params, X, T)
        z_tau = abs(mc.tau - reference.tau_bar) / mc.std_error
        ok = z_tau <= 3.0
        checks.append(ok)
        print(f"mean arrival: MC {mc.tau:.9g} +/- {mc.std_error:.3g} s (n={mc.n_crossings}); "
              f"current quadrature {reference.tau_bar:.9g} s; |diff| = {z_tau:.2f} std_error  "
              f"{'pass' if ok else 'FAIL'} (<= 3)")
    except NumericalError as exc:
        raise type(exc)(f"{exc} [mc-validate X={X:g} t={t:g} count={count} seed={seed}]") from exc

    if all(checks):
        print("overall: PASS")
        return 0
    print(f"overall: FAIL [X={X:g} t={t:g} count={count} seed={seed} "
          f"sigma0={params.sigma0:g} u={params.u:g} C={params.C:g}]")
    return 2


def build_parser() -> _Parser:
    parser = _Parser(prog="qcarrival", description=__doc__)
    parser.add_argument("--version", action="version", version=f"qcarrival {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="rho_q and rho_c profiles over x at a fixed time")
    _add_packet_args(p)
    p.add_argument("--t", type=float, required=True, help="evaluation time (s)")
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float)
    p.add_argument("--nx", type=int, default=201)
    _add_out_arg(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("current", help="j_q and j_c at the detector over a time window")
    _add_packet_args(p)
    p.add_argument("--X", type=float, required=True, help="detector location (cm)")
    p.add_argument("--tmin", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--nt", type=int, default=201)
    _add_out_arg(p)
    p.set_defaults(func=_cmd_current)

    p = sub.add_parser("wigner", help="Wigner values on a phase grid plus a marginal check report")
    _add_packet_args(p)
    p.add_argument("--t", type=float, required=True, help="evaluation time (s)")
    p.add_argument("--nx", type=int, default=41)
    p.add_argument("--np", type=int, default=41)
    p.add_argument("--x-sigmas", type=float, default=8.0, dest="x_sigmas")
    p.add_argument("--p-sigmas", type=float, default=8.0, dest="p_sigmas")
    _add_out_arg(p)
    p.set_defaults(func=_cmd_wigner)

    p = sub.add_parser("arrival-time", help="mean arrival time from the quantum and classical currents")
    _add_packet_args(p)
    p.add_argument("--X", type=float, required=True, help="detector location (cm)")
    p.add_argument("--fixed-cutoff", type=float, default=None, help="bypass the three-sigma cutoff (s)")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--max-iters", type=int, default=5000)
    p.set_defaults(func=_cmd_arrival_time)

    p = sub.add_parser("sweep", help="run a sweep described by a TOML config file")
    p.add_argument("--config", required=True, help="TOML sweep configuration")
    p.add_argument("--out", default=None, help="CSV output path (overrides [output] path)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("mc-validate", help="Monte Carlo trajectory oracle vs the closed forms")
    for flag, help_text in (
        ("--sigma0", "initial packet width (cm)"),
        ("--u", "group velocity (cm/s)"),
        ("--C", "squeezing parameter"),
        ("--mass", "mass (amu)"),
        ("--X", "detector location (cm)"),
        ("--t", "position-histogram time (s)"),
    ):
        p.add_argument(flag, type=float, default=None, help=help_text)
    p.add_argument("--count", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=20250810)
    p.add_argument("--config", default=None, help="read packet/detector/mc settings from a config file")
    p.set_defaults(func=_cmd_mc_validate)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def main():
    raise SystemExit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
