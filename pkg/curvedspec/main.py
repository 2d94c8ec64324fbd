"""
curvedspec command line
=======================

    curvedspec figures <fig1|fig2|fig3|fig4> [--out PATH] [--config PATH] [--format csv|json]
    curvedspec check [--only NAME ...] [--config PATH] [--out PATH]
    curvedspec query <spectrum|wavefunction|formfactor|limits> [kind-specific flags]

Exit codes: 0 ok, 1 argument error, 2 non-convergence, 3 invariant failure.
Datasets go to stdout unless --out is given; logs go to stderr.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import ValidationError

from curvedspec import __version__, config
from curvedspec.config import RunConfig
from curvedspec.conformance import run_suite
from curvedspec.datasets import Dataset, provenance, write_dataset
from curvedspec.errors import CurvedSpecError, DomainError, UnboundStateError
from curvedspec.figures import FIGURES, build_figure
from curvedspec.formfactor import ff_curve, normalize_curve
from curvedspec.hyperbolic import PTIIConfig, bound_state_count, eckart_solution, ptii_energy, ptii_spectrum, ptii_wavefunction
from curvedspec.lfh import lfh_energy_sq, lfh_spectrum, lfh_wavefunction
from curvedspec.limits import contraction_report
from curvedspec.models import ModelParams
from curvedspec.rosenmorse import RMParams, rmt_energy, rmt_spectrum

logger = logging.getLogger("curvedspec")

FF_METHODS = ("hankel", "closed_form", "reference", "exact_fh", "rosen_morse")


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with 1; argparse's default 2 is reserved for non-convergence."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ============================================================
# Parser
# ============================================================

def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"flat JSON config file (falls back to ${config.CONFIG_ENV_VAR})")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", dest="output_format", choices=["csv", "json"])
    common.add_argument("--kappa", dest="kappa_per_fm", type=float, help="kappa in fm^-1")
    common.add_argument("--R", dest="R_fm", type=float, help="curvature radius in fm")
    common.add_argument("--s", dest="s_override", type=float, help="override s (must exceed 1/2)")
    common.add_argument("--rm-b", dest="rm_b", type=float, help="Rosen-Morse strength b (placeholder default)")
    common.add_argument("--rm-d", dest="rm_d_fm", type=float, help="Rosen-Morse length d in fm (placeholder default)")
    common.add_argument("--rel-tol", dest="rel_tol", type=float)
    common.add_argument("--abs-tol", dest="abs_tol", type=float)
    common.add_argument("--max-subdivisions", dest="max_subdivisions", type=int)
    common.add_argument("--rho-max", dest="rho_max", type=float)
    common.add_argument("--grid-size", dest="grid_size", type=int)
    common.add_argument("--hyperbolic-method", dest="hyperbolic_method", choices=["hankel", "closed_form", "exact_fh"])
    common.add_argument("--q-start", dest="q_start_gev", type=float, help="GeV")
    common.add_argument("--q-stop", dest="q_stop_gev", type=float, help="GeV")
    common.add_argument("--q-step", dest="q_step_gev", type=float, help="GeV")
    common.add_argument("--quiet", action="store_true", help="warnings only, no progress bars")
    common.add_argument("--verbose", action="store_true", help="debug logging")
    return common


_OVERRIDE_KEYS = (
    "output_format", "kappa_per_fm", "R_fm", "s_override", "rm_b", "rm_d_fm", "rel_tol", "abs_tol",
    "max_subdivisions", "rho_max", "grid_size", "hyperbolic_method", "q_start_gev", "q_stop_gev", "q_step_gev",
)


def build_parser() -> CliParser:
    common = _common_flags()
    parser = CliParser(prog="curvedspec", description="Oscillators on the hyperbolic plane: figure datasets and checks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    figures = commands.add_parser("figures", parents=[common], help="emit a figure dataset")
    figures.add_argument("fig_id", choices=FIGURES)
    figures.set_defaults(handler=cmd_figures)

    check = commands.add_parser("check", parents=[common], help="run the conformance suite")
    check.add_argument("--only", nargs="+", metavar="NAME", help="run only the named checks")
    check.set_defaults(handler=cmd_check)

    query = commands.add_parser("query", help="spectra, wavefunctions, form factors, contraction limits")
    kinds = query.add_subparsers(dest="kind", required=True)

    spectrum = kinds.add_parser("spectrum", parents=[common])
    spectrum.add_argument("--model", choices=["lfh", "ptii", "eckart", "rosen_morse"], default="lfh")
    spectrum.add_argument("--n-max", type=int, default=3)
    spectrum.add_argument("--nu", type=int, default=config.DEFAULT_NU)
    spectrum.add_argument("--m", type=int, default=1, help="angular quantum number (l for rosen_morse)")
    spectrum.add_argument("--discretized", action="store_true", help="add the finite-difference eigenvalues")
    spectrum.set_defaults(handler=cmd_spectrum)

    wavefunction = kinds.add_parser("wavefunction", parents=[common])
    wavefunction.add_argument("--model", choices=["lfh", "ptii", "eckart"], default="lfh")
    wavefunction.add_argument("--n", type=int, default=0)
    wavefunction.add_argument("--nu", type=int, default=config.DEFAULT_NU)
    wavefunction.add_argument("--m", type=int, default=1)
    wavefunction.add_argument("--branch", choices=["plus", "minus"], default="plus")
    wavefunction.add_argument("--form", choices=["schrodinger", "surface"], default="schrodinger")
    wavefunction.add_argument("--start", type=float, default=0.005, help="first zeta (fm) or rho for eckart")
    wavefunction.add_argument("--stop", type=float, default=3.0)
    wavefunction.add_argument("--step", type=float, default=0.005)
    wavefunction.set_defaults(handler=cmd_wavefunction)

    formfactor = kinds.add_parser("formfactor", parents=[common])
    formfactor.add_argument("--method", choices=[*FF_METHODS, "all"], default="all")
    formfactor.add_argument("--Q", dest="Q_gev", type=float, nargs="+", help="GeV (default: the q grid)")
    formfactor.add_argument("--normalize", action="store_true", help="divide each curve by G(0)")
    formfactor.set_defaults(handler=cmd_formfactor)

    limits = kinds.add_parser("limits", parents=[common])
    limits.add_argument("--n", type=int, default=0)
    limits.add_argument("--m", type=int, default=1)
    limits.add_argument("--kappa-limit", type=float, default=1.0, help="kappa (fm^-1) for the contraction sequence")
    limits.add_argument("--R-values", type=float, nargs="+", default=[5.0, 10.0, 20.0, 40.0])
    limits.set_defaults(handler=cmd_limits)
    return parser


# ============================================================
# Commands
# ============================================================

def _params(cfg: RunConfig) -> ModelParams:
    return ModelParams(kappa=cfg.kappa_per_fm, R=cfg.R_fm)


def _emit(dataset: Dataset, cfg: RunConfig, args) -> int:
    write_dataset(dataset, cfg.output_format, args.out)
    return 0


def cmd_figures(args, cfg: RunConfig) -> int:
    return _emit(build_figure(args.fig_id, cfg, progress=not args.quiet), cfg, args)


def cmd_check(args, cfg: RunConfig) -> int:
    report = run_suite(cfg, progress=not args.quiet, only=args.only)
    text = json.dumps(report.as_dict(), indent=2) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    report.raise_for_status()
    return 0


def _spectrum_rows(args, cfg: RunConfig) -> tuple[list[dict], str]:
    params = _params(cfg)
    if args.n_max < 0:
        raise DomainError("--n-max must be non-negative")
    if args.model == "lfh":
        ns = range(args.n_max + 1)
        levels = lfh_spectrum(args.nu, params, len(ns), cfg.grid_size) if args.discretized else None
        rows = [{"model": "lfh", "n": n, "m": args.nu, "energy_sq_fm2": lfh_energy_sq(n, args.nu, params)} for n in ns]
        return _attach(rows, levels), "derived"
    if args.model == "ptii":
        ptii = PTIIConfig.from_params(args.m, params, cfg.effective_s(figure_mode=True))
        count = bound_state_count(ptii)
        if count == 0:
            raise UnboundStateError(f"no bound states for m = {args.m}, s = {ptii.s:.6g} (bound-state count is 0)")
        ns = range(min(count, args.n_max + 1))
        levels = ptii_spectrum(ptii, len(ns), cfg.grid_size) if args.discretized else None
        rows = [{"model": "ptii", "n": n, "m": args.m, "energy_sq_fm2": ptii_energy(n, ptii)[1]} for n in ns]
        return _attach(rows, levels), ptii.s_convention
    if args.model == "eckart":
        if args.discretized:
            raise DomainError("the Eckart problem has no bound states to discretize")
        rows = []
        for n in range(args.n_max + 1):
            energy, _ = eckart_solution(n, args.m, 1.0, params.R)
            rows.append({"model": "eckart", "n": n, "m": args.m, "energy_sq_fm2": energy})
        return rows, "none"
    rm = RMParams(b=cfg.rm_b, d=cfg.rm_d_fm, l=args.m)
    ns = range(args.n_max + 1)
    levels = rmt_spectrum(rm, len(ns), cfg.grid_size) if args.discretized else None
    rows = [{"model": "rosen_morse", "n": n, "m": args.m, "energy_sq_fm2": rmt_energy(n, args.m, rm)} for n in ns]
    return _attach(rows, levels), "none"


def _attach(rows: list[dict], levels: Optional[np.ndarray]) -> list[dict]:
    if levels is not None:
        for row, level in zip(rows, levels):
            row["discretized_fm2"] = float(level)
    return rows


def cmd_spectrum(args, cfg: RunConfig) -> int:
    rows, s_convention = _spectrum_rows(args, cfg)
    meta = provenance(cfg, s_convention, "none", model=args.model)
    return _emit(Dataset("spectrum", pd.DataFrame(rows), meta), cfg, args)


def cmd_wavefunction(args, cfg: RunConfig) -> int:
    if args.step <= 0 or args.stop <= args.start or args.start <= 0:
        raise DomainError("need 0 < start < stop and step > 0")
    params = _params(cfg)
    grid = np.round(np.arange(args.start, args.stop + args.step / 2, args.step), 12)
    if args.model == "lfh":
        psi = lfh_wavefunction(args.branch, args.n, args.nu, params, grid)
        frame = pd.DataFrame({"zeta_fm": grid, "psi": psi.values})
        meta = provenance(cfg, "none", "L2 under dzeta", label=psi.label)
    elif args.model == "ptii":
        ptii = PTIIConfig.from_params(args.m, params, cfg.effective_s(figure_mode=True))
        psi = ptii_wavefunction(args.n, ptii, grid / params.R, args.form)
        frame = pd.DataFrame({"zeta_fm": grid, "rho": psi.grid, "psi": psi.values})
        meta = provenance(cfg, ptii.s_convention, f"L2 under {psi.measure}", label=psi.label, s=ptii.s)
    else:
        energy, values = eckart_solution(args.n, args.m, grid, params.R)
        frame = pd.DataFrame({"rho": grid, "U": values})
        meta = provenance(cfg, "none", "unnormalized", energy_fm2=energy)
    return _emit(Dataset("wavefunction", frame, meta), cfg, args)


def cmd_formfactor(args, cfg: RunConfig) -> int:
    Q_gev = np.asarray(args.Q_gev, dtype=float) if args.Q_gev else cfg.q_grid.values_gev()
    if np.any(Q_gev < 0):
        raise DomainError("Q must be non-negative")
    Q = Q_gev / config.HBAR_C_GEV_FM
    params = _params(cfg)
    ptii = PTIIConfig.from_params(config.DEFAULT_NU, params, cfg.effective_s(figure_mode=True))
    rm = RMParams(b=cfg.rm_b, d=cfg.rm_d_fm)
    methods = FF_METHODS if args.method == "all" else (args.method,)
    frames = []
    for method in methods:
        curve = ff_curve(method, Q, params.R, cfg.quad, cfg=ptii, rm=rm, progress=not args.quiet)
        if args.normalize:
            curve = normalize_curve(curve)
        imag = curve.imag_diagnostic if curve.imag_diagnostic is not None else np.full(curve.Q.shape, np.nan)
        frames.append(
            pd.DataFrame({"method": method, "Q_GeV": Q_gev, "Q_fm": curve.Q, "G": curve.G, "G_imag_abs": imag})
        )
    meta = provenance(
        cfg, ptii.s_convention, "G(Q)/G(0)" if args.normalize else "raw", rm_b=cfg.rm_b, rm_d_fm=cfg.rm_d_fm
    )
    return _emit(Dataset("formfactor", pd.concat(frames, ignore_index=True), meta), cfg, args)


def cmd_limits(args, cfg: RunConfig) -> int:
    report = contraction_report(args.n, args.m, args.kappa_limit, args.R_values)
    frame = pd.DataFrame(report.rows(), columns=["R_fm", "energy_error_fm2", "wavefunction_l2_error"])
    meta = provenance(
        cfg, "derived", "unit L2 on zeta grid", fitted_rate=report.fitted_rate, intercept=report.intercept,
        kappa_limit=args.kappa_limit,
    )
    return _emit(Dataset("limits", frame, meta), cfg, args)


# ============================================================
# Entry point
# ============================================================

def _configure_logging(args) -> None:
    level = config.LOG_LEVEL
    if getattr(args, "quiet", False):
        level = "WARNING"
    if getattr(args, "verbose", False):
        level = "DEBUG"
    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    overrides = {key: getattr(args, key, None) for key in _OVERRIDE_KEYS}
    try:
        cfg = RunConfig.load(args.config, overrides)
        return args.handler(args, cfg)
    except ValidationError as e:
        logger.error("❌ invalid arguments: %s", e)
        return 1
    except CurvedSpecError as e:
        logger.error("❌ %s", e.detail)
        return e.exit_code
