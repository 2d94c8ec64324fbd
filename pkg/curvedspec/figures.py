"""
Figure datasets
===============

fig1: LFH vs PTII ground state (nu = m = 1), unit-peak normalized
fig2: normalized form factors, hyperbolic vs Rosen-Morse
fig3: Q^4 G of the fig2 curves
fig4: rho-integrands of the exact and Hankel form factors at Q = 0, 1, 2, 3 GeV,
      both over the Hankel Q = 0 area
"""
import logging
from typing import Literal

import numpy as np
import pandas as pd
from scipy import integrate
from tqdm import tqdm

from curvedspec import config
from curvedspec.config import RunConfig
from curvedspec.datasets import Dataset, provenance
from curvedspec.errors import DomainError
from curvedspec.formfactor import (
    ANGULAR_MEASURE,
    FormFactorCurve,
    area_gap,
    ff_curve,
    integrand_exact,
    integrand_hankel,
    normalize_curve,
    origin_areas,
)
from curvedspec.hyperbolic import PTIIConfig, ptii_wavefunction
from curvedspec.lfh import lfh_wavefunction
from curvedspec.models import ModelParams
from curvedspec.rosenmorse import RMParams

logger = logging.getLogger(__name__)

FigureId = Literal["fig1", "fig2", "fig3", "fig4"]
FIGURES: tuple[str, ...] = ("fig1", "fig2", "fig3", "fig4")
RM_LABEL = "rosen_morse b, d not paper-specified"


def _params(cfg: RunConfig) -> ModelParams:
    return ModelParams(kappa=cfg.kappa_per_fm, R=cfg.R_fm)


def _ptii_config(cfg: RunConfig) -> PTIIConfig:
    return PTIIConfig.from_params(config.DEFAULT_NU, _params(cfg), cfg.effective_s(figure_mode=True))


def _grid(stop: float, step: float) -> np.ndarray:
    count = int(round(stop / step)) + 1
    return np.round(step * np.arange(count), 12)


def fig1(cfg: RunConfig) -> Dataset:
    params = _params(cfg)
    ptii = _ptii_config(cfg)
    zeta = _grid(config.FIG1_ZETA_STOP_FM, config.FIG1_ZETA_STEP_FM)
    inside = zeta > 0
    # both states vanish at the origin
    psi_lfh = np.zeros_like(zeta)
    psi_ptii = np.zeros_like(zeta)
    psi_lfh[inside] = lfh_wavefunction("plus", 0, config.DEFAULT_NU, params, zeta[inside]).unit_peak()
    psi_ptii[inside] = ptii_wavefunction(0, ptii, zeta[inside] / params.R, "schrodinger").unit_peak()
    frame = pd.DataFrame({"zeta_fm": zeta, "psi_lfh": psi_lfh, "psi_ptii": psi_ptii})
    meta = provenance(cfg, ptii.s_convention, "unit peak", s=ptii.s, nu=config.DEFAULT_NU)
    return Dataset("fig1", frame, meta)


def _normalized_pair(cfg: RunConfig, progress: bool) -> tuple[FormFactorCurve, FormFactorCurve, PTIIConfig]:
    Q_gev = cfg.q_grid.values_gev()
    Q = Q_gev / config.HBAR_C_GEV_FM
    ptii = _ptii_config(cfg)
    rm = RMParams(b=cfg.rm_b, d=cfg.rm_d_fm)
    hyperbolic = ff_curve(cfg.hyperbolic_method, Q, cfg.R_fm, cfg.quad, cfg=ptii, progress=progress)
    rosen_morse = ff_curve("rosen_morse", Q, cfg.R_fm, cfg.quad, rm=rm, progress=progress)
    return normalize_curve(hyperbolic), normalize_curve(rosen_morse), ptii


def _formfactor_meta(cfg: RunConfig, ptii: PTIIConfig) -> dict:
    s_convention = ptii.s_convention if cfg.hyperbolic_method == "exact_fh" else "s = 5/2 kernel"
    return provenance(
        cfg,
        s_convention,
        "G(Q)/G(0) per curve",
        hyperbolic_method=cfg.hyperbolic_method,
        rm_b=cfg.rm_b,
        rm_d_fm=cfg.rm_d_fm,
        rm_note=RM_LABEL,
    )


def fig2(cfg: RunConfig, progress: bool = False) -> Dataset:
    hyperbolic, rosen_morse, ptii = _normalized_pair(cfg, progress)
    frame = pd.DataFrame(
        {"Q_GeV": hyperbolic.Q_gev, "G_hyperbolic": hyperbolic.G, "G_rosen_morse": rosen_morse.G}
    )
    return Dataset("fig2", frame, _formfactor_meta(cfg, ptii))


def fig3(cfg: RunConfig, progress: bool = False) -> Dataset:
    hyperbolic, rosen_morse, ptii = _normalized_pair(cfg, progress)
    frame = pd.DataFrame(
        {"Q_GeV": hyperbolic.Q_gev, "Q4G_hyperbolic": hyperbolic.q4g(), "Q4G_rosen_morse": rosen_morse.q4g()}
    )
    meta = _formfactor_meta(cfg, ptii)
    meta["units"] = "Q^4 G in GeV^4"
    return Dataset("fig3", frame, meta)


def fig4(cfg: RunConfig, progress: bool = False) -> Dataset:
    """Exact and Hankel integrands over the Hankel Q = 0 area, the exact family divided by 2 pi.

    The header carries both Q = 0 areas, their relative gap and the
    column-area difference at every Q.
    """
    ptii = _ptii_config(cfg)
    R = cfg.R_fm
    rho = _grid(config.FIG4_RHO_STOP, config.FIG4_RHO_STEP)
    exact_area, approx_area = origin_areas(ptii, cfg.quad)
    columns: dict[str, np.ndarray] = {"rho": rho}
    differences = {}
    for Q_gev in tqdm(config.FIG4_Q_GEV, desc="fig4", disable=not progress, leave=False):
        Q = Q_gev / config.HBAR_C_GEV_FM
        label = f"{Q_gev:g}"
        exact = np.array([integrand_exact(r, Q, ptii, cfg.quad) for r in rho]) / (ANGULAR_MEASURE * approx_area)
        approx = np.asarray(integrand_hankel(rho, Q, R)) / approx_area
        columns[f"integrand_exact_Q{label}"] = exact
        columns[f"integrand_approx_Q{label}"] = approx
        differences[f"area_difference_Q{label}"] = float(integrate.trapezoid(exact - approx, rho))
    meta = provenance(
        cfg,
        ptii.s_convention,
        "integrand / Hankel Q=0 area, exact / 2 pi",
        s=ptii.s,
        area_exact_Q0=exact_area,
        area_approx_Q0=approx_area,
        area_gap_Q0=area_gap(exact_area, approx_area),
        **differences,
    )
    return Dataset("fig4", pd.DataFrame(columns), meta)


def build_figure(fig_id: FigureId, cfg: RunConfig, progress: bool = False) -> Dataset:
    logger.info("🔨 Building %s", fig_id)
    if fig_id == "fig1":
        return fig1(cfg)
    if fig_id == "fig2":
        return fig2(cfg, progress)
    if fig_id == "fig3":
        return fig3(cfg, progress)
    if fig_id == "fig4":
        return fig4(cfg, progress)
    raise DomainError(f"unknown figure {fig_id!r}")
