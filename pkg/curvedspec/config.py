"""
Configuration loader for curvedspec
"""
import hashlib
import json
import math
import os
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from curvedspec.errors import DomainError

load_dotenv()

# Environment
CONFIG_ENV_VAR = "CURVEDSPEC_CONFIG"
LOG_LEVEL = os.getenv("CURVEDSPEC_LOG_LEVEL", "INFO")

# Physical constants
HBAR_C_GEV_FM = 0.1973269804  # GeV*fm, converts Q between GeV and fm^-1

# fig1 parameters (nu = 1 ground state)
DEFAULT_KAPPA_PER_FM = 2.14
DEFAULT_R_FM = 0.728
ADOPTED_S = 2.5  # adopted |s|; sqrt(kappa^4 R^4 + 1/4) gives 2.478 with the values above
DEFAULT_NU = 1

# Rosen-Morse comparator; no published b, d, these only render comparator curves
DEFAULT_RM_B = 2.0
DEFAULT_RM_D_FM = 1.0

# Quadrature
DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-14
DEFAULT_MAX_SUBDIVISIONS = 200
DEFAULT_RHO_MAX = 6.0

# Discretization
DEFAULT_GRID_SIZE = 4096
LFH_BOX_KAPPA_UNITS = 12.0  # zeta in (0, 12/kappa]
PTII_RHO_MAX = 8.0

# Figure grids
FIG1_ZETA_STOP_FM = 2.0
FIG1_ZETA_STEP_FM = 0.005
FIG_Q_START_GEV = 0.0
FIG_Q_STOP_GEV = 3.0
FIG_Q_STEP_GEV = 0.01
FIG4_Q_GEV = (0.0, 1.0, 2.0, 3.0)
FIG4_RHO_STOP = 4.0
FIG4_RHO_STEP = 0.01

# Output
SIGNIFICANT_DIGITS = 17


class QuadratureSpec(BaseModel):
    """Adaptive-quadrature settings shared by every integral in the package."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rel_tol: float = Field(DEFAULT_REL_TOL, gt=0)
    abs_tol: float = Field(DEFAULT_ABS_TOL, gt=0)
    max_subdivisions: int = Field(DEFAULT_MAX_SUBDIVISIONS, ge=1)
    rho_max: float = Field(DEFAULT_RHO_MAX, gt=0)

    def halved(self) -> "QuadratureSpec":
        return self.model_copy(update={"rel_tol": self.rel_tol / 2, "abs_tol": self.abs_tol / 2})


class QGrid(BaseModel):
    """Momentum-transfer range in GeV."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    start_gev: float = Field(FIG_Q_START_GEV, ge=0)
    stop_gev: float = Field(FIG_Q_STOP_GEV, gt=0)
    step_gev: float = Field(FIG_Q_STEP_GEV, gt=0)

    @model_validator(mode="after")
    def _increasing(self) -> "QGrid":
        if self.stop_gev <= self.start_gev:
            raise ValueError("q_grid must be increasing (stop > start)")
        return self

    def values_gev(self) -> np.ndarray:
        # never past stop_gev when the step does not divide the range
        count = math.floor((self.stop_gev - self.start_gev) / self.step_gev + 1e-9) + 1
        return np.round(self.start_gev + self.step_gev * np.arange(count), 12)


# Flat JSON keys that live inside the nested models
_QUAD_KEYS = {"rel_tol", "abs_tol", "max_subdivisions", "rho_max"}
_QGRID_KEYS = {"q_start_gev": "start_gev", "q_stop_gev": "stop_gev", "q_step_gev": "step_gev"}


class RunConfig(BaseModel):
    """Everything a CLI run depends on. Hashed into every dataset header."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kappa_per_fm: float = Field(DEFAULT_KAPPA_PER_FM, gt=0)
    R_fm: float = Field(DEFAULT_R_FM, gt=0)
    s_override: Optional[float] = None
    rm_b: float = Field(DEFAULT_RM_B, gt=0)
    rm_d_fm: float = Field(DEFAULT_RM_D_FM, gt=0)
    quad: QuadratureSpec = QuadratureSpec()
    output_format: Literal["csv", "json"] = "csv"
    q_grid: QGrid = QGrid()
    hyperbolic_method: Literal["hankel", "closed_form", "exact_fh"] = "hankel"
    grid_size: int = Field(DEFAULT_GRID_SIZE, ge=64)

    @field_validator("s_override")
    @classmethod
    def _s_above_half(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and value <= 0.5:
            raise ValueError("s_override must exceed 1/2")
        return value

    # ============================================================
    # Loading
    # ============================================================

    @classmethod
    def from_flat(cls, data: dict) -> "RunConfig":
        """Build from a flat key-value mapping (the config-file format)."""
        nested: dict = {}
        quad: dict = {}
        q_grid: dict = {}
        for key, value in data.items():
            if key in _QUAD_KEYS:
                quad[key] = value
            elif key in _QGRID_KEYS:
                q_grid[_QGRID_KEYS[key]] = value
            else:
                nested[key] = value
        if quad:
            nested["quad"] = quad
        if q_grid:
            nested["q_grid"] = q_grid
        try:
            return cls.model_validate(nested)
        except ValidationError as e:
            raise DomainError(f"invalid configuration: {e}") from e

    @classmethod
    def load(cls, path: Optional[str] = None, overrides: Optional[dict] = None) -> "RunConfig":
        """File values first (explicit path, then $CURVEDSPEC_CONFIG), flags on top."""
        path = path or os.getenv(CONFIG_ENV_VAR)
        data: dict = {}
        if path:
            config_path = Path(path)
            if not config_path.exists():
                raise DomainError(f"config file not found: {config_path}")
            try:
                data = json.loads(config_path.read_text(encoding="utf-8"))
            except json.JSONDecodeError as e:
                raise DomainError(f"config file is not valid JSON: {e}") from e
            if not isinstance(data, dict):
                raise DomainError("config file must hold a flat JSON object")
        data.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return cls.from_flat(data)

    # ============================================================
    # Derived values
    # ============================================================

    def effective_s(self, figure_mode: bool) -> Optional[float]:
        """s used for hyperbolic quantities; None means derived from (kappa, R).

        Figures default to the adopted s = 5/2 unless the config set
        s_override explicitly (an explicit null keeps the derived value).
        """
        if "s_override" in self.model_fields_set:
            return self.s_override
        return ADOPTED_S if figure_mode else None

    def config_hash(self) -> str:
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
