"""
Core data types: physical parameters, quantum numbers and sampled wavefunctions.

Units throughout: hbar = 1, 2*mu = 1, lengths in fm, squared energies in fm^-2.
"""
import math
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from curvedspec import discretize
from curvedspec.errors import DomainError, GridTooSmallError, UnboundStateError

Measure = Literal["flat_dzeta", "hyperbolic_drho", "hyperbolic_sinh_drho"]


class ModelParams(BaseModel):
    """Oscillator strength kappa (fm^-1) and curvature radius R (fm).

    The reduced mass and oscillator frequency only enter through
    kappa^4 = mu^2 omega^2 / hbar^2.
    """

    model_config = ConfigDict(frozen=True)

    kappa: float = Field(gt=0)
    R: float = Field(gt=0)

    @property
    def s_derived(self) -> float:
        return math.sqrt(self.kappa**4 * self.R**4 + 0.25)


@dataclass(frozen=True)
class QuantumNumbers:
    """Node count n and angular number m (= nu) with the PTII parameters they fix."""

    n: int
    m: int
    s: float
    branch: Literal["plus", "minus"] = "plus"

    def __post_init__(self):
        if self.m < 0:
            raise DomainError(f"angular number must be non-negative, got m = {self.m}")
        if self.n < 0:
            raise UnboundStateError(f"node count must be non-negative, got n = {self.n}")
        if self.branch not in ("plus", "minus"):
            raise DomainError(f"unknown branch {self.branch!r}")

    @classmethod
    def from_params(cls, n: int, m: int, params: ModelParams, branch: Literal["plus", "minus"] = "plus"):
        return cls(n=n, m=m, s=params.s_derived, branch=branch)

    @property
    def a(self) -> float:
        return self.m + 0.5 if self.branch == "plus" else -self.m + 0.5

    @property
    def lam(self) -> float:
        return -0.5 - self.s

    @property
    def bound_state_count(self) -> int:
        """Number of n >= 0 with n < (s - m - 1)/2."""
        return max(0, math.ceil((self.s - self.m - 1) / 2))

    def require_bound(self) -> "QuantumNumbers":
        count = self.bound_state_count
        if self.n >= count:
            raise UnboundStateError(
                f"n = {self.n} is not bound for m = {self.m}, s = {self.s:.6g}: "
                f"bound-state count is {count} (need n < (s - m - 1)/2 = {(self.s - self.m - 1) / 2:.6g})"
            )
        return self


@dataclass(frozen=True, eq=False)
class SampledWavefunction:
    grid: np.ndarray
    values: np.ndarray
    measure: Measure = "flat_dzeta"
    normalized: bool = False
    label: str = field(default="", compare=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values)
        if grid.shape != values.shape or grid.ndim != 1:
            raise GridTooSmallError("grid and values must be 1-D arrays of equal length")
        if grid.size < 2:
            raise GridTooSmallError("a sampled wavefunction needs at least 2 points")
        if np.any(np.diff(grid) <= 0):
            raise GridTooSmallError("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def weight(self) -> np.ndarray | float:
        if self.measure == "hyperbolic_sinh_drho":
            return np.sinh(self.grid)
        return 1.0

    def norm(self) -> float:
        return discretize.l2_norm(self.values, self.grid, self.weight())

    def norm_defect(self) -> float:
        """|<psi|psi> - 1| by trapezoid rule under the tagged measure."""
        return abs(self.norm() ** 2 - 1.0)

    def with_values(self, values: np.ndarray, label: str = "") -> "SampledWavefunction":
        return replace(self, values=np.asarray(values), normalized=False, label=label or self.label)

    def unit_norm(self) -> "SampledWavefunction":
        return replace(self, values=self.values / self.norm(), normalized=True)

    def unit_peak(self) -> np.ndarray:
        return self.values / np.max(np.abs(self.values))

    def node_count(self, rel_floor: float = 1e-10) -> int:
        """Sign changes, ignoring samples below rel_floor of the peak."""
        v = self.values.real
        significant = v[np.abs(v) > rel_floor * np.max(np.abs(v))]
        return int(np.count_nonzero(np.diff(np.sign(significant)) != 0))
