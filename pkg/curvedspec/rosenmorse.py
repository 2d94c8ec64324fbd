"""
Trigonometric Rosen-Morse comparator
====================================

V(r) = (1/d^2)[l(l+1) csc^2(r/d) - 2b cot(r/d)] on the finite box 0 < r < pi d,
its Cornell-type small-r expansion, the hydrogen-like spectrum and the
closed-form infrared form factor. Units: 2mu = hbar = 1, b = d G.

Default b and d are placeholders; they only render comparator curves.
"""
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from curvedspec import config, discretize
from curvedspec.errors import DomainError


class RMParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    b: float = Field(config.DEFAULT_RM_B, gt=0)
    d: float = Field(config.DEFAULT_RM_D_FM, gt=0)  # fm
    l: int = Field(0, ge=0)

    @property
    def G(self) -> float:
        """Coupling strength b/d (fm^-1 in these units)."""
        return self.b / self.d


def rmt_potential(r, p: RMParams):
    """Potential in fm^-2; raises DomainError outside (0, pi d)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0) or np.any(r >= math.pi * p.d):
        raise DomainError(f"r must lie in (0, pi d) = (0, {math.pi * p.d:.6g})")
    x = r / p.d
    value = (p.l * (p.l + 1) / np.sin(x) ** 2 - 2 * p.b / np.tan(x)) / p.d**2
    return float(value) if np.ndim(value) == 0 else value


def rmt_cornell_coeffs(p: RMParams) -> tuple[float, float, float]:
    """Coefficients of r^-2, r^-1 and r in the small-r expansion.

    The constant l(l+1)/(3 d^2) from csc^2 is not part of the Cornell form.
    """
    return float(p.l * (p.l + 1)), -2 * p.b / p.d, 2 * p.b / (3 * p.d**3)


def rmt_cornell_flat(G: float, l: int) -> tuple[float, float, float]:
    """The d -> infinity limit at fixed G: centrifugal plus Coulomb, no linear term."""
    return float(l * (l + 1)), -2 * G, 0.0


def rmt_energy(n: int, l: int, p: RMParams) -> float:
    """-b^2/(d^2 N^2) + N^2/d^2 with N = n + l + 1 (fm^-2)."""
    if n < 0 or l < 0:
        raise DomainError("n and l must be non-negative")
    N = n + l + 1
    return (N**2 - p.b**2 / N**2) / p.d**2


def rmt_formfactor(Q: float, p: RMParams) -> float:
    """Closed-form charge form factor; G(0) = 1 by continuity, even in Q."""
    x = abs(Q) * p.d
    if x < 1e-8:
        return 1.0
    b = p.b
    # the denominator turns negative for b^2 < 1/8; atan2 keeps the branch continuous
    return b * (b**2 + 1) / x * math.atan2(16 * b * x, x**4 + 4 * (2 * b**2 - 1) * x**2 + 16 * b**2 * (b**2 + 1))


def rmt_spectrum(p: RMParams, n_levels: int = 3, grid_size: int = config.DEFAULT_GRID_SIZE) -> np.ndarray:
    """Lowest Dirichlet eigenvalues of -d^2/dr^2 + rmt_potential on (0, pi d)."""
    h = math.pi * p.d / (grid_size + 1)
    r = h * np.arange(1, grid_size + 1)
    return discretize.dirichlet_spectrum(rmt_potential(r, p), h, n_levels)
