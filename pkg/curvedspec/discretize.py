"""
Finite-difference helpers on uniform grids: 5-point derivatives, trapezoid
inner products and the Dirichlet tridiagonal eigensolver.
"""
import numpy as np
from scipy import integrate, linalg

from curvedspec.errors import ConvergenceError, GridTooSmallError


def uniform_step(grid: np.ndarray, min_points: int = 5) -> float:
    """Grid spacing; raises if the grid is too short or not uniform."""
    grid = np.asarray(grid, dtype=float)
    if grid.size < min_points:
        raise GridTooSmallError(f"need at least {min_points} grid points, got {grid.size}")
    steps = np.diff(grid)
    h = float(steps.mean())
    if h <= 0 or not np.allclose(steps, h, rtol=1e-8, atol=0.0):
        raise GridTooSmallError("grid must be uniform and strictly increasing")
    return h


def derivative(values: np.ndarray, h: float) -> np.ndarray:
    """First derivative: 5-point central stencil inside, one-sided 5-point stencils at the ends."""
    f = np.asarray(values)
    if f.size < 5:
        raise GridTooSmallError(f"5-point stencil needs at least 5 samples, got {f.size}")
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    out[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    out[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    out[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12 * h)
    out[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12 * h)
    return out


def second_derivative_interior(values: np.ndarray, h: float) -> np.ndarray:
    """5-point central second derivative at indices 2 .. n-3."""
    f = np.asarray(values)
    return (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2] + 16 * f[3:-1] - f[4:]) / (12 * h * h)


def inner(f: np.ndarray, g: np.ndarray, grid: np.ndarray, weight: np.ndarray | float = 1.0) -> float:
    return float(integrate.trapezoid(np.conj(f) * g * weight, grid).real)


def l2_norm(f: np.ndarray, grid: np.ndarray, weight: np.ndarray | float = 1.0) -> float:
    return float(np.sqrt(integrate.trapezoid(np.abs(f) ** 2 * weight, grid)))


def dirichlet_spectrum(
    potential: np.ndarray,
    h: float,
    n_levels: int,
    kinetic_scale: float = 1.0,
) -> np.ndarray:
    """Lowest eigenvalues of -kinetic_scale*d^2/dx^2 + V with a 3-point Laplacian.

    The grid holds the interior points only; the wavefunction is pinned to
    zero one step beyond either end.
    """
    potential = np.asarray(potential, dtype=float)
    if n_levels > potential.size:
        raise GridTooSmallError(f"cannot extract {n_levels} levels from {potential.size} points")
    diagonal = 2.0 * kinetic_scale / (h * h) + potential
    off_diagonal = np.full(potential.size - 1, -kinetic_scale / (h * h))
    try:
        return linalg.eigh_tridiagonal(
            diagonal,
            off_diagonal,
            eigvals_only=True,
            select="i",
            select_range=(0, n_levels - 1),
        )
    except linalg.LinAlgError as e:
        raise ConvergenceError(f"tridiagonal eigensolver failed: {e}") from e


def second_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Full-length second derivative: 5-point central inside, first derivative applied twice at the ends."""
    f = np.asarray(values)
    out = derivative(derivative(f, h), h)
    out[2:-2] = second_derivative_interior(f, h)
    return out
