"""
Exception hierarchy for curvedspec.

Every error carries an exit code and a detail message; the CLI turns them
into process exit codes (0 ok, 1 bad arguments, 2 non-convergence,
3 invariant failure).
"""


class CurvedSpecError(Exception):
    """Base error. `exit_code` plays the role a status code plays for a web API."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        return self.detail


class DomainError(CurvedSpecError, ValueError):
    """Argument outside the domain of a function (alpha <= -1, zeta <= 0, z < 1, ...)."""


class GridTooSmallError(CurvedSpecError, ValueError):
    """Sampled grid too short or non-uniform for the requested stencil."""


class UnboundStateError(CurvedSpecError, ValueError):
    """Quantum numbers violate the bound-state condition n < (s - m - 1)/2."""


class MissingOriginError(CurvedSpecError, ValueError):
    """A curve must contain Q = 0 to be normalized."""


class ConvergenceError(CurvedSpecError, ArithmeticError):
    """Quadrature or eigenvalue iteration did not reach the requested tolerance."""

    exit_code = 2


class OverflowGuardError(CurvedSpecError, OverflowError):
    """Argument beyond the overflow guard of the I-family Bessel functions."""

    exit_code = 2


class InvariantFailure(CurvedSpecError):
    """A conformance invariant did not hold."""

    exit_code = 3
