"""Exception types shared across the package."""

from __future__ import annotations


class SolverError(RuntimeError):
    """A fixed-point or root-finding routine failed to converge.

    Carries the last iterate and residual so callers can diagnose or
    restart with different settings.
    """

    def __init__(self, message: str, last_iterate: float, residual: float):
        super().__init__(f"{message} (last iterate {last_iterate!r}, residual {residual:.3e})")
        self.last_iterate = last_iterate
        self.residual = residual


class NumericalError(RuntimeError):
    """A numerical evaluation produced non-finite values."""
