"""Krylov spread complexity of two-band lattice models."""

from ._core import *  # noqa: F401,F403
from ._core import (
    ConvergenceError,
    DomainError,
    GapClosedError,
    NumericalError,
    PartitionError,
    SpecError,
)

__all__ = [name for name in dir() if not name.startswith("_")]
