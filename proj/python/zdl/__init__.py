"""Statistics of differences between zeros of the Riemann zeta function."""

from ._core import *  # noqa: F401,F403
from ._core import (
    DegenerateSampleError,
    Error,
    JohnsonFamily,
    JohnsonParams,
    ParameterError,
    compute_zeros,
    fit,
    run_cli,
    sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
