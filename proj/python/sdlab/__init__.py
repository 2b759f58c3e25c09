"""Coupled free-flow/porous-medium solver and preconditioner laboratory."""

from ._core import (
    SdlabCapabilityError,
    SdlabConfigError,
    condition_number,
    convergence,
    fractional_matrix,
    solve,
)

__all__ = [
    "SdlabCapabilityError",
    "SdlabConfigError",
    "condition_number",
    "convergence",
    "fractional_matrix",
    "solve",
]
