"""Translating solitons of mean curvature flow and curve shortening flow."""

from ._translab import (
    Error,
    RadialProfile,
    __version__,
    csf_run,
    delta_wing,
    fit_asymptotics,
    residual_at,
    shoot_bowl,
    shoot_catenoid,
    spruck_xiao,
)

__all__ = [
    "Error",
    "RadialProfile",
    "__version__",
    "csf_run",
    "delta_wing",
    "fit_asymptotics",
    "residual_at",
    "shoot_bowl",
    "shoot_catenoid",
    "spruck_xiao",
]
