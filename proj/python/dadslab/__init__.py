"""Python bindings for the DADS simulation and certification library."""

from ._dadslab import (
    ConfigError,
    DadsParams,
    NumericalError,
    Run,
    control,
    g_excess,
    is_hurwitz,
    min_gain_bounds,
    planar_linear_matrix,
    run_config,
    run_config_file,
    small_gain_threshold,
    update_rate,
    validate_config,
)

__all__ = [
    "ConfigError",
    "DadsParams",
    "NumericalError",
    "Run",
    "control",
    "g_excess",
    "is_hurwitz",
    "min_gain_bounds",
    "planar_linear_matrix",
    "run_config",
    "run_config_file",
    "small_gain_threshold",
    "update_rate",
    "validate_config",
]
