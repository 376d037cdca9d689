"""CHSH quantities for a local polarization model and the QM closed form."""

from ._chshlab import (
    DEFAULT_GRID_SIZE,
    DomainError,
    UsageError,
    chsh_population,
    chsh_single,
    compare_models,
    diffraction_angle,
    ensemble_joint,
    equal_spacing_setting,
    expected_value_population,
    expected_value_single,
    joint_quantities,
    make_grid,
    mc_expected_value,
    median,
    normalize_angle,
    qm_chsh,
    qm_expected_value,
    qm_joint,
    run_cli,
    run_population_suite,
    scan_individual,
    screen_position,
)

__all__ = [
    "DEFAULT_GRID_SIZE",
    "DomainError",
    "UsageError",
    "chsh_population",
    "chsh_single",
    "compare_models",
    "diffraction_angle",
    "ensemble_joint",
    "equal_spacing_setting",
    "expected_value_population",
    "expected_value_single",
    "joint_quantities",
    "make_grid",
    "mc_expected_value",
    "median",
    "normalize_angle",
    "qm_chsh",
    "qm_expected_value",
    "qm_joint",
    "run_cli",
    "run_population_suite",
    "scan_individual",
    "screen_position",
]
