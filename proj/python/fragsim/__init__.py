"""Discrete decay-fragmentation simulation and spectral analysis."""

from ._core import (
    ClusterState,
    GapSeries,
    IntegratorConfig,
    KernelConservationReport,
    KernelSpec,
    MultiplicityError,
    RateFamily,
    RateModel,
    RegimeReport,
    ScenarioError,
    ScenarioOutcome,
    SpectralData,
    StepStats,
    Trajectory,
    TruncatedGenerator,
    ValidationError,
    check_kernel_conservation,
    classify_regime,
    compute_spectral,
    decay_resolvent_apply,
    dominant_eigenvalue,
    expm_oracle,
    gap_series,
    integrate,
    mass_loss_rate,
    mass_norm,
    particle_count,
    project,
    run_scenario,
    step_trbdf2,
    theta,
    total_mass,
)

__all__ = [
    "ClusterState",
    "GapSeries",
    "IntegratorConfig",
    "KernelConservationReport",
    "KernelSpec",
    "MultiplicityError",
    "RateFamily",
    "RateModel",
    "RegimeReport",
    "ScenarioError",
    "ScenarioOutcome",
    "SpectralData",
    "StepStats",
    "Trajectory",
    "TruncatedGenerator",
    "ValidationError",
    "check_kernel_conservation",
    "classify_regime",
    "compute_spectral",
    "decay_resolvent_apply",
    "dominant_eigenvalue",
    "expm_oracle",
    "gap_series",
    "integrate",
    "mass_loss_rate",
    "mass_norm",
    "particle_count",
    "project",
    "run_scenario",
    "step_trbdf2",
    "theta",
    "total_mass",
]
