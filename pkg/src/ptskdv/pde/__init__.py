"""Pseudo-spectral integration of the component systems with Lambda_N-valued fields."""
from .config import PRESETS, ConfigError, SimConfig, initial_state, load_config, soliton, validate_config
from .diagnostics import COLUMNS, diagnostics_row, evaluate_H, hamiltonian_density, mass, momentum, relative_drift
from .grid import Grid, fft_workers, project, spectral_dx, tail_fraction
from .integrate import (
    BlowUpError, SimResult, SimulationError, SingularConfigurationError, rk4_step, simulate,
)
from .io import RunWriter, TrajectoryError, TruncatedTrajectory, analyze, read_diagnostics, read_trajectory
from .rhs import MODEL_PARAMS, SIM_MODELS, FieldState, deformed_dx_numeric, dx, rhs, rhs_raw


def run_config(cfg: SimConfig, out_dir=None) -> SimResult:
    """Simulate a validated config, streaming to ``out_dir`` when given."""
    grid = cfg.make_grid()
    state = initial_state(cfg, grid)
    eps = cfg.diagnostic_eps

    def diagnose(s):
        return diagnostics_row(s, eps, grid)

    if out_dir is None:
        return simulate(cfg.model, cfg.params, grid, state, cfg.dt, cfg.t_end, cfg.output_stride, diagnose)
    with RunWriter(out_dir, cfg) as writer:
        return simulate(cfg.model, cfg.params, grid, state, cfg.dt, cfg.t_end, cfg.output_stride, diagnose, writer)


__all__ = [
    "COLUMNS", "PRESETS", "MODEL_PARAMS", "SIM_MODELS", "BlowUpError", "ConfigError", "FieldState", "Grid",
    "RunWriter", "SimConfig", "SimResult", "SimulationError", "SingularConfigurationError", "TrajectoryError",
    "TruncatedTrajectory", "analyze", "deformed_dx_numeric", "diagnostics_row", "dx", "evaluate_H",
    "fft_workers", "hamiltonian_density", "initial_state", "load_config", "mass", "momentum", "project",
    "read_diagnostics", "read_trajectory", "relative_drift", "rhs", "rhs_raw", "rk4_step", "run_config",
    "simulate", "soliton", "spectral_dx", "tail_fraction", "validate_config",
]
