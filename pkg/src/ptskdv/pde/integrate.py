"""Fixed-step RK4 time stepping and the simulation driver."""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from ..grassnum import Grassmann, SingularPowerError
from .grid import Grid
from .rhs import FieldState, rhs

BLOWUP_LIMIT = 1e8


class SimulationError(RuntimeError):
    """Base class for failed runs; ``result`` holds everything sampled before the failure."""

    def __init__(self, message, t=None, result=None):
        super().__init__(message)
        self.t = t
        self.result = result


class BlowUpError(SimulationError):
    pass


class SingularConfigurationError(SimulationError):
    def __init__(self, message, t=None, index=None, result=None):
        super().__init__(message, t, result)
        self.index = index


def _axpy(state: FieldState, k, h: float) -> FieldState:
    du, dxi = k
    return FieldState(state.t, Grassmann(state.u.coeffs + h * du.coeffs, state.u.n),
                      Grassmann(state.xi.coeffs + h * dxi.coeffs, state.xi.n))


@contextmanager
def _singular_guard(t):
    try:
        yield
    except SingularPowerError as exc:
        idx = exc.index[0] if exc.index is not None and len(exc.index) == 1 else exc.index
        raise SingularConfigurationError(
            f"singular configuration near t={t!r}: zero body of i*u_x at grid index {idx}",
            t=t, index=exc.index) from exc


def rk4_step(state: FieldState, dt: float, model: str, params: dict, grid: Grid) -> FieldState:
    """One classical RK4 step; raises BlowUpError on non-finite or huge values."""
    with _singular_guard(state.t):
        k1 = rhs(model, params, state, grid)
        k2 = rhs(model, params, _axpy(state, k1, dt / 2), grid)
        k3 = rhs(model, params, _axpy(state, k2, dt / 2), grid)
        k4 = rhs(model, params, _axpy(state, k3, dt), grid)
    u = state.u.coeffs + dt / 6 * (k1[0].coeffs + 2 * k2[0].coeffs + 2 * k3[0].coeffs + k4[0].coeffs)
    xi = state.xi.coeffs + dt / 6 * (k1[1].coeffs + 2 * k2[1].coeffs + 2 * k3[1].coeffs + k4[1].coeffs)
    t = state.t + dt
    with np.errstate(invalid="ignore"):
        bad = not (np.all(np.isfinite(u)) and np.all(np.isfinite(xi)))
        big = bad or max(np.max(np.abs(u)), np.max(np.abs(xi), initial=0)) > BLOWUP_LIMIT
    if big:
        raise BlowUpError(f"blow-up detected at t={t!r} (non-finite or |field| > {BLOWUP_LIMIT:g})", t=t)
    return FieldState(t, Grassmann(u, state.u.n), Grassmann(xi, state.xi.n))


@dataclass
class SimResult:
    samples: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def final(self) -> FieldState:
        return self.samples[-1]


def simulate(model: str, params: dict, grid: Grid, state: FieldState, dt: float, t_end: float,
             output_stride: int = 1, diagnose=None, sink=None) -> SimResult:
    """Integrate to t_end, sampling every ``output_stride`` steps and at the final step.

    ``diagnose(state)`` returns a diagnostics row; ``sink(state, row)`` is
    called per sample (used for streaming to disk).  On failure the raised
    SimulationError carries the samples collected so far.
    """
    n_steps = int(round(t_end / dt))
    if n_steps < 1 or abs(n_steps * dt - t_end) > 1e-9 * max(1.0, t_end):
        raise ValueError(f"t_end={t_end!r} must be a positive integer multiple of dt={dt!r}")
    result = SimResult()

    def record(s: FieldState):
        try:
            with _singular_guard(s.t):
                row = diagnose(s) if diagnose else None
        except SimulationError as exc:
            exc.result = result
            raise
        result.samples.append(s)
        if row is not None:
            result.diagnostics.append(row)
        if sink:
            sink(s, row)

    record(state)
    for step in range(1, n_steps + 1):
        try:
            state = rk4_step(state, dt, model, params, grid)
        except SimulationError as exc:
            exc.result = result
            raise
        # keep sample times exact multiples of dt
        state.t = step * dt
        if step % output_stride == 0 or step == n_steps:
            record(state)
    return result
