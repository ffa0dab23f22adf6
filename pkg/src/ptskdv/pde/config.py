"""Simulation config schema, validation and initial-data presets."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
import yaml

from ..grassnum import MAX_GENERATORS, Grassmann
from .grid import Grid
from .rhs import MODEL_PARAMS, SIM_MODELS, FieldState

CONFIG_KEYS = ("model", "params", "grid", "dt", "t_end", "n_grassmann", "initial_condition", "output_stride")
REQUIRED_KEYS = ("model", "params", "grid", "dt", "t_end", "initial_condition")
GRID_KEYS = ("n_points", "length")

PRESETS = {
    # u = -(c/2) sech^2(sqrt(c)/2 (x - x0)): travels right with speed c under u_t = -u_xxx + 6 u u_x
    "kdv_one_soliton": {"speed": 4.0, "x0": 0.0},
    # u = A exp(-(x/w)^2) + offset; xi = B sum_j exp(-((x - s_j)/w)^2) e_j with s_j spread over [-w, w]
    "gaussian": {"amplitude": 1.0, "width": 1.0, "offset": 0.0, "fermion_amplitude": 0.1},
    # u = A tanh(s sin(2 pi x / L)): monotone on |x| < L/4; xi as for gaussian with width L/8
    "monotone_kink": {"amplitude": 0.5, "steepness": 1.0, "fermion_amplitude": 0.0},
}


class ConfigError(ValueError):
    """Invalid config; ``field`` names the offending key."""

    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


@dataclass(frozen=True)
class SimConfig:
    model: str
    params: dict
    grid: dict
    dt: float
    t_end: float
    n_grassmann: int
    initial_condition: dict
    output_stride: int

    def make_grid(self) -> Grid:
        return Grid(int(self.grid["n_points"]), float(self.grid["length"]))

    @property
    def diagnostic_eps(self) -> float:
        """Deformation parameter used for H_eps (1 for the undeformed model)."""
        return float(self.params.get("eps", 1.0))

    def to_dict(self) -> dict:
        return asdict(self)


def _number(field, value, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(field, f"must be a number, got {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise ConfigError(field, "must be finite")
    if positive and not value > 0:
        raise ConfigError(field, f"must be > 0, got {value!r}")
    return value


def _integer(field, value, lo=None, hi=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(field, f"must be an integer, got {value!r}")
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        raise ConfigError(field, f"must be in [{lo}, {hi}], got {value}")
    return value


def validate_config(raw) -> SimConfig:
    """Check the raw mapping against the schema; unknown keys are errors."""
    if not isinstance(raw, dict):
        raise ConfigError("config", "top level must be a mapping")
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(unknown[0], f"unknown key (allowed: {', '.join(CONFIG_KEYS)})")
    for key in REQUIRED_KEYS:
        if key not in raw:
            raise ConfigError(key, "missing required key")

    model = raw["model"]
    if model not in SIM_MODELS:
        raise ConfigError("model", f"must be one of {', '.join(SIM_MODELS)}, got {model!r}")

    params = raw["params"]
    if not isinstance(params, dict):
        raise ConfigError("params", "must be a mapping")
    expected = set(MODEL_PARAMS[model])
    for k in sorted(set(params) - expected):
        raise ConfigError(f"params.{k}", f"not a parameter of model {model} (expects {', '.join(MODEL_PARAMS[model])})")
    for k in MODEL_PARAMS[model]:
        if k not in params:
            raise ConfigError(f"params.{k}", f"missing parameter of model {model}")
    params = {k: _number(f"params.{k}", params[k]) for k in MODEL_PARAMS[model]}
    if params.get("eps") == -1.0:
        raise ConfigError("params.eps", "eps = -1 is a pole of the Hamiltonian")

    grid = raw["grid"]
    if not isinstance(grid, dict):
        raise ConfigError("grid", "must be a mapping with n_points and length")
    for k in sorted(set(grid) - set(GRID_KEYS)):
        raise ConfigError(f"grid.{k}", "unknown key (allowed: n_points, length)")
    for k in GRID_KEYS:
        if k not in grid:
            raise ConfigError(f"grid.{k}", "missing required key")
    n = _integer("grid.n_points", grid["n_points"], 4)
    if n & (n - 1):
        raise ConfigError("grid.n_points", f"must be a power of two, got {n}")
    grid = {"n_points": n, "length": _number("grid.length", grid["length"], positive=True)}

    dt = _number("dt", raw["dt"], positive=True)
    t_end = _number("t_end", raw["t_end"], positive=True)
    steps = round(t_end / dt)
    if steps < 1 or abs(steps * dt - t_end) > 1e-9 * max(1.0, t_end):
        raise ConfigError("t_end", f"must be a positive integer multiple of dt={dt!r}")
    n_gr = _integer("n_grassmann", raw.get("n_grassmann", 0), 0, MAX_GENERATORS)
    stride = _integer("output_stride", raw.get("output_stride", 1), 1)

    ic = raw["initial_condition"]
    if isinstance(ic, str):
        ic = {"preset": ic}
    if not isinstance(ic, dict) or "preset" not in ic:
        raise ConfigError("initial_condition", "must be a preset name or a mapping with a 'preset' key")
    name = ic["preset"]
    if name not in PRESETS:
        raise ConfigError("initial_condition.preset", f"must be one of {', '.join(PRESETS)}, got {name!r}")
    opts = dict(PRESETS[name])
    for k, v in ic.items():
        if k == "preset":
            continue
        if k not in opts:
            raise ConfigError(f"initial_condition.{k}", f"not an option of preset {name} (options: {', '.join(opts)})")
        opts[k] = _number(f"initial_condition.{k}", v)
    ic = {"preset": name, **opts}
    return SimConfig(model, params, grid, dt, t_end, n_gr, ic, stride)


def load_config(path) -> SimConfig:
    """Read YAML or JSON (JSON is valid YAML) and validate."""
    text = Path(path).read_text()
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError("config", f"cannot parse {path}: {exc}") from None
    return validate_config(raw)


def _fermions(profiles: list, amplitude: float, n: int, shape) -> Grassmann:
    xi = Grassmann.zeros(n, shape)
    if n == 0 or amplitude == 0:
        return xi
    for j in range(n):
        xi = xi + Grassmann.generator(j, n, shape) * (amplitude * profiles[j])
    return xi


def initial_state(cfg: SimConfig, grid: Grid | None = None) -> FieldState:
    grid = grid or cfg.make_grid()
    x, L, n = grid.x, grid.length, cfg.n_grassmann
    ic = cfg.initial_condition
    name = ic["preset"]
    if name == "kdv_one_soliton":
        c = ic["speed"]
        if not c > 0:
            raise ConfigError("initial_condition.speed", "must be > 0")
        body = soliton(x, 0.0, c, ic["x0"], L)
        xi = Grassmann.zeros(n, x.shape)
    elif name == "gaussian":
        w = ic["width"]
        if not w > 0:
            raise ConfigError("initial_condition.width", "must be > 0")
        body = ic["amplitude"] * np.exp(-(x / w) ** 2) + ic["offset"]
        shifts = np.linspace(-w, w, n) if n > 1 else [0.0] * n
        xi = _fermions([np.exp(-((x - s) / w) ** 2) for s in shifts], ic["fermion_amplitude"], n, x.shape)
    else:
        body = ic["amplitude"] * np.tanh(ic["steepness"] * np.sin(2 * np.pi * x / L))
        w = L / 8
        shifts = np.linspace(-w, w, n) if n > 1 else [0.0] * n
        xi = _fermions([np.exp(-((x - s) / w) ** 2) for s in shifts], ic["fermion_amplitude"], n, x.shape)
    u = Grassmann.scalar(body.astype(complex), n)
    return FieldState(0.0, u, xi)


def soliton(x, t: float, c: float, x0: float = 0.0, L: float | None = None) -> np.ndarray:
    """-(c/2) sech^2(sqrt(c)/2 (x - x0 - c t)), wrapped onto the periodic window when L is given."""
    s = x - x0 - c * t
    if L is not None:
        s = (s + L / 2) % L - L / 2
    return -(c / 2) / np.cosh(np.sqrt(c) / 2 * s) ** 2


def dump_config(cfg: SimConfig) -> str:
    return json.dumps(cfg.to_dict(), indent=2, sort_keys=True)
