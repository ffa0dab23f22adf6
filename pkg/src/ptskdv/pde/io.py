"""Run directory layout: metadata.json, trajectory.jsonl, diagnostics.csv.

metadata.json      {"format", "version", "config", "grid", "masks", "created_utc"}
trajectory.jsonl   one JSON object per sample:
                   {"t": float, "u": {"re": [[...]], "im": [[...]]}, "xi": {...}}
                   where the outer list runs over Grassmann masks 0 .. 2**N - 1
diagnostics.csv    header t,mass,momentum,H_eps_real,H_eps_imag,max_u,tail_fraction

Floats are written with repr precision so a reread reproduces the arrays
bit for bit; created_utc is the only field that differs between
otherwise identical runs.
"""
from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ..grassnum import Grassmann
from .config import SimConfig, validate_config
from .diagnostics import COLUMNS, evaluate_H, mass, momentum
from .grid import tail_fraction
from .rhs import FieldState

FORMAT = "ptskdv-run/1"
METADATA = "metadata.json"
TRAJECTORY = "trajectory.jsonl"
DIAGNOSTICS = "diagnostics.csv"
QUANTITIES = ("mass", "momentum", "H_eps", "max_u", "tail_fraction")


class TrajectoryError(IOError):
    pass


class TruncatedTrajectory(TrajectoryError):
    def __init__(self, message, last_t=None):
        super().__init__(message)
        self.last_t = last_t


def _version() -> str:
    from .. import __version__
    return __version__


def _channels(a: Grassmann) -> dict:
    return {"re": a.coeffs.real.tolist(), "im": a.coeffs.imag.tolist()}


def _from_channels(d: dict, n: int) -> Grassmann:
    return Grassmann(np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float), n)


def _fmt(v: float) -> str:
    return repr(float(v))


class RunWriter:
    """Streams samples of a run into ``out_dir`` as they are produced."""

    def __init__(self, out_dir, cfg: SimConfig):
        self.dir = Path(out_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        meta = {
            "format": FORMAT,
            "version": _version(),
            "config": cfg.to_dict(),
            "grid": {"n_points": cfg.grid["n_points"], "length": cfg.grid["length"]},
            "masks": list(range(1 << cfg.n_grassmann)),
            "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        (self.dir / METADATA).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
        self._traj = open(self.dir / TRAJECTORY, "w")
        self._diag = open(self.dir / DIAGNOSTICS, "w", newline="")
        self._csv = csv.writer(self._diag, lineterminator="\n")
        self._csv.writerow(COLUMNS)

    def __call__(self, state: FieldState, row: dict | None):
        rec = {"t": float(state.t), "u": _channels(state.u), "xi": _channels(state.xi)}
        self._traj.write(json.dumps(rec) + "\n")
        if row is not None:
            self._csv.writerow([_fmt(row[c]) for c in COLUMNS])
        self._traj.flush()
        self._diag.flush()

    def close(self):
        self._traj.close()
        self._diag.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_metadata(run_dir) -> dict:
    path = Path(run_dir) / METADATA
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise TrajectoryError(f"missing {path}") from None
    except json.JSONDecodeError as exc:
        raise TrajectoryError(f"{path} is not valid JSON: {exc}") from None


def read_trajectory(path, n_generators: int):
    """Yield FieldState samples; a damaged line raises TruncatedTrajectory naming the last good t."""
    last_t = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            try:
                rec = json.loads(line)
                state = FieldState(float(rec["t"]), _from_channels(rec["u"], n_generators),
                                   _from_channels(rec["xi"], n_generators))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                where = f"after t={last_t!r}" if last_t is not None else "before the first sample"
                raise TruncatedTrajectory(
                    f"{path}: damaged or truncated record on line {lineno} {where} ({exc.__class__.__name__})",
                    last_t) from None
            last_t = state.t
            yield state


def locate_run(traj_path) -> tuple[Path, Path]:
    """Accept either a run directory or the trajectory file inside it."""
    p = Path(traj_path)
    if p.is_dir():
        return p, p / TRAJECTORY
    return p.parent, p


def analyze(traj_path, quantities) -> list[dict]:
    """Recompute diagnostics offline with the same code path as the inline run."""
    quantities = list(quantities)
    if not quantities:
        raise ValueError("no quantities requested")
    unknown = [q for q in quantities if q not in QUANTITIES]
    if unknown:
        raise ValueError(f"unknown quantities {unknown}; choose from {', '.join(QUANTITIES)}")
    run_dir, traj = locate_run(traj_path)
    meta = read_metadata(run_dir)
    cfg = validate_config(meta["config"])
    grid = cfg.make_grid()
    eps = cfg.diagnostic_eps
    rows = []
    for state in read_trajectory(traj, cfg.n_grassmann):
        row = {"t": state.t}
        for q in quantities:
            if q == "mass":
                row["mass"] = mass(state, grid)
            elif q == "momentum":
                row["momentum"] = momentum(state, grid)
            elif q == "H_eps":
                H = evaluate_H(state, eps, grid)
                row["H_eps_real"], row["H_eps_imag"] = float(H.real), float(H.imag)
            elif q == "max_u":
                row["max_u"] = float(np.max(np.abs(state.u.body)))
            else:
                row["tail_fraction"] = tail_fraction(state.u.body, grid)
        rows.append(row)
    return rows


def read_diagnostics(path) -> list[dict]:
    with open(path, newline="") as fh:
        return [{k: float(v) for k, v in r.items()} for r in csv.DictReader(fh)]


def write_table(rows: list[dict], fh):
    if not rows:
        return
    cols = list(rows[0])
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in cols])


__all__ = [
    "DIAGNOSTICS", "METADATA", "QUANTITIES", "TRAJECTORY", "RunWriter", "TrajectoryError",
    "TruncatedTrajectory", "analyze", "read_diagnostics", "read_metadata", "read_trajectory", "write_table",
]
