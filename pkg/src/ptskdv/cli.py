"""Command-line entry point: verify, derive, simulate, analyze.

Exit codes: 0 success, 2 usage or validation error, 3 verification failure,
4 singular configuration or blow-up, 5 I/O or trajectory error.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_SINGULAR, EXIT_IO = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _err(msg: str):
    print(f"error: {msg}", file=sys.stderr)


def _parse_param(text: str):
    if "=" not in text:
        raise UsageError(f"--param expects key=value, got {text!r}")
    key, value = (s.strip() for s in text.split("=", 1))
    if value in ("", "sym", key):
        return key, None
    try:
        return key, Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"parameter {key}: {value!r} is not a rational number") from None


def cmd_verify(args) -> int:
    from .verify import run_suite
    rep = run_suite(args.suite)
    print(rep.summary())
    if args.report:
        meta = {"created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"), "version": __version__}
        doc = rep.to_dict(meta)
        try:
            Path(args.report).parent.mkdir(parents=True, exist_ok=True)
            Path(args.report).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        except OSError as exc:
            _err(f"cannot write report: {exc}")
            return EXIT_IO
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_derive(args) -> int:
    from .supercalc import UnknownModel, component_model
    from .symcore import to_latex, to_text
    params = dict(_parse_param(p) for p in args.param or [])
    try:
        m = component_model(args.model, **params)
    except UnknownModel as exc:
        raise UsageError(str(exc.args[0])) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps(m.to_dict(), indent=2, sort_keys=True))
        return EXIT_OK
    render = to_latex if args.format == "latex" else to_text
    lhs = {"u": "u_{t}", "xi": r"\xi_{t}"} if args.format == "latex" else {"u": "u_t", "xi": "xi_t"}
    print(f"model: {m.name}")
    print("params: " + ", ".join(f"{k}={v}" for k, v in sorted(m.params.items())))
    for var in ("u", "xi"):
        print(f"{lhs[var]} = {render(m.equations[var])}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    from .pde import (
        BlowUpError, ConfigError, SingularConfigurationError, load_config, relative_drift, run_config,
    )
    try:
        cfg = load_config(args.config)
    except FileNotFoundError:
        _err(f"config file not found: {args.config}")
        return EXIT_IO
    except ConfigError as exc:
        _err(f"invalid config: {exc.field}: {exc.reason}")
        return EXIT_USAGE
    try:
        res = run_config(cfg, args.out)
    except SingularConfigurationError as exc:
        _err(f"{exc}; partial output kept in {args.out}")
        return EXIT_SINGULAR
    except BlowUpError as exc:
        _err(f"{exc}; partial output kept in {args.out}")
        return EXIT_SINGULAR
    except OSError as exc:
        _err(f"I/O failure: {exc}")
        return EXIT_IO
    d = res.diagnostics
    print(f"completed {cfg.model} t_end={cfg.t_end!r} samples={len(d)} "
          f"mass_drift={relative_drift([r['mass'] for r in d]):.3e} "
          f"H_drift={relative_drift([complex(r['H_eps_real'], r['H_eps_imag']) for r in d]):.3e}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    from .pde.io import QUANTITIES, TrajectoryError, TruncatedTrajectory, analyze, write_table
    qs = [q.strip() for q in (args.quantities or "").split(",") if q.strip()]
    if not qs:
        raise UsageError(f"--quantities needs at least one of {', '.join(QUANTITIES)}")
    try:
        rows = analyze(args.traj, qs)
    except TruncatedTrajectory as exc:
        tail = "no valid sample" if exc.last_t is None else f"last valid sample t={exc.last_t!r}"
        _err(f"{exc}; {tail}")
        return EXIT_IO
    except (TrajectoryError, FileNotFoundError) as exc:
        _err(str(exc))
        return EXIT_IO
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_table(rows, fh)
    else:
        write_table(rows, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ptskdv", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run symbolic verification suites")
    v.add_argument("--suite", default="all", choices=["all", "derivatives", "tables", "pt", "susy", "hamiltonian"])
    v.add_argument("--report", help="write a JSON report here")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("derive", help="print the component equations of a catalogued model")
    d.add_argument("--model", required=True)
    d.add_argument("--param", action="append", metavar="K=V",
                   help="fix a parameter (rational); omitted parameters stay symbolic")
    d.add_argument("--format", default="text", choices=["text", "latex", "json"])
    d.set_defaults(func=cmd_derive)

    s = sub.add_parser("simulate", help="integrate a config and write a run directory")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    a = sub.add_parser("analyze", help="recompute diagnostics from a stored trajectory")
    a.add_argument("--traj", required=True, help="run directory or its trajectory.jsonl")
    a.add_argument("--quantities", required=True, help="comma list of mass,momentum,H_eps,max_u,tail_fraction")
    a.add_argument("--out", help="write the table here instead of stdout")
    a.set_defaults(func=cmd_analyze)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        from .pde.grid import fft_workers
        fft_workers()
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
