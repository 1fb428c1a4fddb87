"""Command-line front end: ``quantum-ess --config run.json [--out PATH] [--format json|csv]``.

Exit status 0 on success, 2 when the config fails validation (every problem is
reported, one ``field: message`` line each), 1 when ``--strict-degenerate`` is
set and the run hits a game with no isolated mixed equilibrium.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from . import replicator, scanner
from .ess_analyzer import analyze
from .game_core import NEStatus, PayoffMatrix, mixed_ne_2x2
from .quantum_state import StateWeights
from .quantum_transform import PRESETS, OperatorSet, transform

COMMANDS = ("analyze", "transform", "simulate", "scan")
FORMATS = {
    "analyze": ("json",),
    "transform": ("json", "csv"),
    "simulate": ("json", "csv"),
    "scan": ("csv", "json"),
}
TOP_LEVEL_KEYS = {"description", "command", "alpha", "weights", "operator_set", "dynamics", "scan", "output"}
DYNAMICS_KEYS = {"dt", "steps", "x0", "perturbation", "record_every"}
SCAN_KEYS = {"resolution", "constraint", "workers"}
OUTPUT_KEYS = {"path", "format"}
CONSTRAINTS = {c.value: c for c in scanner.Constraint}
U64_MAX = 2**64 - 1


class ConfigError(Exception):
    """Raised with every validation problem found in a config."""

    def __init__(self, errors: list[str]):
        super().__init__("\n".join(errors))
        self.errors = errors


@dataclass
class DynamicsConfig:
    dt: float = replicator.DEFAULT_DT
    steps: int = replicator.DEFAULT_STEPS
    x0: Optional[list] = None
    perturbation: float = replicator.DEFAULT_PERTURBATION
    record_every: int = 1


@dataclass
class ScanConfig:
    resolution: int = scanner.DEFAULT_RESOLUTION
    constraint: str = scanner.Constraint.SYMMETRIC_OFF_DIAGONAL.value
    workers: int = 1


@dataclass
class OutputConfig:
    path: Optional[str] = None
    format: Optional[str] = None


@dataclass
class RunConfig:
    command: str
    alpha: list
    weights: Optional[list] = None
    operator_set: Any = None
    description: Optional[str] = None
    dynamics: DynamicsConfig = field(default_factory=DynamicsConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @property
    def output_format(self) -> str:
        return self.output.format or FORMATS[self.command][0]

    def operators(self) -> OperatorSet:
        spec = self.operator_set
        if spec is None:
            return OperatorSet.default(len(self.alpha))
        if isinstance(spec, str):
            return PRESETS[spec]()
        return OperatorSet(spec["perms"], spec.get("names", ()))

    def to_dict(self) -> dict:
        d: dict = {}
        if self.description is not None:
            d["description"] = self.description
        d["command"] = self.command
        d["alpha"] = self.alpha
        if self.weights is not None:
            d["weights"] = self.weights
        if self.operator_set is not None:
            d["operator_set"] = self.operator_set
        if self.command == "simulate":
            d["dynamics"] = vars(self.dynamics).copy()
        if self.command == "scan":
            d["scan"] = vars(self.scan).copy()
        d["output"] = {"path": self.output.path, "format": self.output_format}
        return d


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _grid(name: str, value, errors: list[str]) -> Optional[np.ndarray]:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        errors.append(f"{name}: expected a square grid (list of rows)")
        return None
    if not all(_is_number(v) for r in value for v in r):
        errors.append(f"{name}: entries must be numbers")
        return None
    n = len(value)
    if any(len(r) != n for r in value):
        errors.append(f"{name}: grid is not square")
        return None
    if n not in (2, 3):
        errors.append(f"{name}: size must be 2x2 or 3x3, got {n}x{n}")
        return None
    a = np.array(value, dtype=float)
    if not np.all(np.isfinite(a)):
        errors.append(f"{name}: entries must be finite")
        return None
    return a


def _check_keys(name: str, obj: dict, allowed: set, errors: list[str]) -> None:
    for key in sorted(set(obj) - allowed):
        errors.append(f"{name + '.' if name else ''}{key}: unknown field")


def _section(raw: dict, name: str, allowed: set, errors: list[str]) -> dict:
    sec = raw.get(name, {})
    if not isinstance(sec, dict):
        errors.append(f"{name}: expected an object")
        return {}
    _check_keys(name, sec, allowed, errors)
    return sec


def _validate_operator_set(spec, n: Optional[int], errors: list[str]) -> None:
    if isinstance(spec, str):
        if spec not in PRESETS:
            errors.append(f"operator_set: unknown preset {spec!r}; choose one of {sorted(PRESETS)}")
            return
        ops = PRESETS[spec]()
    elif isinstance(spec, dict):
        _check_keys("operator_set", spec, {"perms", "names"}, errors)
        try:
            ops = OperatorSet(spec.get("perms", ()), spec.get("names", ()))
        except (TypeError, ValueError) as exc:
            errors.append(f"operator_set: {exc}")
            return
    else:
        errors.append("operator_set: expected a preset name or {perms, names}")
        return
    if n is not None and ops.n != n:
        errors.append(f"operator_set: acts on {ops.n} labels but alpha is {n}x{n}")


def validate(text: str) -> RunConfig:
    """Parse and check a JSON config, raising :class:`ConfigError` listing all problems."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"])
    if not isinstance(raw, dict):
        raise ConfigError(["config: top level must be a JSON object"])

    errors: list[str] = []
    _check_keys("", raw, TOP_LEVEL_KEYS, errors)

    command = raw.get("command")
    if command is None:
        errors.append("command: missing required field")
    elif command not in COMMANDS:
        errors.append(f"command: must be one of {list(COMMANDS)}, got {command!r}")
        command = None

    description = raw.get("description")
    if description is not None and not isinstance(description, str):
        errors.append("description: expected a string")

    alpha = None
    if "alpha" not in raw:
        errors.append("alpha: missing required field")
    else:
        alpha = _grid("alpha", raw["alpha"], errors)
    n = alpha.shape[0] if alpha is not None else None

    weights = None
    if "weights" in raw:
        weights = _grid("weights", raw["weights"], errors)
        if weights is not None:
            if np.any(weights < 0):
                errors.append("weights: entries must be nonnegative")
            total = float(weights.sum())
            if abs(total - 1.0) > 1e-9:
                errors.append(f"weights: normalization violated: sum={total:.12g}")
            if n is not None and weights.shape[0] != n:
                errors.append(
                    f"weights: dimension mismatch: alpha is {n}x{n} but weights are "
                    f"{weights.shape[0]}x{weights.shape[0]}"
                )
    elif command in ("analyze", "transform"):
        errors.append(f"weights: missing required field for {command}")

    if command in ("analyze", "scan") and n is not None and n != 2:
        errors.append(f"alpha: {command} needs a 2x2 game, got {n}x{n}")

    if "operator_set" in raw:
        _validate_operator_set(raw["operator_set"], n, errors)
        if command in ("analyze", "scan"):
            errors.append(f"operator_set: {command} always uses the I/C operators")

    dyn_raw = _section(raw, "dynamics", DYNAMICS_KEYS, errors)
    dynamics = DynamicsConfig()
    if command == "simulate":
        if "dynamics" not in raw:
            errors.append("dynamics: missing required section for simulate")
        elif "x0" not in dyn_raw:
            errors.append("dynamics.x0: missing required field for simulate")
        dynamics = _parse_dynamics(dyn_raw, errors)

    scan_raw = _section(raw, "scan", SCAN_KEYS, errors)
    scan_cfg = ScanConfig()
    if command == "scan":
        scan_cfg = _parse_scan(scan_raw, errors)

    out_raw = _section(raw, "output", OUTPUT_KEYS, errors)
    output = OutputConfig(out_raw.get("path"), out_raw.get("format"))
    if output.path is not None and not isinstance(output.path, str):
        errors.append("output.path: expected a string or null")
    if output.format is not None and command is not None and output.format not in FORMATS[command]:
        errors.append(f"output.format: {command} supports {list(FORMATS[command])}, got {output.format!r}")

    if errors:
        raise ConfigError(errors)

    cfg = RunConfig(
        command=command,
        alpha=raw["alpha"],
        weights=raw.get("weights"),
        operator_set=raw.get("operator_set"),
        description=description,
        dynamics=dynamics,
        scan=scan_cfg,
        output=output,
    )
    if command == "simulate" and dynamics.x0 is not None:
        k = cfg.operators().k if cfg.weights is not None else len(cfg.alpha)
        if len(dynamics.x0) != k:
            raise ConfigError([f"dynamics.x0: expected {k} components, got {len(dynamics.x0)}"])
    return cfg


def _parse_dynamics(d: dict, errors: list[str]) -> DynamicsConfig:
    cfg = DynamicsConfig()
    if "dt" in d:
        if not _is_number(d["dt"]) or not d["dt"] > 0:
            errors.append("dynamics.dt: must be a positive number")
        else:
            cfg.dt = d["dt"]
    for key in ("steps", "record_every"):
        if key in d:
            if not isinstance(d[key], int) or isinstance(d[key], bool) or d[key] < 1:
                errors.append(f"dynamics.{key}: must be a positive integer")
            else:
                setattr(cfg, key, d[key])
    if "perturbation" in d:
        if not _is_number(d["perturbation"]) or not 0 < d["perturbation"] < 0.5:
            errors.append("dynamics.perturbation: must lie in (0, 0.5)")
        else:
            cfg.perturbation = d["perturbation"]
    if "x0" in d:
        x0 = d["x0"]
        if not isinstance(x0, list) or not x0 or not all(_is_number(v) for v in x0):
            errors.append("dynamics.x0: expected a list of probabilities")
        elif any(v < 0 or v > 1 for v in x0) or abs(math.fsum(x0) - 1.0) > 1e-9:
            errors.append(f"dynamics.x0: not a probability vector (sum={math.fsum(x0):.12g})")
        else:
            cfg.x0 = x0
    return cfg


def _parse_scan(d: dict, errors: list[str]) -> ScanConfig:
    cfg = ScanConfig()
    if "resolution" in d:
        r = d["resolution"]
        if not isinstance(r, int) or isinstance(r, bool) or r < 2:
            errors.append("scan.resolution: must be an integer >= 2")
        else:
            cfg.resolution = r
    if "constraint" in d:
        if d["constraint"] not in CONSTRAINTS:
            errors.append(f"scan.constraint: must be one of {sorted(CONSTRAINTS)}")
        else:
            cfg.constraint = d["constraint"]
    if "workers" in d:
        w = d["workers"]
        if not isinstance(w, int) or isinstance(w, bool) or w < 1:
            errors.append("scan.workers: must be a positive integer")
        else:
            cfg.workers = w
    return cfg


class DegenerateGame(Exception):
    pass


def _transform_result(cfg: RunConfig):
    ops = cfg.operators()
    omega = transform(PayoffMatrix(cfg.alpha), StateWeights(cfg.weights), ops)
    return {"operators": list(ops.names), "omega": omega.tolist()}, omega


def _simulate_result(cfg: RunConfig):
    if cfg.weights is not None:
        game = transform(PayoffMatrix(cfg.alpha), StateWeights(cfg.weights), cfg.operators())
        matrix, kind = game.entries, "quantum"
    else:
        matrix, kind = PayoffMatrix(cfg.alpha).entries, "classical"
    dyn = cfg.dynamics
    traj = replicator.simulate(dyn.x0, matrix, dyn.dt, dyn.steps)
    states = traj.states[:: dyn.record_every]
    result = {
        "game": kind,
        "matrix": matrix.tolist(),
        "dt": dyn.dt,
        "steps": dyn.steps,
        "record_every": dyn.record_every,
        "final": traj.states[-1].tolist(),
        "states": states.tolist(),
    }
    if matrix.shape == (2, 2):
        ne = mixed_ne_2x2(matrix)
        if ne.status is NEStatus.INTERIOR and dyn.perturbation < ne.x < 1 - dyn.perturbation:
            result["mixed_ne"] = ne.x
            result["classification"] = replicator.classify_stability(
                matrix, ne.x, dyn.perturbation, dyn.dt, dyn.steps
            ).value
    return result, traj


def _encode(obj, level: int = 0) -> str:
    # like json.dumps(indent=2), but flat lists (matrix rows, states) stay on one line
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_encode(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(json.dumps(v, allow_nan=False) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _encode(v, level + 1) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj, allow_nan=False)


def _dump_json(payload: dict) -> str:
    return _encode(payload) + "\n"


def run(cfg: RunConfig, seed: Optional[int] = None, strict_degenerate: bool = False) -> tuple[int, str]:
    """Execute a validated config; returns ``(exit status, serialized output)``."""
    fmt = cfg.output_format
    status = 0
    meta = {"command": cfg.command, "seed": seed, "config": cfg.to_dict()}

    if cfg.command == "analyze":
        report = analyze(PayoffMatrix(cfg.alpha), StateWeights(cfg.weights))
        text = _dump_json({**meta, "result": report.to_dict()})
        if strict_degenerate and report.degenerate:
            status = 1

    elif cfg.command == "transform":
        result, omega = _transform_result(cfg)
        if fmt == "json":
            text = _dump_json({**meta, "result": result})
        else:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["operator", *result["operators"]])
            for name, row in zip(result["operators"], omega.entries):
                writer.writerow([name, *(repr(float(v)) for v in row)])
            text = buf.getvalue()

    elif cfg.command == "simulate":
        result, traj = _simulate_result(cfg)
        if fmt == "json":
            text = _dump_json({**meta, "result": result})
        else:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            k = traj.states.shape[1]
            writer.writerow(["step", *(f"x{i}" for i in range(k))])
            for t in range(0, len(traj.states), cfg.dynamics.record_every):
                writer.writerow([t, *(repr(float(v)) for v in traj.states[t])])
            text = buf.getvalue()

    else:
        grid = scanner.scan(
            PayoffMatrix(cfg.alpha),
            cfg.scan.resolution,
            CONSTRAINTS[cfg.scan.constraint],
            workers=cfg.scan.workers,
        )
        if fmt == "csv":
            text = scanner.to_csv(grid)
        else:
            rows = [
                {"indices": list(p.indices), "weights": list(p.weights), "report": p.report.to_dict()}
                for p in grid.points
            ]
            text = _dump_json({**meta, "result": {"flip_fraction": scanner.flip_fraction(grid), "points": rows}})
        if strict_degenerate and any(p.report.degenerate for p in grid.points):
            status = 1

    return status, text


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantum-ess",
        description="Classical vs quantum evolutionary stability of symmetric matrix games.",
    )
    parser.add_argument("--config", required=True, help="path to a JSON run config")
    parser.add_argument("--out", help="output path (overrides output.path; default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), help="output format (overrides output.format)")
    parser.add_argument(
        "--strict-degenerate",
        action="store_true",
        help="exit 1 when a game has no isolated mixed equilibrium",
    )
    parser.add_argument(
        "--seed",
        type=_seed,
        default=None,
        help="recorded in output metadata; the pipeline itself is deterministic",
    )
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"config: cannot read {args.config}: {exc.strerror}", file=sys.stderr)
        return 2

    try:
        cfg = validate(text)
        if args.format:
            if args.format not in FORMATS[cfg.command]:
                raise ConfigError(
                    [f"--format: {cfg.command} supports {list(FORMATS[cfg.command])}, got {args.format!r}"]
                )
            cfg.output.format = args.format
    except ConfigError as exc:
        for line in exc.errors:
            print(line, file=sys.stderr)
        return 2

    status, text = run(cfg, seed=args.seed, strict_degenerate=args.strict_degenerate)
    path = args.out or cfg.output.path
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status == 1:
        print("degenerate game: no isolated mixed equilibrium", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
