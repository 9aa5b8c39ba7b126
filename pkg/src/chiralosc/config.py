"""JSON run configuration: parsing, schema checks and serialization.

Complex scalars are written as ``[re, im]`` pairs. Unknown keys are rejected
and every schema error names the offending field path, e.g.
``doublet.delta`` or ``levels[2].g_L``.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from typing import Optional

from .dynamics import KaonMode, KaonParams
from .errors import BadSweepPath, ParseError, SchemaError
from .model import (
    DEFAULT_DEGENERACY_TOLERANCE,
    DoubletSpec,
    InvarianceMode,
    LevelSpec,
    ModelSpec,
)

__all__ = [
    "COMMANDS",
    "TimeSpec",
    "SweepSpec",
    "RunConfig",
    "parse_config",
    "parse_config_dict",
    "config_to_dict",
    "dump_config",
    "substitute",
]

COMMANDS = ("reduce", "spectrum", "evolve", "oracle", "compare", "kaon", "sweep")
TIME_COMMANDS = ("evolve", "oracle", "kaon")

# optional numeric top-level keys a sweep may address even when absent
_SWEEPABLE_DEFAULTS = {
    "coupling_scale": 1.0,
    "degeneracy_tolerance": DEFAULT_DEGENERACY_TOLERANCE,
    "broadening": None,
}


@dataclass(frozen=True)
class TimeSpec:
    t_max: float
    steps: int


@dataclass(frozen=True)
class SweepSpec:
    path: str
    values: tuple
    command: str


@dataclass(frozen=True)
class RunConfig:
    model: ModelSpec
    command: str
    output: str
    time: Optional[TimeSpec] = None
    kaon: Optional[KaonParams] = None
    sweep: Optional[SweepSpec] = None
    coupling_scale: float = 1.0


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _number(obj, path):
    if not _is_number(obj):
        raise SchemaError(path, f"expected a number, got {json.dumps(obj)}")
    return obj


def _complex(obj, path) -> complex:
    if not (isinstance(obj, list) and len(obj) == 2 and all(map(_is_number, obj))):
        raise SchemaError(path, "complex numbers are [re, im] pairs of numbers")
    return complex(obj[0], obj[1])


def _object(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    prefix = f"{path}." if path else ""
    for key in required:
        if key not in obj:
            raise SchemaError(f"{prefix}{key}", "missing required field")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{prefix}{key}", "unknown field")
    return obj


def _matrix(obj, n, path):
    if not (isinstance(obj, list) and len(obj) == n):
        raise SchemaError(path, f"expected a {n}x{n} matrix")
    rows = []
    for i, row in enumerate(obj):
        if not (isinstance(row, list) and len(row) == n):
            raise SchemaError(f"{path}[{i}]", f"expected a row of length {n}")
        rows.append(tuple(_complex(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)))
    return tuple(rows)


def _enum(cls, value, path):
    try:
        return cls(value)
    except ValueError:
        choices = ", ".join(m.value for m in cls)
        raise SchemaError(path, f"expected one of {choices}, got {json.dumps(value)}")


def _parse_model(doc) -> ModelSpec:
    d = _object(doc["doublet"], "doublet", ("m", "delta", "epsilon"), ("theta_max",))
    doublet = DoubletSpec(
        m=_number(d["m"], "doublet.m"),
        delta=_number(d["delta"], "doublet.delta"),
        epsilon=_number(d["epsilon"], "doublet.epsilon"),
        theta_max=_number(d.get("theta_max", 1.0), "doublet.theta_max"),
    )
    raw_levels = doc["levels"]
    if not isinstance(raw_levels, list):
        raise SchemaError("levels", "expected a list")
    levels = []
    for k, lv in enumerate(raw_levels):
        p = f"levels[{k}]"
        _object(lv, p, ("energy",), ("g_L", "g_R"))
        levels.append(
            LevelSpec(
                energy=_number(lv["energy"], f"{p}.energy"),
                g_L=_complex(lv.get("g_L", [0, 0]), f"{p}.g_L"),
                g_R=_complex(lv.get("g_R", [0, 0]), f"{p}.g_R"),
            )
        )
    h = doc.get("h_override")
    cross = doc.get("cross_couplings")
    broadening = doc.get("broadening")
    return ModelSpec(
        doublet=doublet,
        levels=tuple(levels),
        h_override=None if h is None else _matrix(h, 2, "h_override"),
        cross_couplings=None if cross is None else _matrix(cross, len(levels), "cross_couplings"),
        degeneracy_tolerance=_number(
            doc.get("degeneracy_tolerance", DEFAULT_DEGENERACY_TOLERANCE),
            "degeneracy_tolerance",
        ),
        broadening=None if broadening is None else _number(broadening, "broadening"),
        invariance=_enum(InvarianceMode, doc["invariance"], "invariance"),
    )


def _parse_time(obj) -> TimeSpec:
    _object(obj, "time", ("t_max", "steps"))
    t_max = _number(obj["t_max"], "time.t_max")
    steps = obj["steps"]
    if not (isinstance(steps, int) and not isinstance(steps, bool)):
        raise SchemaError("time.steps", "expected an integer")
    if steps < 2:
        raise SchemaError("time.steps", "must be >= 2")
    if not t_max > 0:
        raise SchemaError("time.t_max", "must be positive")
    return TimeSpec(float(t_max), steps)


def _parse_kaon(obj) -> KaonParams:
    _object(obj, "kaon", ("m1", "m2"), ("gamma1", "gamma2", "mode"))
    g1 = _number(obj.get("gamma1", 0.0), "kaon.gamma1")
    g2 = _number(obj.get("gamma2", 0.0), "kaon.gamma2")
    for name, g in (("gamma1", g1), ("gamma2", g2)):
        if g < 0:
            raise SchemaError(f"kaon.{name}", "must be >= 0")
    return KaonParams(
        m1=_number(obj["m1"], "kaon.m1"),
        m2=_number(obj["m2"], "kaon.m2"),
        gamma1=g1,
        gamma2=g2,
        mode=_enum(KaonMode, obj.get("mode", "Standard"), "kaon.mode"),
    )


def _parse_sweep(obj) -> SweepSpec:
    _object(obj, "sweep", ("path", "values", "command"))
    if not isinstance(obj["path"], str):
        raise SchemaError("sweep.path", "expected a string")
    values = obj["values"]
    if not isinstance(values, list):
        raise SchemaError("sweep.values", "expected a list")
    for i, v in enumerate(values):
        _number(v, f"sweep.values[{i}]")
    command = obj["command"]
    if command not in COMMANDS or command == "sweep":
        raise SchemaError("sweep.command", f"invalid command {json.dumps(command)}")
    return SweepSpec(obj["path"], tuple(values), command)


_REQUIRED = ("doublet", "levels", "invariance", "command", "output")
_OPTIONAL = (
    "h_override",
    "cross_couplings",
    "degeneracy_tolerance",
    "broadening",
    "time",
    "kaon",
    "sweep",
    "coupling_scale",
)


def parse_config_dict(doc) -> RunConfig:
    _object(doc, "", _REQUIRED, _OPTIONAL)
    command = doc["command"]
    if command not in COMMANDS:
        raise SchemaError("command", f"expected one of {', '.join(COMMANDS)}")
    if not isinstance(doc["output"], str):
        raise SchemaError("output", "expected a string")
    model = _parse_model(doc)

    sweep = _parse_sweep(doc["sweep"]) if "sweep" in doc else None
    if (sweep is None) == (command == "sweep"):
        raise SchemaError("sweep", "sweep must be present exactly when command is 'sweep'")
    effective = sweep.command if sweep else command

    time = _parse_time(doc["time"]) if "time" in doc else None
    if time is None and effective in TIME_COMMANDS:
        raise SchemaError("time", f"required for command '{effective}'")
    kaon = _parse_kaon(doc["kaon"]) if "kaon" in doc else None
    if kaon is None and effective == "kaon":
        raise SchemaError("kaon", "required for command 'kaon'")
    scale = _number(doc.get("coupling_scale", 1.0), "coupling_scale")

    return RunConfig(
        model=model,
        command=command,
        output=doc["output"],
        time=time,
        kaon=kaon,
        sweep=sweep,
        coupling_scale=scale,
    )


def parse_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_config_dict(doc)


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def config_to_dict(config: RunConfig) -> dict:
    """Inverse of :func:`parse_config_dict`."""
    spec = config.model
    d = spec.doublet
    doc = {
        "doublet": {"m": d.m, "delta": d.delta, "epsilon": d.epsilon, "theta_max": d.theta_max},
        "levels": [
            {"energy": lv.energy, "g_L": _pair(lv.g_L), "g_R": _pair(lv.g_R)}
            for lv in spec.levels
        ],
        "degeneracy_tolerance": spec.degeneracy_tolerance,
        "invariance": InvarianceMode(spec.invariance).value,
        "command": config.command,
        "output": config.output,
        "coupling_scale": config.coupling_scale,
    }
    if spec.h_override is not None:
        doc["h_override"] = [[_pair(x) for x in row] for row in spec.h_override]
    if spec.cross_couplings is not None:
        doc["cross_couplings"] = [[_pair(x) for x in row] for row in spec.cross_couplings]
    if spec.broadening is not None:
        doc["broadening"] = spec.broadening
    if config.time is not None:
        doc["time"] = {"t_max": config.time.t_max, "steps": config.time.steps}
    if config.kaon is not None:
        k = config.kaon
        doc["kaon"] = {
            "m1": k.m1, "m2": k.m2, "gamma1": k.gamma1, "gamma2": k.gamma2,
            "mode": k.mode.value,
        }
    if config.sweep is not None:
        s = config.sweep
        doc["sweep"] = {"path": s.path, "values": list(s.values), "command": s.command}
    return doc


def dump_config(config: RunConfig) -> str:
    return json.dumps(config_to_dict(config), indent=2) + "\n"


def _split_path(path: str):
    if not path:
        raise BadSweepPath("empty sweep path")
    parts = []
    for token in path.split("."):
        if token.isdigit():
            parts.append(int(token))
        elif token:
            parts.append(token)
        else:
            raise BadSweepPath(f"malformed sweep path {path!r}")
    return parts


def substitute(doc: dict, path: str, value) -> dict:
    """Copy of ``doc`` with the numeric scalar at dotted ``path`` replaced.

    List elements are addressed by integer components, e.g.
    ``levels.0.energy``.
    """
    parts = _split_path(path)
    if parts[0] in ("sweep", "command", "output"):
        raise BadSweepPath(f"{path!r} cannot be swept")
    out = copy.deepcopy(doc)
    if len(parts) == 1 and parts[0] in _SWEEPABLE_DEFAULTS and parts[0] not in out:
        out[parts[0]] = value
        return out
    node = out
    for key in parts[:-1]:
        node = _child(node, key, path)
    last = parts[-1]
    current = _child(node, last, path)
    if not _is_number(current):
        raise BadSweepPath(f"{path!r} does not address a numeric scalar")
    node[last] = value
    return out


def _child(node, key, path):
    if isinstance(node, dict) and isinstance(key, str) and key in node:
        return node[key]
    if isinstance(node, list) and isinstance(key, int) and key < len(node):
        return node[key]
    raise BadSweepPath(f"{path!r} does not exist in the configuration")
