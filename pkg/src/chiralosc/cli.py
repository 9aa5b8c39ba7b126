"""Command-line driver: ``chiralosc CONFIG.json [-o OUTPUT]``.

The command is read from the configuration. Time-series commands (evolve,
oracle, kaon) write CSV; reduce, spectrum and compare write one JSON object
per line. A sweep concatenates the standalone output of every sweep value
in input order.

Exit codes: 0 success, 1 parse/schema error, 2 invalid model, 3 invariance
precondition violated, 4 degenerate level without broadening.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .config import RunConfig, config_to_dict, parse_config, parse_config_dict, substitute
from .dynamics import evolve_series, kaon_transition_probability, time_grid
from .errors import (
    ConfigError,
    DegenerateLevelWithoutBroadening,
    InvarianceError,
    ModelError,
    ZeroSplitting,
)
from .model import full_hamiltonian, scale_couplings, validate_model
from .oracle import compare_ww, default_horizon, exact_probabilities
from .reduction import reduce_model
from .spectral import CPTMixing, TMixing, eigen, oscillation_period

__all__ = ["render", "run", "run_sweep", "main", "exit_code", "DEFAULT_COMPARE_STEPS"]

DEFAULT_COMPARE_STEPS = 501


def _fmt(x) -> str:
    # repr gives the shortest string that round-trips
    return repr(float(x))


def _pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _matrix_json(A) -> list:
    return [[_pair(x) for x in row] for row in np.asarray(A)]


def _csv(header, columns) -> bytes:
    lines = [header]
    for row in zip(*columns):
        lines.append(",".join(_fmt(x) for x in row))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _json(obj) -> bytes:
    return (json.dumps(obj) + "\n").encode("utf-8")


def _model(config: RunConfig):
    model = validate_model(config.model)
    if config.coupling_scale != 1.0:
        model = scale_couplings(model, config.coupling_scale)
    return model


def _grid(config: RunConfig):
    return time_grid(config.time.t_max, config.time.steps)


def _render_reduce(config):
    M, Gamma, W = reduce_model(_model(config))
    return _json({"M": _matrix_json(M), "Gamma": _matrix_json(Gamma), "W": _matrix_json(W)})


def _mixing_json(mixing, degenerate):
    if isinstance(mixing, CPTMixing):
        out = {"mode": "CPT", "p": _pair(mixing.p), "alpha": mixing.alpha}
    elif isinstance(mixing, TMixing):
        out = {"mode": "T", "phi": mixing.phi}
    else:
        out = {"mode": "General"}
    out["degenerate"] = bool(degenerate)
    return out


def _render_spectrum(config):
    model = _model(config)
    mode = model.spec.invariance
    M, _, _ = reduce_model(model)
    res = eigen(M, mode)
    try:
        period = oscillation_period(M, mode)
        delta_split, tau = period.delta_split, period.tau
    except ZeroSplitting:
        # infinite period; JSON has no infinity literal
        delta_split, tau = 0.0, None
    return _json(
        {
            "lambda_plus": res.lambda_plus,
            "lambda_minus": res.lambda_minus,
            "psi_plus": [_pair(z) for z in res.psi_plus],
            "psi_minus": [_pair(z) for z in res.psi_minus],
            "mixing": _mixing_json(res.mixing, res.degenerate),
            "delta_split": delta_split,
            "tau": tau,
        }
    )


def _render_evolve(config):
    model = _model(config)
    M, Gamma, _ = reduce_model(model)
    series = evolve_series(M, Gamma, _grid(config), model.spec.invariance)
    return _csv("t,p_l,p_r,theta_ratio", (series.t, series.p_l, series.p_r, series.theta_ratio))


def _render_oracle(config):
    model = _model(config)
    H = full_hamiltonian(model)
    psi0 = np.zeros(H.shape[0], dtype=complex)
    psi0[0] = 1.0
    t = _grid(config)
    p_l, p_r = exact_probabilities(H, psi0, t)
    return _csv("t,p_l,p_r,theta_ratio", (t, p_l, p_r, p_l - p_r))


def _render_compare(config):
    model = _model(config)
    if config.time is not None:
        t = _grid(config)
    else:
        t = time_grid(default_horizon(model), DEFAULT_COMPARE_STEPS)
    report = compare_ww(model, t, config.coupling_scale)
    return _json(
        {
            "lambda": report.coupling_scale,
            "max_abs_error_pl": report.max_abs_error_pl,
            "max_abs_error_pr": report.max_abs_error_pr,
        }
    )


def _render_kaon(config):
    t = _grid(config)
    return _csv("t,p_kbar", (t, kaon_transition_probability(config.kaon, t)))


_RENDERERS = {
    "reduce": _render_reduce,
    "spectrum": _render_spectrum,
    "evolve": _render_evolve,
    "oracle": _render_oracle,
    "compare": _render_compare,
    "kaon": _render_kaon,
}


def sweep_configs(config: RunConfig):
    """Standalone configurations, one per sweep value, in input order."""
    base = config_to_dict(config)
    sweep = base.pop("sweep")
    base["command"] = sweep["command"]
    substitute(base, sweep["path"], 0.0)  # reject bad paths even for empty sweeps
    return [parse_config_dict(substitute(base, sweep["path"], v)) for v in sweep["values"]]


def run_sweep(config: RunConfig) -> bytes:
    return b"".join(render(c) for c in sweep_configs(config))


def render(config: RunConfig) -> bytes:
    """Output bytes for ``config``; identical configs give identical bytes."""
    if config.command == "sweep":
        return run_sweep(config)
    return _RENDERERS[config.command](config)


def run(config: RunConfig, output=None) -> None:
    data = render(config)
    with open(output or config.output, "wb") as fh:
        fh.write(data)


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, ConfigError):
        return 1
    if isinstance(exc, ModelError):
        return 2
    if isinstance(exc, InvarianceError):
        return 3
    if isinstance(exc, DegenerateLevelWithoutBroadening):
        return 4
    return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="chiralosc",
        description="Effective two-level dynamics of a chiral doublet coupled to excited levels.",
    )
    parser.add_argument("config", help="JSON configuration file, or - for stdin")
    parser.add_argument("-o", "--output", help="override the output path from the config")
    parser.add_argument("--version", action="version", version=__version__)
    args = parser.parse_args(argv)

    try:
        if args.config == "-":
            text = sys.stdin.read()
        else:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"chiralosc: {exc}", file=sys.stderr)
        return 1

    try:
        config = parse_config(text)
        run(config, args.output)
    except (ConfigError, ModelError, InvarianceError, DegenerateLevelWithoutBroadening) as exc:
        print(f"chiralosc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code(exc)
    except OSError as exc:
        print(f"chiralosc: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # library preconditions outside the error hierarchy, e.g. decay in compare
        print(f"chiralosc: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
