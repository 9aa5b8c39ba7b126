"""Problem description: a degenerate chiral doublet coupled to a tower of levels.

Units are hbar = 1 throughout, so energies and inverse times share one unit.
To work in physical units, express every energy E as the angular frequency
E / hbar and every time in the reciprocal of that unit.

Basis order is fixed as ``[|L>, |R>, |1>, ..., |N>]`` with levels in input
order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .errors import NonFiniteValue, NonHermitianInput

__all__ = [
    "InvarianceMode",
    "DoubletSpec",
    "LevelSpec",
    "ModelSpec",
    "ValidatedModel",
    "validate_model",
    "doublet_block",
    "full_hamiltonian",
    "scale_couplings",
    "random_model",
    "HERMITIAN_RTOL",
    "DEFAULT_DEGENERACY_TOLERANCE",
]

HERMITIAN_RTOL = 1e-12
DEFAULT_DEGENERACY_TOLERANCE = 1e-9


class InvarianceMode(str, enum.Enum):
    CPT = "CPT"
    T = "T"
    GENERAL = "General"


@dataclass(frozen=True)
class DoubletSpec:
    """Parameters of the two chiral ground states.

    ``m`` is the common energy of |L> and |R>, ``delta`` the tunneling matrix
    element and ``epsilon`` the parity-violating shift.
    """

    m: float
    delta: float
    epsilon: float
    theta_max: float = 1.0


@dataclass(frozen=True)
class LevelSpec:
    """One excited level: its energy and the couplings <k|H1|L>, <k|H1|R>."""

    energy: float
    g_L: complex = 0j
    g_R: complex = 0j


Matrix = tuple  # tuple of row tuples of complex; immutable and comparable


@dataclass(frozen=True)
class ModelSpec:
    doublet: DoubletSpec
    levels: tuple = ()
    h_override: Optional[Matrix] = None
    cross_couplings: Optional[Matrix] = None
    degeneracy_tolerance: float = DEFAULT_DEGENERACY_TOLERANCE
    broadening: Optional[float] = None
    invariance: InvarianceMode = InvarianceMode.T


@dataclass(frozen=True)
class ValidatedModel:
    """A :class:`ModelSpec` whose invariants have been checked.

    ``degenerate[k]`` is true when level ``k`` lies within the degeneracy
    tolerance of the doublet energy.
    """

    spec: ModelSpec
    degenerate: tuple = field(default=())

    @property
    def doublet(self) -> DoubletSpec:
        return self.spec.doublet

    @property
    def levels(self) -> tuple:
        return self.spec.levels

    @property
    def n_levels(self) -> int:
        return len(self.spec.levels)


def _as_matrix(value, shape, name) -> Matrix:
    arr = np.asarray(value, dtype=complex)
    if arr.shape != shape:
        raise NonHermitianInput(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue(f"{name} contains non-finite entries")
    scale = np.linalg.norm(arr)
    if np.linalg.norm(arr - arr.conj().T) > HERMITIAN_RTOL * scale:
        raise NonHermitianInput(f"{name} is not hermitian")
    return tuple(tuple(complex(x) for x in row) for row in arr)


def _finite_real(x, name) -> float:
    if isinstance(x, complex):
        raise NonFiniteValue(f"{name} must be real")
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteValue(f"{name} must be finite, got {x}")
    return x


def _finite_complex(z, name) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteValue(f"{name} must be finite, got {z}")
    return z


def validate_model(spec) -> ValidatedModel:
    """Check every invariant of ``spec`` and flag degenerate levels.

    Accepts a :class:`ValidatedModel` as well; re-validating returns an equal
    value. A degenerate level without broadening is not an error here; that
    is reported when the decay matrix is built.
    """
    if isinstance(spec, ValidatedModel):
        spec = spec.spec

    d = spec.doublet
    doublet = DoubletSpec(
        m=_finite_real(d.m, "doublet.m"),
        delta=_finite_real(d.delta, "doublet.delta"),
        epsilon=_finite_real(d.epsilon, "doublet.epsilon"),
        theta_max=_finite_real(d.theta_max, "doublet.theta_max"),
    )
    if doublet.theta_max <= 0:
        raise NonFiniteValue("doublet.theta_max must be positive")

    levels = tuple(
        LevelSpec(
            energy=_finite_real(lv.energy, f"levels[{k}].energy"),
            g_L=_finite_complex(lv.g_L, f"levels[{k}].g_L"),
            g_R=_finite_complex(lv.g_R, f"levels[{k}].g_R"),
        )
        for k, lv in enumerate(spec.levels)
    )
    n = len(levels)

    h_override = None
    if spec.h_override is not None:
        h_override = _as_matrix(spec.h_override, (2, 2), "h_override")
    cross = None
    if spec.cross_couplings is not None:
        cross = _as_matrix(spec.cross_couplings, (n, n), "cross_couplings")

    tol = _finite_real(spec.degeneracy_tolerance, "degeneracy_tolerance")
    if tol < 0:
        raise NonFiniteValue("degeneracy_tolerance must be >= 0")
    broadening = spec.broadening
    if broadening is not None:
        broadening = _finite_real(broadening, "broadening")
        if broadening < 0:
            raise NonFiniteValue("broadening must be >= 0")

    clean = ModelSpec(
        doublet=doublet,
        levels=levels,
        h_override=h_override,
        cross_couplings=cross,
        degeneracy_tolerance=tol,
        broadening=broadening,
        invariance=InvarianceMode(spec.invariance),
    )
    degenerate = tuple(abs(lv.energy - doublet.m) <= tol for lv in levels)
    return ValidatedModel(spec=clean, degenerate=degenerate)


def doublet_block(model: ValidatedModel) -> np.ndarray:
    """The 2x2 block ``h`` of H1 in the doublet subspace (basis |L>, |R>)."""
    spec = model.spec
    if spec.h_override is not None:
        return np.array(spec.h_override, dtype=complex)
    d = spec.doublet
    return np.array([[d.epsilon, d.delta], [d.delta, -d.epsilon]], dtype=complex)


def full_hamiltonian(model: ValidatedModel) -> np.ndarray:
    """Assemble the (N+2)x(N+2) Hamiltonian in the basis [|L>, |R>, |1>, ...].

    Row ``2+k`` holds <k|H|L> = g_L and <k|H|R> = g_R; the transposed
    positions hold their conjugates, so the result is hermitian by
    construction.
    """
    spec = model.spec
    n = model.n_levels
    H = np.zeros((n + 2, n + 2), dtype=complex)
    H[:2, :2] = spec.doublet.m * np.eye(2) + doublet_block(model)
    for k, lv in enumerate(spec.levels):
        row = 2 + k
        H[row, row] = lv.energy
        H[row, 0] = lv.g_L
        H[row, 1] = lv.g_R
        H[0, row] = np.conj(lv.g_L)
        H[1, row] = np.conj(lv.g_R)
    if spec.cross_couplings is not None and n:
        cross = np.array(spec.cross_couplings, dtype=complex)
        off = cross - np.diag(np.diag(cross))
        H[2:, 2:] += off
    return H


def scale_couplings(model: ValidatedModel, factor: float) -> ValidatedModel:
    """Multiply every g_L, g_R by ``factor``; doublet parameters are untouched."""
    levels = tuple(
        replace(lv, g_L=factor * lv.g_L, g_R=factor * lv.g_R) for lv in model.levels
    )
    return validate_model(replace(model.spec, levels=levels))


def random_model(
    seed,
    n_levels: int = 5,
    *,
    m: float = 0.0,
    delta: float = 0.1,
    epsilon: float = 0.05,
    energy_range: Sequence[float] = (5.0, 10.0),
    coupling: float = 1.0,
    invariance: InvarianceMode = InvarianceMode.T,
) -> ValidatedModel:
    """Reproducible model with uniformly drawn level energies (relative to m)
    and complex gaussian couplings of rms modulus ``coupling`` per component.
    """
    rng = np.random.default_rng(seed)
    lo, hi = energy_range
    energies = m + rng.uniform(lo, hi, n_levels)
    g = coupling * (
        rng.standard_normal((n_levels, 2)) + 1j * rng.standard_normal((n_levels, 2))
    ) / np.sqrt(2.0)
    levels = tuple(
        LevelSpec(float(e), complex(gl), complex(gr))
        for e, (gl, gr) in zip(energies, g)
    )
    spec = ModelSpec(
        doublet=DoubletSpec(m=m, delta=delta, epsilon=epsilon),
        levels=levels,
        invariance=invariance,
    )
    return validate_model(spec)
