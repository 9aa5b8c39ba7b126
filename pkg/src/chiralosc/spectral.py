"""Eigenstructure of the 2x2 mass matrix and the resulting oscillation periods.

Three solvers are provided. :func:`eigen_cpt` assumes equal diagonal entries,
:func:`eigen_t` assumes a real off-diagonal entry and :func:`eigen_general`
handles any hermitian matrix. The symmetric solvers use closed forms and
check their precondition against ``tol * ||M||``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NotCPTSymmetric, NotTSymmetric, ZeroSplitting
from .model import InvarianceMode

__all__ = [
    "CPTMixing",
    "TMixing",
    "GeneralMixing",
    "SpectralResult",
    "OscillationPeriod",
    "DEFAULT_TOL",
    "check_cpt",
    "check_t",
    "eigen_cpt",
    "eigen_t",
    "eigen_general",
    "eigen",
    "cpt_splitting",
    "t_splitting",
    "splitting",
    "oscillation_period",
]

DEFAULT_TOL = 1e-10

_PARITY_PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
_PARITY_MINUS = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0)


@dataclass(frozen=True)
class CPTMixing:
    """``p`` is the principal square root of M12 and ``exp(-i alpha) = p/|p|``."""

    p: complex
    alpha: float


@dataclass(frozen=True)
class TMixing:
    phi: float


@dataclass(frozen=True)
class GeneralMixing:
    pass


Mixing = Union[CPTMixing, TMixing, GeneralMixing]


@dataclass(frozen=True, eq=False)
class SpectralResult:
    lambda_plus: float
    lambda_minus: float
    psi_plus: np.ndarray
    psi_minus: np.ndarray
    mixing: Mixing
    degenerate: bool = False


@dataclass(frozen=True)
class OscillationPeriod:
    """Half-splitting ``delta_split`` and ``tau = pi / delta_split``, the
    period of cos(2 * delta_split * t)."""

    delta_split: float
    tau: float


def _as_2x2(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {M.shape}")
    return M


def _norm(M) -> float:
    return float(np.linalg.norm(M, 2))


def check_cpt(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    M = _as_2x2(M)
    if abs(M[0, 0] - M[1, 1]) > tol * _norm(M):
        raise NotCPTSymmetric(
            f"M11 - M22 = {M[0, 0] - M[1, 1]} exceeds tolerance {tol} * ||M||"
        )
    return M


def check_t(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    M = _as_2x2(M)
    if abs(M[0, 1].imag) > tol * _norm(M):
        raise NotTSymmetric(f"Im M12 = {M[0, 1].imag} exceeds tolerance {tol} * ||M||")
    return M


def eigen_cpt(M, tol: float = DEFAULT_TOL) -> SpectralResult:
    """Closed-form eigenpairs for equal diagonals.

    lambda_pm = M11 +- |M12| with eigenvectors (p, +-conj(p)) / sqrt(2|p|^2),
    p**2 = M12. When M12 vanishes the eigenvalues coincide; the parity basis
    is returned and ``degenerate`` is set.
    """
    M = check_cpt(M, tol)
    diag = 0.5 * (M[0, 0].real + M[1, 1].real)
    m12 = complex(M[0, 1])
    if m12 == 0:
        return SpectralResult(
            diag, diag, _PARITY_PLUS.copy(), _PARITY_MINUS.copy(),
            CPTMixing(0j, 0.0), degenerate=True,
        )
    p = complex(np.sqrt(m12))
    norm = math.sqrt(2.0) * abs(p)
    psi_plus = np.array([p, p.conjugate()]) / norm
    psi_minus = np.array([p, -p.conjugate()]) / norm
    alpha = -math.atan2(p.imag, p.real)
    return SpectralResult(
        diag + abs(m12), diag - abs(m12), psi_plus, psi_minus, CPTMixing(p, alpha)
    )


def eigen_t(M, tol: float = DEFAULT_TOL) -> SpectralResult:
    """Closed-form eigenpairs for a real off-diagonal element.

    psi_plus = (cos phi, sin phi), psi_minus = (-sin phi, cos phi) with
    phi = atan2(2 M12, M11 - M22) / 2 folded into [0, pi).
    """
    M = check_t(M, tol)
    a, d = M[0, 0].real, M[1, 1].real
    b = M[0, 1].real
    half = t_splitting(M)
    phi = 0.5 * math.atan2(2.0 * b, a - d)
    if phi < 0:
        phi += math.pi
    c, s = math.cos(phi), math.sin(phi)
    mean = 0.5 * (a + d)
    return SpectralResult(
        mean + half,
        mean - half,
        np.array([c, s], dtype=complex),
        np.array([-s, c], dtype=complex),
        TMixing(phi),
        degenerate=half == 0,
    )


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # deterministic gauge: largest component real and positive
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


def eigen_general(M, tol: float = DEFAULT_TOL) -> SpectralResult:
    M = _as_2x2(M)
    w, V = np.linalg.eigh(0.5 * (M + M.conj().T))
    return SpectralResult(
        float(w[1]),
        float(w[0]),
        _fix_phase(V[:, 1]),
        _fix_phase(V[:, 0]),
        GeneralMixing(),
        degenerate=bool(w[1] - w[0] <= tol * _norm(M)),
    )


def eigen(M, mode, tol: float = DEFAULT_TOL) -> SpectralResult:
    mode = InvarianceMode(mode)
    if mode is InvarianceMode.CPT:
        return eigen_cpt(M, tol)
    if mode is InvarianceMode.T:
        return eigen_t(M, tol)
    return eigen_general(M, tol)


def cpt_splitting(M) -> float:
    """|M12|, without checking the CPT precondition."""
    return abs(complex(np.asarray(M)[0, 1]))


def t_splitting(M) -> float:
    """Half the eigenvalue gap, 0.5*sqrt((M11 - M22)**2 + 4 M12**2), using
    Re M12 and without checking the T precondition."""
    M = np.asarray(M)
    return 0.5 * math.hypot((M[0, 0] - M[1, 1]).real, 2.0 * M[0, 1].real)


def splitting(M, mode, tol: float = DEFAULT_TOL) -> float:
    """Half-splitting for ``mode`` after checking its precondition."""
    mode = InvarianceMode(mode)
    if mode is InvarianceMode.CPT:
        return cpt_splitting(check_cpt(M, tol))
    if mode is InvarianceMode.T:
        return t_splitting(check_t(M, tol))
    M = _as_2x2(M)
    # general hermitian gap; equals t_splitting whenever M12 is real
    return 0.5 * math.hypot((M[0, 0] - M[1, 1]).real, 2.0 * abs(M[0, 1]))


def oscillation_period(M, mode, tol: float = DEFAULT_TOL) -> OscillationPeriod:
    """Oscillation period of the optical activity.

    Raises :class:`ZeroSplitting` when there is no splitting; the period is
    then infinite.
    """
    half = splitting(M, mode, tol)
    if half == 0:
        raise ZeroSplitting("zero splitting: no oscillation, period is infinite")
    return OscillationPeriod(half, math.pi / half)
