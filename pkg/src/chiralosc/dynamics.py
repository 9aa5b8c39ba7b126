"""Time evolution of the doublet and the optical activity it produces.

All functions take the system prepared in |L> at t = 0 unless an initial
state is passed explicitly. Time arguments may be scalars or arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import InvarianceMode
from .spectral import (
    DEFAULT_TOL,
    check_cpt,
    check_t,
    cpt_splitting,
    eigen_general,
    t_splitting,
)

__all__ = [
    "TimeSeries",
    "KaonMode",
    "KaonParams",
    "time_grid",
    "hs_probabilities",
    "hs_optical_activity",
    "propagator",
    "evolve_effective",
    "multistate_probabilities",
    "optical_activity",
    "time_average_theta",
    "kaon_transition_probability",
    "evolve_series",
]

_LEFT = np.array([1.0, 0.0], dtype=complex)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sampled probabilities and normalized optical activity Theta/Theta_max."""

    t: np.ndarray
    p_l: np.ndarray
    p_r: np.ndarray
    theta_ratio: np.ndarray

    def rows(self):
        return zip(self.t, self.p_l, self.p_r, self.theta_ratio)


class KaonMode(str, enum.Enum):
    STANDARD = "Standard"
    PAPER_LITERAL = "PaperLiteral"


@dataclass(frozen=True)
class KaonParams:
    """Masses and widths of the two decaying eigenstates, m_j - (i/2) gamma_j."""

    m1: float
    m2: float
    gamma1: float = 0.0
    gamma2: float = 0.0
    mode: KaonMode = KaonMode.STANDARD

    def __post_init__(self):
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValueError("decay rates must be non-negative")
        object.__setattr__(self, "mode", KaonMode(self.mode))


def time_grid(t_max: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not t_max > 0:
        raise ValueError("t_max must be positive")
    return np.linspace(0.0, t_max, steps)


def hs_probabilities(delta, epsilon, t):
    """Isolated two-state probabilities (P_L, P_R) starting from |L>.

    P_R = delta^2/(delta^2 + epsilon^2) sin^2(Delta t) and
    P_L = cos^2(Delta t) + epsilon^2/(delta^2 + epsilon^2) sin^2(Delta t),
    with Delta = sqrt(delta^2 + epsilon^2).
    """
    t = np.asarray(t, dtype=float)
    d2 = delta * delta + epsilon * epsilon
    if d2 == 0:
        return np.ones_like(t), np.zeros_like(t)
    gap = math.sqrt(d2)
    s2 = np.sin(gap * t) ** 2
    p_r = delta * delta / d2 * s2
    p_l = np.cos(gap * t) ** 2 + epsilon * epsilon / d2 * s2
    return p_l, p_r


def hs_optical_activity(delta, epsilon, theta_max, t):
    t = np.asarray(t, dtype=float)
    d2 = delta * delta + epsilon * epsilon
    if d2 == 0:
        return theta_max * np.ones_like(t)
    gap = math.sqrt(d2)
    return theta_max * (epsilon**2 + delta**2 * np.cos(2.0 * gap * t)) / d2


def _is_hermitian(W) -> bool:
    return np.linalg.norm(W - W.conj().T) <= 1e-12 * max(np.linalg.norm(W), 1e-300)


def _sinc(z):
    # sin(z)/z for complex z, safe at the origin
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 1e-4
    safe = np.where(small, 1.0, z)
    return np.where(small, 1.0 - z * z / 6.0, np.sin(safe) / safe)


def propagator(W, t) -> np.ndarray:
    """exp(-i W t) for a 2x2 generator; shape (2, 2) or (len(t), 2, 2).

    Hermitian W goes through its spectral decomposition. Otherwise W is split
    into trace and traceless parts, A = W - tr(W)/2, and A @ A = s * 1 gives
    exp(-i A t) = cos(q t) - i t sinc(q t) A with q = sqrt(s).
    """
    W = np.asarray(W, dtype=complex)
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    tt = np.atleast_1d(t)
    if _is_hermitian(W):
        w, V = np.linalg.eigh(0.5 * (W + W.conj().T))
        phases = np.exp(-1j * np.outer(tt, w))
        U = np.einsum("ij,tj,kj->tik", V, phases, V.conj())
    else:
        mean = 0.5 * (W[0, 0] + W[1, 1])
        A = W - mean * np.eye(2)
        q = np.sqrt(complex(A[0, 0] * A[0, 0] + A[0, 1] * A[1, 0]))
        qt = q * tt
        cos = np.cos(qt)
        sinc_t = tt * _sinc(qt)
        U = (
            cos[:, None, None] * np.eye(2)
            - 1j * sinc_t[:, None, None] * A[None, :, :]
        ) * np.exp(-1j * mean * tt)[:, None, None]
    return U[0] if scalar else U


def evolve_effective(W, phi0, t) -> np.ndarray:
    """Return exp(-i W t) @ phi0; for array ``t`` the result has shape (len(t), 2)."""
    phi0 = np.asarray(phi0, dtype=complex)
    if abs(np.linalg.norm(phi0) - 1.0) > 1e-12:
        raise ValueError("initial state must be normalized")
    return propagator(W, t) @ phi0


def _projected(W, t):
    psi = evolve_effective(W, _LEFT, t)
    return np.abs(psi[..., 0]) ** 2, np.abs(psi[..., 1]) ** 2


def _mixing_ratios(M, half):
    # (M11 - M22) / (2 Delta) and M12 / Delta; bounded, unlike the squares
    return (M[0, 0] - M[1, 1]).real / (2.0 * half), M[0, 1].real / half


def multistate_probabilities(M, t, mode=InvarianceMode.T, tol: float = DEFAULT_TOL):
    """(P_L, P_R) for the doublet governed by the mass matrix ``M``.

    T mode uses the closed forms P_L = cos^2(Dt) + (M11-M22)^2/(4D^2) sin^2(Dt)
    and P_R = M12^2/D^2 sin^2(Dt). CPT and General modes project the matrix
    exponential, since no closed form is given for complex M12.
    """
    mode = InvarianceMode(mode)
    t = np.asarray(t, dtype=float)
    if mode is InvarianceMode.T:
        M = check_t(M, tol)
        half = t_splitting(M)
        if M[0, 1].real == 0:
            return np.ones_like(t), np.zeros_like(t)
        cos2phi, sin2phi = _mixing_ratios(M, half)
        s2 = np.sin(half * t) ** 2
        p_l = np.cos(half * t) ** 2 + cos2phi**2 * s2
        p_r = sin2phi**2 * s2
        return p_l, p_r
    if mode is InvarianceMode.CPT:
        M = check_cpt(M, tol)
    return _projected(M, t)


def optical_activity(M, theta_max, t, mode=InvarianceMode.T, tol: float = DEFAULT_TOL):
    """Optical activity Theta(t) for a system prepared in |L>."""
    mode = InvarianceMode(mode)
    t = np.asarray(t, dtype=float)
    if mode is InvarianceMode.T:
        M = check_t(M, tol)
        half = t_splitting(M)
        if M[0, 1].real == 0:
            return theta_max * np.ones_like(t)
        cos2phi, sin2phi = _mixing_ratios(M, half)
        return theta_max * (cos2phi**2 + sin2phi**2 * np.cos(2.0 * half * t))
    if mode is InvarianceMode.CPT:
        M = check_cpt(M, tol)
        return theta_max * np.cos(2.0 * cpt_splitting(M) * t)
    p_l, p_r = _projected(M, t)
    return theta_max * (p_l - p_r)


def time_average_theta(M, mode=InvarianceMode.T, tol: float = DEFAULT_TOL) -> float:
    """Long-time average of Theta/Theta_max.

    Without mixing (M12 = 0) the activity is pinned at Theta_max and the
    average is 1 in every mode.
    """
    mode = InvarianceMode(mode)
    if mode is InvarianceMode.CPT:
        M = check_cpt(M, tol)
        return 1.0 if M[0, 1] == 0 else 0.0
    if mode is InvarianceMode.T:
        M = check_t(M, tol)
        quarter = 0.25 * (M[0, 0] - M[1, 1]).real ** 2
        m12sq = M[0, 1].real ** 2
        if m12sq == 0:
            return 1.0
        return quarter / (quarter + m12sq)
    res = eigen_general(M, tol)
    if res.degenerate:
        return 1.0
    # dephased average of |<L|psi>|^2 - |<R|psi>|^2 over the two eigenstates
    return float(
        sum(
            abs(v[0]) ** 2 * (abs(v[0]) ** 2 - abs(v[1]) ** 2)
            for v in (res.psi_plus, res.psi_minus)
        )
    )


def kaon_transition_probability(params: KaonParams, t):
    """Probability of finding the antiparticle at time t after a pure particle
    preparation.

    ``PaperLiteral`` evaluates
    1/4 [e^{-g1 t} + e^{-g2 t} - 2 e^{-(g1+g2) t} cos(dm t)].
    ``Standard`` damps the interference term with e^{-(g1+g2) t / 2}, which is
    the form that tends to sin^2(dm t / 2) as both widths vanish.
    """
    t = np.asarray(t, dtype=float)
    g1, g2 = params.gamma1, params.gamma2
    dm = params.m2 - params.m1
    if params.mode is KaonMode.PAPER_LITERAL:
        envelope = np.exp(-(g1 + g2) * t)
    else:
        envelope = np.exp(-0.5 * (g1 + g2) * t)
    return 0.25 * (np.exp(-g1 * t) + np.exp(-g2 * t) - 2.0 * envelope * np.cos(dm * t))


def evolve_series(M, Gamma, t, mode=InvarianceMode.T, tol: float = DEFAULT_TOL) -> TimeSeries:
    """Sample (P_L, P_R, Theta/Theta_max) on the grid ``t``.

    With a vanishing decay matrix the mode-specific closed forms are used;
    otherwise the full generator M - i Gamma is exponentiated, after the
    mode precondition has been checked on ``M``.
    """
    t = np.asarray(t, dtype=float)
    Gamma = np.asarray(Gamma, dtype=complex)
    mode = InvarianceMode(mode)
    if np.any(Gamma != 0):
        if mode is InvarianceMode.CPT:
            check_cpt(M, tol)
        elif mode is InvarianceMode.T:
            check_t(M, tol)
        p_l, p_r = _projected(np.asarray(M) - 1j * Gamma, t)
    else:
        p_l, p_r = multistate_probabilities(M, t, mode, tol)
    return TimeSeries(t, p_l, p_r, p_l - p_r)
