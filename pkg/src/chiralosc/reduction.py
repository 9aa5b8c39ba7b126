"""Second-order reduction of the level tower onto the chiral doublet.

Eliminating the excited levels to second order in the coupling gives an
effective generator ``W = M - i Gamma`` acting on the amplitudes (a, b) of
|L> and |R>. Off-resonant levels shift the doublet through the mass matrix
``M``; levels degenerate with the doublet open decay channels in ``Gamma``.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateLevelWithoutBroadening
from .model import LevelSpec, ValidatedModel, doublet_block

__all__ = [
    "dyad",
    "mass_matrix",
    "decay_matrix",
    "effective_generator",
    "reduce_model",
]


def dyad(level: LevelSpec) -> np.ndarray:
    """Rank-one matrix ``D[a, b] = conj(g_a) * g_b`` for one level.

    With g_a = <k|H1|a> and H1 hermitian this is <a|H1|k><k|H1|b>.
    """
    gl, gr = complex(level.g_L), complex(level.g_R)
    off = gl.conjugate() * gr
    # diagonal kept exactly real and off-diagonal exactly conjugate-symmetric
    return np.array(
        [[abs(gl) ** 2, off], [off.conjugate(), abs(gr) ** 2]], dtype=complex
    )


def mass_matrix(model: ValidatedModel) -> np.ndarray:
    """M = m*1 + h - sum_k D_k / (E_k - m) over non-degenerate levels.

    For a discrete spectrum the principal part is the plain sum; levels
    flagged degenerate are left to :func:`decay_matrix`. Cross couplings
    between excited levels are third order and do not enter.
    """
    m = model.doublet.m
    M = m * np.eye(2, dtype=complex) + doublet_block(model)
    for lv, degenerate in zip(model.levels, model.degenerate):
        if degenerate:
            continue
        M -= dyad(lv) / (lv.energy - m)
    return M


def decay_matrix(model: ValidatedModel) -> np.ndarray:
    """Gamma = 2*pi*rho * sum of D_k over levels degenerate with the doublet.

    ``rho`` is the model's ``broadening`` (an effective density of states).
    With no degenerate level the result is zero and ``rho`` is not needed.
    """
    Gamma = np.zeros((2, 2), dtype=complex)
    if not any(model.degenerate):
        return Gamma
    rho = model.spec.broadening
    if rho is None:
        idx = [k for k, flag in enumerate(model.degenerate) if flag]
        raise DegenerateLevelWithoutBroadening(
            f"levels {idx} are degenerate with the doublet but no broadening is set"
        )
    for lv, degenerate in zip(model.levels, model.degenerate):
        if degenerate:
            Gamma += dyad(lv)
    return 2.0 * np.pi * rho * Gamma


def effective_generator(M: np.ndarray, Gamma: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    Gamma = np.asarray(Gamma, dtype=complex)
    if M.shape != (2, 2) or Gamma.shape != (2, 2):
        raise ValueError("M and Gamma must be 2x2")
    return M - 1j * Gamma


def reduce_model(model: ValidatedModel):
    """Return ``(M, Gamma, W)`` for a validated model."""
    M = mass_matrix(model)
    Gamma = decay_matrix(model)
    return M, Gamma, effective_generator(M, Gamma)
