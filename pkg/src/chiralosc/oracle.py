"""Exact propagation in the full level space and comparison with the reduction.

The full Hamiltonian is diagonalized once and the state is propagated as
V exp(-i E t) V^dagger psi0, so the comparison carries no time-stepping error.
Population that leaks into the excited levels makes the exact P_L + P_R fall
below one; errors are reported per component without renormalizing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import evolve_effective
from .model import ValidatedModel, doublet_block, full_hamiltonian, scale_couplings
from .reduction import decay_matrix, mass_matrix

__all__ = [
    "ExactState",
    "ErrorReport",
    "exact_evolve",
    "exact_probabilities",
    "default_horizon",
    "compare_ww",
    "convergence_study",
    "empirical_orders",
]


@dataclass(frozen=True, eq=False)
class ExactState:
    amplitudes: np.ndarray
    t: float

    @property
    def p_l(self) -> float:
        return float(abs(self.amplitudes[0]) ** 2)

    @property
    def p_r(self) -> float:
        return float(abs(self.amplitudes[1]) ** 2)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class ErrorReport:
    max_abs_error_pl: float
    max_abs_error_pr: float
    t_grid: np.ndarray
    coupling_scale: float = 1.0

    @property
    def max_abs_error(self) -> float:
        return max(self.max_abs_error_pl, self.max_abs_error_pr)


def _check_state(psi0, dim):
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (dim,):
        raise ValueError(f"initial state must have length {dim}")
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise ValueError("initial state must be normalized")
    return psi0


def _propagate(H, psi0, t):
    H = np.asarray(H, dtype=complex)
    psi0 = _check_state(psi0, H.shape[0])
    w, V = np.linalg.eigh(H)
    coeffs = V.conj().T @ psi0
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    return (V[None, :, :] * np.exp(-1j * np.outer(tt, w))[:, None, :]) @ coeffs


def exact_evolve(H, psi0, t: float) -> ExactState:
    """Propagate ``psi0`` under the full hermitian ``H`` to time ``t``."""
    return ExactState(_propagate(H, psi0, t)[0], float(t))


def exact_probabilities(H, psi0, t_grid):
    """(P_L, P_R) on a whole grid, diagonalizing ``H`` once."""
    psi = _propagate(H, psi0, t_grid)
    return np.abs(psi[:, 0]) ** 2, np.abs(psi[:, 1]) ** 2


def default_horizon(model: ValidatedModel) -> float:
    """5 / |delta|, with delta read from the doublet block."""
    delta = abs(doublet_block(model)[0, 1])
    if delta == 0:
        raise ValueError("default horizon needs a nonzero tunneling element")
    return 5.0 / delta


def compare_ww(model: ValidatedModel, t_grid, coupling_scale: float = 1.0) -> ErrorReport:
    """Max |P^WW - P^exact| for L and R on ``t_grid``, starting from |L>."""
    if np.any(decay_matrix(model) != 0):
        raise ValueError("comparison requires a model without decay channels")
    t_grid = np.asarray(t_grid, dtype=float)
    H = full_hamiltonian(model)
    psi0 = np.zeros(H.shape[0], dtype=complex)
    psi0[0] = 1.0
    pl_exact, pr_exact = exact_probabilities(H, psi0, t_grid)
    phi = evolve_effective(mass_matrix(model), psi0[:2], t_grid)
    pl_ww, pr_ww = np.abs(phi[:, 0]) ** 2, np.abs(phi[:, 1]) ** 2
    return ErrorReport(
        float(np.max(np.abs(pl_ww - pl_exact))),
        float(np.max(np.abs(pr_ww - pr_exact))),
        t_grid,
        float(coupling_scale),
    )


def convergence_study(model: ValidatedModel, lambdas, t_grid) -> list:
    """One :class:`ErrorReport` per coupling scale in ``lambdas``.

    Each scale multiplies every g_L, g_R of ``model``; the doublet block and
    any cross couplings are kept fixed. ``lambdas`` must be non-negative and
    non-increasing.
    """
    lambdas = [float(x) for x in lambdas]
    if any(x < 0 for x in lambdas):
        raise ValueError("coupling scales must be non-negative")
    if any(b > a for a, b in zip(lambdas, lambdas[1:])):
        raise ValueError("coupling scales must be non-increasing")
    return [compare_ww(scale_couplings(model, lam), t_grid, lam) for lam in lambdas]


def empirical_orders(reports) -> list:
    """log(e_i / e_{i+1}) / log(lambda_i / lambda_{i+1}) between neighbours."""
    orders = []
    for a, b in zip(reports, reports[1:]):
        orders.append(
            float(
                np.log(a.max_abs_error / b.max_abs_error)
                / np.log(a.coupling_scale / b.coupling_scale)
            )
        )
    return orders
