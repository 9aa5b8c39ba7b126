"""Effective two-level dynamics of a chiral doublet coupled to excited levels.

The level tower is eliminated to second order in the coupling, leaving a
2x2 generator M - i Gamma on the enantiomer amplitudes. From it the package
computes racemization probabilities, optical-activity oscillations and their
periods, and checks the reduction against exact propagation in the full space.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BadSweepPath,
    ChiralOscError,
    DegenerateLevelWithoutBroadening,
    NonFiniteValue,
    NonHermitianInput,
    NotCPTSymmetric,
    NotTSymmetric,
    ParseError,
    SchemaError,
    ZeroSplitting,
)
from .model import (  # noqa: E402
    DoubletSpec,
    InvarianceMode,
    LevelSpec,
    ModelSpec,
    ValidatedModel,
    doublet_block,
    full_hamiltonian,
    random_model,
    scale_couplings,
    validate_model,
)
from .reduction import decay_matrix, dyad, effective_generator, mass_matrix, reduce_model  # noqa: E402
from .spectral import (  # noqa: E402
    eigen,
    eigen_cpt,
    eigen_general,
    eigen_t,
    oscillation_period,
)
from .dynamics import (  # noqa: E402
    KaonMode,
    KaonParams,
    evolve_effective,
    evolve_series,
    hs_optical_activity,
    hs_probabilities,
    kaon_transition_probability,
    multistate_probabilities,
    optical_activity,
    time_average_theta,
    time_grid,
)
from .oracle import compare_ww, convergence_study, exact_evolve, exact_probabilities  # noqa: E402
