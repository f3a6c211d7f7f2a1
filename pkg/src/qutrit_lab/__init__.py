"""Entanglement dynamics of two-qutrit bound-entangled states under DM coupling."""
from . import _backend
from .dynamics import (
    ClosedFormParams,
    Coupling,
    DmHamiltonianSpec,
    Evolution,
    Generator,
    closed_form_reduced,
    dm_hamiltonian,
    evolve_and_reduce,
    lift_to_tripartite,
    propagator,
    resolve_generator,
)
from .errors import (
    ConfigError,
    DomainError,
    GeneratorResolutionError,
    NumericError,
    QutritLabError,
    ShapeError,
)
from .measures import (
    Classification,
    DetectionGap,
    EntanglementScores,
    FreeToBound,
    ccnr_score,
    classify,
    negativity,
    scan_dsd,
    scores,
)
from .ops import DensityMatrix, partial_trace, partial_transpose, purity, realign, reduced_pair, validate
from .states import EnvAmplitudes, JurkowskiParams, compose_initial, env_state, jurkowski_state

__version__ = "0.1.0"


def backend():
    """Name of the active kernel backend (``"compiled"`` or ``"python"``)."""
    return _backend.name
