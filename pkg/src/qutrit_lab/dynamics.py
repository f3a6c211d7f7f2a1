"""DM-interaction Hamiltonian, unitary evolution and the reduced pair state.

Two choices are configurable:

* the generator pair used for the qutrit "X" and "Y" operators
  (:class:`Generator`): the Gell-Mann lambda_1/lambda_2 pair, which acts on
  the {|0>, |1>} subspace only, or the spin-1 angular-momentum matrices;
* which two qutrits the interaction couples (:class:`Coupling`).

With ``Coupling.ENVIRONMENT`` the interaction acts on B and C. The reduced
A-B dynamics is then a local channel on B, which cannot raise the negativity,
so bound entanglement never becomes free. ``Coupling.PAIR`` applies the
9x9 propagator to the A-B pair while C is a spectator, and reproduces the
closed-form reduced state of :func:`closed_form_reduced` exactly. It is the
default.
"""
import enum
import logging
from dataclasses import dataclass, field
from math import cos, isfinite, sin, sqrt

import numpy as np

from . import _backend
from .errors import GeneratorResolutionError, ShapeError
from .linalg import as_matrix, expm_hermitian_generator, hermitian_eig, unitary_from_eig
from .ops import DensityMatrix, partial_trace
from .states import EnvAmplitudes, JurkowskiParams, compose_initial, env_state, jurkowski_state

log = logging.getLogger(__name__)

SQRT2 = sqrt(2.0)


class Generator(str, enum.Enum):
    GELLMANN12 = "gellmann"
    SPIN1 = "spin1"


class Coupling(str, enum.Enum):
    PAIR = "pair"
    ENVIRONMENT = "environment"


DEFAULT_GENERATOR = Generator.SPIN1
DEFAULT_COUPLING = Coupling.PAIR


def generator_matrices(generator):
    """The (X, Y) operator pair for a generator variant."""
    generator = Generator(generator)
    if generator is Generator.GELLMANN12:
        x = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=np.complex128)
        y = np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=np.complex128)
    else:
        r = 1 / SQRT2
        x = r * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128)
        y = r * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128)
    return x, y


@dataclass(frozen=True)
class DmHamiltonianSpec:
    strength: float
    generator: Generator = DEFAULT_GENERATOR

    def __post_init__(self):
        d = float(self.strength)
        if not isfinite(d):
            raise ValueError(f"DM strength must be finite, got {d}")
        object.__setattr__(self, "strength", d)
        object.__setattr__(self, "generator", Generator(self.generator))


def dm_hamiltonian(spec):
    """``D (X (x) Y - Y (x) X)`` on two qutrits, a 9x9 Hermitian matrix."""
    x, y = generator_matrices(spec.generator)
    k = _backend.kernels.kron
    return spec.strength * (k(x, y) - k(y, x))


def lift_to_tripartite(h, coupling=Coupling.ENVIRONMENT):
    """Embed a two-qutrit operator into the A (x) B (x) C space.

    ``Coupling.ENVIRONMENT`` gives ``I_3 (x) h`` (h acts on B, C);
    ``Coupling.PAIR`` gives ``h (x) I_3`` (h acts on A, B).
    """
    h = as_matrix(h)
    if h.shape != (9, 9):
        raise ShapeError(f"expected a 9x9 operator, got {h.shape}")
    eye = np.eye(3, dtype=np.complex128)
    if Coupling(coupling) is Coupling.ENVIRONMENT:
        return _backend.kernels.kron(eye, h)
    return _backend.kernels.kron(h, eye)


def propagator(h, t):
    """``U(t) = exp(-i h t)``."""
    return expm_hermitian_generator(h, t)


class Evolution:
    """Reduced A-B states of one initial condition at arbitrary times.

    The 27x27 generator is diagonalized once at unit strength; ``reduced(t)``
    then costs one phase multiply, one conjugation and one partial trace.
    Instances are read-only after construction and safe to share.
    """

    def __init__(self, params, env=None, spec=None, coupling=DEFAULT_COUPLING):
        self.params = params if isinstance(params, JurkowskiParams) else JurkowskiParams(*params)
        self.env = env if env is not None else EnvAmplitudes()
        self.spec = spec if spec is not None else DmHamiltonianSpec(0.0)
        self.coupling = Coupling(coupling)
        self.initial = compose_initial(jurkowski_state(self.params), env_state(self.env))
        unit = dm_hamiltonian(DmHamiltonianSpec(1.0, self.spec.generator))
        w, v = hermitian_eig(lift_to_tripartite(unit, self.coupling))
        self._w = w * self.spec.strength
        self._v = v

    def composite(self, t):
        u = unitary_from_eig(self._w, self._v, t)
        return DensityMatrix(_backend.kernels.sandwich(u, self.initial.mat), (3, 3, 3))

    def reduced(self, t):
        return partial_trace(self.composite(t), 2)


def evolve_and_reduce(params, env, spec, t, coupling=DEFAULT_COUPLING):
    """Evolve ``rho(eps) (x) |psi><psi|`` for time `t` and trace out C."""
    return Evolution(params, env, spec, coupling).reduced(t)


@dataclass(frozen=True)
class ClosedFormParams:
    params: JurkowskiParams
    strength: float
    t: float
    p: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.params, JurkowskiParams):
            object.__setattr__(self, "params", JurkowskiParams(*self.params))
        object.__setattr__(self, "strength", float(self.strength))
        object.__setattr__(self, "t", float(self.t))
        # p = e1 e2 e3 / (e1 e2 e3 N) = 1/N
        object.__setattr__(self, "p", 1.0 / self.params.normalization())


def closed_form_reduced(cf):
    """Analytic reduced pair state for the spin-1 generator.

    The state splits into the total-magnetization sectors of the pair:
    {|01>, |10>} and {|12>, |21>} rotate at frequency D, and
    {|00>, |02>, |11>, |20>, |22>} carries the sqrt(2) D harmonics.
    """
    e1, e2, e3 = cf.params.astuple()
    p, dt = cf.p, cf.strength * cf.t
    c2, s2, sin2 = cos(dt) ** 2, sin(dt) ** 2, sin(2 * dt)
    cr, sr = cos(SQRT2 * dt), sin(SQRT2 * dt)

    x = np.zeros((9, 9))
    for i in (0, 8):
        for j in (0, 8):
            x[i, j] = p
    for i, j, v in ((0, 2, 1), (8, 2, 1), (0, 6, -1), (8, 6, -1)):
        x[i, j] = x[j, i] = v * sr * p / SQRT2
    for i in (0, 8):
        x[i, 4] = x[4, i] = cr * p

    x[1, 1] = (s2 + e1 * e1 * c2) * p / e1
    x[3, 3] = (c2 + e1 * e1 * s2) * p / e1
    x[1, 3] = x[3, 1] = (1 - e1 * e1) * sin2 * p / (2 * e1)
    x[5, 5] = (s2 + e2 * e2 * c2) * p / e2
    x[7, 7] = (c2 + e2 * e2 * s2) * p / e2
    x[5, 7] = x[7, 5] = (1 - e2 * e2) * sin2 * p / (2 * e2)

    g = e3 - 1
    x[2, 2] = (1 + e3 - cr * g) ** 2 * p / (4 * e3)
    x[6, 6] = (1 + e3 + cr * g) ** 2 * p / (4 * e3)
    x[4, 4] = p * (1 + g * g * sr * sr / (2 * e3))
    x[2, 6] = x[6, 2] = g * g * sr * sr * p / (4 * e3)
    x[2, 4] = x[4, 2] = g * (1 + e3 - cr * g) * sr * p / (2 * SQRT2 * e3)
    x[4, 6] = x[6, 4] = g * (1 + e3 + cr * g) * sr * p / (2 * SQRT2 * e3)
    return DensityMatrix(x, (3, 3))


@dataclass(frozen=True)
class GeneratorResolution:
    generator: Generator
    residuals: dict


def resolve_generator(params, strength, times, env=None, coupling=DEFAULT_COUPLING, tol=1e-6):
    """Pick the generator whose evolution reproduces :func:`closed_form_reduced`.

    The residual of a variant is the largest entrywise deviation from the
    closed form over all sample times.

    Raises
    ------
    ValueError
        Fewer than three distinct sample times.
    GeneratorResolutionError
        Neither variant matches within `tol`; carries both residuals.
    """
    times = sorted({float(t) for t in times})
    if len(times) < 3:
        raise ValueError("resolve_generator needs at least 3 distinct sample times")
    params = params if isinstance(params, JurkowskiParams) else JurkowskiParams(*params)
    residuals = {}
    for gen in Generator:
        ev = Evolution(params, env, DmHamiltonianSpec(strength, gen), coupling)
        residuals[gen] = max(
            float(np.max(np.abs(ev.reduced(t).mat - closed_form_reduced(ClosedFormParams(params, strength, t)).mat)))
            for t in times
        )
    best = min(residuals, key=residuals.get)
    log.info(
        "generator resolution: %s",
        ", ".join(f"{g.value} residual {r:.3e}" for g, r in residuals.items()),
    )
    if residuals[best] > tol:
        raise GeneratorResolutionError(
            f"no generator matches the closed form within {tol:g} "
            f"(coupling={Coupling(coupling).value}, residuals="
            + ", ".join(f"{g.value}={r:.3e}" for g, r in residuals.items())
            + ")",
            residuals,
        )
    return GeneratorResolution(best, residuals)
