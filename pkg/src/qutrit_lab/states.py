"""Initial states: the Jurkowski two-qutrit family and the environment qutrit."""
from dataclasses import dataclass
from math import isfinite

import numpy as np

from .errors import DomainError, ShapeError
from .ops import DensityMatrix, tensor

NORM_TOL = 1e-12

# basis positions of |00>, |11>, |22> in the row-major 3x3 product basis
_SKELETON = (0, 4, 8)


@dataclass(frozen=True)
class JurkowskiParams:
    eps1: float
    eps2: float
    eps3: float

    def __post_init__(self):
        for name in ("eps1", "eps2", "eps3"):
            v = float(getattr(self, name))
            if not (isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v}")
            object.__setattr__(self, name, v)

    def astuple(self):
        return (self.eps1, self.eps2, self.eps3)

    def normalization(self):
        e1, e2, e3 = self.astuple()
        return 3 + e1 + 1 / e1 + e2 + 1 / e2 + e3 + 1 / e3


@dataclass(frozen=True)
class EnvAmplitudes:
    c0: complex = 1.0
    c1: complex = 0.0
    c2: complex = 0.0

    def __post_init__(self):
        amps = [complex(getattr(self, n)) for n in ("c0", "c1", "c2")]
        if not all(isfinite(a.real) and isfinite(a.imag) for a in amps):
            raise DomainError("environment amplitudes must be finite")
        norm = sum(abs(a) ** 2 for a in amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"environment amplitudes are not normalized (|c|^2 sum = {norm!r})")
        for n, a in zip(("c0", "c1", "c2"), amps):
            object.__setattr__(self, n, a)

    @classmethod
    def normalized(cls, c0, c1, c2):
        v = np.array([c0, c1, c2], dtype=np.complex128)
        n = np.linalg.norm(v)
        if n == 0:
            raise DomainError("environment amplitudes are all zero")
        return cls(*(v / n))

    def vector(self):
        return np.array([self.c0, self.c1, self.c2], dtype=np.complex128)


def jurkowski_matrix(params):
    """The unnormalized 9x9 matrix of the family, before division by N."""
    e1, e2, e3 = params.astuple()
    m = np.diag([1.0, e1, 1 / e3, 1 / e1, 1.0, e2, e3, 1 / e2, 1.0]).astype(np.complex128)
    for i in _SKELETON:
        for j in _SKELETON:
            m[i, j] = 1.0
    return m


def jurkowski_state(params):
    """Two-qutrit state rho(eps1, eps2, eps3) with dims (3, 3).

    ``rho(1, 1, 1)`` is separable; away from that point the family is PPT and
    its entanglement is seen only by the realignment (CCNR) test.
    """
    if not isinstance(params, JurkowskiParams):
        params = JurkowskiParams(*params)
    return DensityMatrix(jurkowski_matrix(params) / params.normalization(), (3, 3))


def env_state(amps):
    """Pure environment qutrit ``|psi><psi|``."""
    if not isinstance(amps, EnvAmplitudes):
        amps = EnvAmplitudes(*amps)
    psi = amps.vector()
    return DensityMatrix(np.outer(psi, psi.conj()), (3,))


def compose_initial(ab, c):
    """Product state ``rho_AB (x) rho_C`` with dims (3, 3, 3)."""
    if tuple(ab.dims) != (3, 3):
        raise ShapeError(f"pair state must have dims (3, 3), got {ab.dims}")
    if tuple(c.dims) != (3,):
        raise ShapeError(f"environment state must have dims (3,), got {c.dims}")
    return tensor(ab, c)


def swap_02_20(m):
    """Exchange the |02> and |20> basis vectors of a 9x9 matrix.

    ``rho(e1, e2, 1/e3)`` equals ``rho(e1, e2, e3)`` with these two rows and
    columns swapped; the printed family is not invariant entrywise.
    """
    p = np.arange(9)
    p[[2, 6]] = p[[6, 2]]
    m = np.asarray(m)
    return m[np.ix_(p, p)]
