"""Dimension-tagged density matrices and the subsystem maps built on them.

Composite indices are row-major in the order the subsystems are listed, so for
``dims = (dA, dB, dC)`` the basis state ``|a b c>`` sits at
``(a * dB + b) * dC + c``.
"""
from dataclasses import dataclass
from math import prod, sqrt

import numpy as np

from . import _backend
from .linalg import as_matrix, hermitian_eig
from .errors import DomainError, ShapeError

TRACE_TOL = 1e-10
POSITIVITY_TOL = -1e-9


def _check_dims(dims):
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ShapeError("dims must list at least one subsystem")
    if any(d < 2 for d in dims):
        raise ShapeError(f"every subsystem dimension must be >= 2, got {dims}")
    return dims


@dataclass(frozen=True)
class DensityMatrix:
    """A square complex matrix tagged with its subsystem dimensions.

    Only structure is enforced on construction; physical validity
    (Hermitian, unit trace, positive) is reported by :func:`validate`.
    """

    mat: np.ndarray
    dims: tuple

    def __post_init__(self):
        dims = _check_dims(self.dims)
        m = np.array(as_matrix(self.mat), dtype=np.complex128, copy=True)
        side = prod(dims)
        if m.shape != (side, side):
            raise ShapeError(f"matrix shape {m.shape} does not match dims {dims}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "dims", dims)

    @property
    def side(self):
        return self.mat.shape[0]

    def trace(self):
        return complex(np.trace(self.mat))

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"


@dataclass(frozen=True)
class ValidationReport:
    hermiticity: float
    trace_deviation: float
    min_eigenvalue: float

    def ok(self, herm_tol=1e-10, trace_tol=TRACE_TOL, pos_tol=POSITIVITY_TOL):
        return (
            self.hermiticity <= herm_tol
            and self.trace_deviation <= trace_tol
            and self.min_eigenvalue >= pos_tol
        )


def validate(rho):
    """Residuals of the three density-matrix invariants.

    The minimum eigenvalue is taken over the Hermitian part, so the report is
    meaningful even when the hermiticity residual is large.
    """
    m = rho.mat
    herm = float(np.max(np.abs(m - m.conj().T)))
    trace_dev = float(abs(np.trace(m) - 1.0))
    w, _ = hermitian_eig(0.5 * (m + m.conj().T))
    return ValidationReport(herm, trace_dev, float(w[0]))


def ptrace(m, dims, index):
    """Partial trace of a raw matrix over subsystem `index`."""
    dims = _check_dims(dims)
    if not 0 <= index < len(dims):
        raise DomainError(f"subsystem index {index} out of range for dims {dims}")
    m = as_matrix(m)
    if m.shape != (prod(dims), prod(dims)):
        raise ShapeError(f"matrix shape {m.shape} does not match dims {dims}")
    return _backend.kernels.partial_trace(m, dims, index)


def partial_trace(rho, index):
    """Trace out subsystem `index`, returning the state of the rest."""
    if not 0 <= index < len(rho.dims):
        raise DomainError(f"subsystem index {index} out of range for dims {rho.dims}")
    if len(rho.dims) == 1:
        raise DomainError("cannot trace out the only subsystem; use rho.trace()")
    out = ptrace(rho.mat, rho.dims, index)
    return DensityMatrix(out, rho.dims[:index] + rho.dims[index + 1:])


def _bipartite(dims):
    if len(dims) != 2:
        raise DomainError(f"expected a bipartite state, got dims {dims}")
    return dims


def partial_transpose(rho, index=1):
    """Transpose the indices of one subsystem of a bipartite state."""
    da, db = _bipartite(rho.dims)
    if index not in (0, 1):
        raise DomainError(f"subsystem index must be 0 or 1, got {index}")
    return _backend.kernels.partial_transpose(rho.mat, da, db, index)


def realign(m, dims):
    """Realignment ``(i j),(k l) -> (i k),(j l)`` of a bipartite operator.

    Entry ``R[i*dA + k, j*dB + l] = m[i*dB + j, k*dB + l]`` where ``i, k`` index
    subsystem A and ``j, l`` index subsystem B. Output shape is ``(dA^2, dB^2)``.
    """
    da, db = (int(d) for d in dims)
    m = as_matrix(m)
    if m.shape != (da * db, da * db):
        raise ShapeError(f"matrix shape {m.shape} does not match dims {(da, db)}")
    return _backend.kernels.realign(m, da, db)


def unrealign(r, dims):
    """Inverse of :func:`realign`."""
    da, db = (int(d) for d in dims)
    r = as_matrix(r)
    if r.shape != (da * da, db * db):
        raise ShapeError(f"matrix shape {r.shape} is not a realigned {(da, db)} operator")
    t = r.reshape(da, da, db, db).transpose(0, 2, 1, 3)
    return np.ascontiguousarray(t.reshape(da * db, da * db))


def reduced_pair(rho):
    """Both single-party marginals ``(rho_A, rho_B)`` of a bipartite state."""
    _bipartite(rho.dims)
    return partial_trace(rho, 1), partial_trace(rho, 0)


def purity(rho):
    m = rho.mat
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.real(np.vdot(m.conj().T, m)))


def tensor(*states):
    """Kronecker product of density matrices, concatenating their dims."""
    if not states:
        raise ShapeError("tensor needs at least one state")
    mat, dims = states[0].mat, states[0].dims
    for s in states[1:]:
        mat = _backend.kernels.kron(mat, s.mat)
        dims = dims + s.dims
    return DensityMatrix(mat, dims)


def ket_to_dm(psi, dims):
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    return DensityMatrix(np.outer(psi, psi.conj()), dims)


def maximally_entangled(d):
    """Projector onto ``sum_i |ii> / sqrt(d)``."""
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[[i * d + i for i in range(d)]] = 1 / sqrt(d)
    return ket_to_dm(psi, (d, d))


def maximally_mixed(dims):
    dims = _check_dims(dims)
    n = prod(dims)
    return DensityMatrix(np.eye(n) / n, dims)
