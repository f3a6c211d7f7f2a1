"""Dense complex linear algebra for small Hermitian problems.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. Index
kernels (products, Kronecker products) dispatch to the active backend; the
eigen- and singular-value solvers are LAPACK via :mod:`numpy.linalg`.
"""
import numpy as np

from . import _backend
from .errors import DomainError, NumericError, ShapeError

HERMITIAN_TOL = 1e-10


def as_matrix(a):
    """Return `a` as a 2-D, finite, complex128 array.

    Raises
    ------
    ShapeError
        If `a` is not two-dimensional or has an empty axis.
    DomainError
        If any entry is NaN or infinite.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def _square(m):
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    return m


def matmul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return _backend.kernels.matmul(a, b)


def kron(a, b):
    return _backend.kernels.kron(as_matrix(a), as_matrix(b))


def adjoint(a):
    return np.ascontiguousarray(as_matrix(a).conj().T)


def hermiticity_residual(a):
    """Largest entry of ``|a - a^dagger|``."""
    m = _square(as_matrix(a))
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(a, tol=HERMITIAN_TOL):
    return hermiticity_residual(a) <= tol


def hermitian_eig(a, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    a : array_like
        Square matrix, Hermitian to within `tol` (max-entry residual).
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    eigenvalues : ndarray of float, ascending
    eigenvectors : ndarray, unitary, columns are eigenvectors
    """
    m = _square(as_matrix(a))
    res = float(np.max(np.abs(m - m.conj().T)))
    if res > tol:
        raise DomainError(f"matrix is not Hermitian (residual {res:.3e} > {tol:.1e})")
    try:
        w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition did not converge: {exc}") from exc
    return w, v


def eigvalsh(a, tol=HERMITIAN_TOL):
    return hermitian_eig(a, tol)[0]


def singular_values(a):
    """Singular values in descending order."""
    m = as_matrix(a)
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD did not converge: {exc}") from exc


def trace_norm(a):
    return float(np.sum(singular_values(a)))


def expm_hermitian_generator(h, t):
    """Return ``exp(-i h t)`` for Hermitian `h` via its eigendecomposition."""
    w, v = hermitian_eig(h)
    return unitary_from_eig(w, v, t)


def unitary_from_eig(w, v, t):
    """Assemble ``V diag(exp(-i w t)) V^dagger`` from a precomputed decomposition."""
    phases = np.exp(-1j * np.asarray(w, dtype=float) * float(t))
    return np.ascontiguousarray((v * phases) @ v.conj().T)


def sandwich(u, rho):
    """Return ``u rho u^dagger``."""
    u, rho = as_matrix(u), as_matrix(rho)
    if u.shape[1] != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"cannot conjugate {rho.shape} by {u.shape}")
    return _backend.kernels.sandwich(u, rho)
