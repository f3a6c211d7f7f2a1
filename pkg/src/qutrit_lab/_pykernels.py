"""NumPy implementations of the index kernels (fallback backend)."""
import numpy as np


def matmul(a, b):
    return np.asarray(a, dtype=np.complex128) @ np.asarray(b, dtype=np.complex128)


def kron(a, b):
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def sandwich(u, rho):
    """Return ``u @ rho @ u^dagger``."""
    u = np.asarray(u, dtype=np.complex128)
    return u @ np.asarray(rho, dtype=np.complex128) @ u.conj().T


def partial_trace(m, dims, index):
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    t = np.asarray(m, dtype=np.complex128).reshape(dims + dims)
    t = np.trace(t, axis1=index, axis2=index + n)
    side = int(np.prod(dims)) // dims[index]
    return np.ascontiguousarray(t.reshape(side, side))


def partial_transpose(m, da, db, index):
    t = np.asarray(m, dtype=np.complex128).reshape(da, db, da, db)
    if index == 1:
        t = t.transpose(0, 3, 2, 1)
    else:
        t = t.transpose(2, 1, 0, 3)
    return np.ascontiguousarray(t.reshape(da * db, da * db))


def realign(m, da, db):
    t = np.asarray(m, dtype=np.complex128).reshape(da, db, da, db)
    return np.ascontiguousarray(t.transpose(0, 2, 1, 3).reshape(da * da, db * db))
