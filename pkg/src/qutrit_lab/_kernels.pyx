# cython: language_level=3
"""Compiled index kernels for small dense complex matrices.

Mirrors ``_pykernels`` function for function. Inputs are converted to
C-contiguous complex128 before entering the typed loops. Matrix products
stay on BLAS, which a scalar loop does not beat even at 27x27 (see
``benchmarks/bench_kernels.py``); only the index shuffles are compiled.
"""
import numpy as np

from ._pykernels import matmul, sandwich  # noqa: F401

cimport cython


ctypedef double complex cplx


cdef inline const cplx[:, ::1] _c(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def kron(a, b):
    cdef const cplx[:, ::1] A = _c(a)
    cdef const cplx[:, ::1] B = _c(b)
    cdef Py_ssize_t ar = A.shape[0], ac = A.shape[1]
    cdef Py_ssize_t br = B.shape[0], bc = B.shape[1]
    cdef Py_ssize_t i, j, k, l
    cdef cplx aij
    out = np.zeros((ar * br, ac * bc), dtype=np.complex128)
    cdef cplx[:, ::1] C = out
    for i in range(ar):
        for j in range(ac):
            aij = A[i, j]
            if aij == 0:
                continue
            for k in range(br):
                for l in range(bc):
                    C[i * br + k, j * bc + l] = aij * B[k, l]
    return out


def sandwich(u, rho):
    """Return ``u @ rho @ u^dagger``."""
    u = np.asarray(u, dtype=np.complex128)
    return u @ np.asarray(rho, dtype=np.complex128) @ u.conj().T


def partial_trace(m, dims, Py_ssize_t index):
    cdef const cplx[:, ::1] M = _c(m)
    cdef Py_ssize_t left = 1, right = 1, d = dims[index]
    cdef Py_ssize_t q
    for q in range(index):
        left *= dims[q]
    for q in range(index + 1, len(dims)):
        right *= dims[q]
    cdef Py_ssize_t side = left * right
    cdef Py_ssize_t l1, r1, l2, r2, k
    cdef cplx acc
    out = np.zeros((side, side), dtype=np.complex128)
    cdef cplx[:, ::1] C = out
    for l1 in range(left):
        for r1 in range(right):
            for l2 in range(left):
                for r2 in range(right):
                    acc = 0
                    for k in range(d):
                        acc = acc + M[(l1 * d + k) * right + r1, (l2 * d + k) * right + r2]
                    C[l1 * right + r1, l2 * right + r2] = acc
    return out


def partial_transpose(m, Py_ssize_t da, Py_ssize_t db, Py_ssize_t index):
    cdef const cplx[:, ::1] M = _c(m)
    cdef Py_ssize_t i, j, k, l
    out = np.empty((da * db, da * db), dtype=np.complex128)
    cdef cplx[:, ::1] C = out
    for i in range(da):
        for j in range(db):
            for k in range(da):
                for l in range(db):
                    if index == 1:
                        C[i * db + j, k * db + l] = M[i * db + l, k * db + j]
                    else:
                        C[i * db + j, k * db + l] = M[k * db + j, i * db + l]
    return out


def realign(m, Py_ssize_t da, Py_ssize_t db):
    cdef const cplx[:, ::1] M = _c(m)
    cdef Py_ssize_t i, j, k, l
    out = np.empty((da * da, db * db), dtype=np.complex128)
    cdef cplx[:, ::1] C = out
    for i in range(da):
        for k in range(da):
            for j in range(db):
                for l in range(db):
                    C[i * da + k, j * db + l] = M[i * db + j, k * db + l]
    return out
