# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt
cdef extern from "complex.h":
    double cabs(double complex) nogil
    double complex conj(double complex) nogil

cnp.import_array()


def apply_1q(amps, Py_ssize_t site, Py_ssize_t nqubits, gate):
    cdef const double complex[::1] src = np.ascontiguousarray(amps, dtype=complex)
    cdef const double complex[:, ::1] g = np.ascontiguousarray(gate, dtype=complex)
    out_arr = np.empty(src.shape[0], dtype=complex)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t stride = 1 << (nqubits - site - 1)
    cdef Py_ssize_t block = stride << 1
    cdef Py_ssize_t base, j, i0, i1
    cdef double complex a0, a1
    cdef double complex g00 = g[0, 0], g01 = g[0, 1], g10 = g[1, 0], g11 = g[1, 1]
    with nogil:
        base = 0
        while base < src.shape[0]:
            for j in range(stride):
                i0 = base + j
                i1 = i0 + stride
                a0 = src[i0]
                a1 = src[i1]
                out[i0] = g00 * a0 + g01 * a1
                out[i1] = g10 * a0 + g11 * a1
            base += block
    return out_arr


cdef inline int _popcount(long long v) nogil:
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


def pauli_overlaps(psi1, psi2, xmasks, zmasks):
    cdef const double complex[::1] p1 = np.ascontiguousarray(psi1, dtype=complex)
    cdef const double complex[::1] p2 = np.ascontiguousarray(psi2, dtype=complex)
    cdef const long long[::1] xm = np.ascontiguousarray(xmasks, dtype=np.int64)
    cdef const long long[::1] zm = np.ascontiguousarray(zmasks, dtype=np.int64)
    out_arr = np.empty(xm.shape[0], dtype=complex)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t s, x, dim = p1.shape[0]
    cdef double complex acc, term
    cdef double complex phases[4]
    phases[0] = 1
    phases[1] = 1j
    phases[2] = -1
    phases[3] = -1j
    with nogil:
        for s in range(xm.shape[0]):
            acc = 0
            for x in range(dim):
                term = conj(p1[x ^ xm[s]]) * p2[x]
                if _popcount(x & zm[s]) & 1:
                    acc = acc - term
                else:
                    acc = acc + term
            out[s] = acc * phases[_popcount(xm[s] & zm[s]) & 3]
    return out_arr


def opnorm_gamma_2x2(mats):
    cdef const double complex[:, :, ::1] m = np.ascontiguousarray(
        np.asarray(mats, dtype=complex).reshape(-1, 2, 2))
    cdef Py_ssize_t n = m.shape[0], i
    norms_arr = np.empty(n)
    gamma_arr = np.empty(n)
    cdef double[::1] norms = norms_arr
    cdef double[::1] gamma = gamma_arr
    cdef double complex a, b, c, d, det
    cdef double fro, disc
    with nogil:
        for i in range(n):
            a = m[i, 0, 0]
            b = m[i, 0, 1]
            c = m[i, 1, 0]
            d = m[i, 1, 1]
            fro = cabs(a) ** 2 + cabs(b) ** 2 + cabs(c) ** 2 + cabs(d) ** 2
            det = a * d - b * c
            disc = fro * fro - 4 * cabs(det) ** 2
            if disc < 0:
                disc = 0
            norms[i] = sqrt((fro + sqrt(disc)) / 2)
            gamma[i] = (cabs(a + d) + cabs(b + c) + cabs(b - c) + cabs(a - d)) / 2
    return norms_arr, gamma_arr
