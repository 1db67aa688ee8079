# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled gate kernels mutating complex128 amplitude arrays in place.

Same contract as _gatekernels_py: index bit k holds qubit k, qubit 0 least
significant. Pair iteration walks k over dim/2 and expands to the index with
the target bit cleared, so every kernel is a single linear pass.
"""

cdef double SQRT1_2 = 2.0 ** -0.5
cdef double complex IM = 1j


def phase_flip(double complex[::1] amps, Py_ssize_t mask):
    cdef Py_ssize_t i, dim = amps.shape[0]
    for i in range(dim):
        if (i & mask) == mask:
            amps[i] = -amps[i]


def phase_s(double complex[::1] amps, Py_ssize_t tbit):
    cdef Py_ssize_t i, dim = amps.shape[0]
    for i in range(dim):
        if i & tbit:
            amps[i] = amps[i] * IM


def flip(double complex[::1] amps, Py_ssize_t tbit, Py_ssize_t cmask=0):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t low = tbit - 1
    cdef Py_ssize_t k, i0, i1
    cdef double complex tmp
    for k in range(half):
        i0 = ((k & ~low) << 1) | (k & low)
        if (i0 & cmask) == cmask:
            i1 = i0 | tbit
            tmp = amps[i0]
            amps[i0] = amps[i1]
            amps[i1] = tmp


def hadamard(double complex[::1] amps, Py_ssize_t tbit):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t low = tbit - 1
    cdef Py_ssize_t k, i0, i1
    cdef double complex a0, a1
    for k in range(half):
        i0 = ((k & ~low) << 1) | (k & low)
        i1 = i0 | tbit
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = (a0 + a1) * SQRT1_2
        amps[i1] = (a0 - a1) * SQRT1_2


def pauli_y(double complex[::1] amps, Py_ssize_t tbit):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t low = tbit - 1
    cdef Py_ssize_t k, i0, i1
    cdef double complex a0, a1
    for k in range(half):
        i0 = ((k & ~low) << 1) | (k & low)
        i1 = i0 | tbit
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = a1 * -IM
        amps[i1] = a0 * IM
