# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping kernels; same contracts and arithmetic order as ``_pykernels``."""

import numpy as np

from libc.math cimport sqrt

cdef double S = 1.0 / sqrt(2.0)


cdef inline void _mix(double complex[::1] psi, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef double ar = psi[i].real, ai = psi[i].imag
    cdef double br = psi[j].real, bi = psi[j].imag
    psi[i] = S * (ar - bi) + 1j * (S * (ai + br))
    psi[j] = S * (br - ai) + 1j * (S * (bi + ar))


def half_step_odd(double complex[::1] psi):
    cdef Py_ssize_t i, n = psi.shape[0]
    for i in range(0, n - 1, 2):
        _mix(psi, i, i + 1)


def half_step_even(double complex[::1] psi, bint periodic):
    cdef Py_ssize_t i, n = psi.shape[0]
    for i in range(1, n - 1, 2):
        _mix(psi, i, i + 1)
    if periodic:
        _mix(psi, n - 1, 0)


cdef inline bint _edges_clear(double complex[::1] psi) noexcept nogil:
    cdef Py_ssize_t n = psi.shape[0]
    return psi[0] == 0 and psi[1] == 0 and psi[n - 2] == 0 and psi[n - 1] == 0


cdef void _full_step(double complex[::1] src, double complex[::1] dst) noexcept nogil:
    cdef Py_ssize_t i, n = src.shape[0]
    cdef Py_ssize_t left, right, far
    cdef double sr, si, ur, ui
    for i in range(n):
        left = i - 1 if i > 0 else n - 1
        right = i + 1 if i < n - 1 else 0
        if i % 2 == 0:
            far = i - 2 if i > 1 else i - 2 + n
        else:
            far = i + 2 if i < n - 2 else i + 2 - n
        sr = src[left].real + src[right].real
        si = src[left].imag + src[right].imag
        ur = src[i].real - si
        ui = src[i].imag + sr
        ur = ur - src[far].real
        ui = ui - src[far].imag
        dst[i] = 0.5 * ur + 1j * (0.5 * ui)


def coinless_steps(double complex[::1] psi, Py_ssize_t steps, bint periodic):
    cdef double complex[::1] buf = np.empty_like(np.asarray(psi))
    cdef double complex[::1] a = psi, b = buf, tmp
    cdef Py_ssize_t k, done = steps
    with nogil:
        for k in range(steps):
            if not periodic and not _edges_clear(a):
                done = k
                break
            _full_step(a, b)
            tmp = a
            a = b
            b = tmp
    if done % 2:
        psi[:] = buf
    return done


def wall_steps(double complex[::1] psi, Py_ssize_t steps, Py_ssize_t wall_index, double[::1] absorbed):
    cdef double complex[::1] buf = np.empty_like(np.asarray(psi))
    cdef double complex[::1] a = psi, b = buf, tmp
    cdef Py_ssize_t k, i, done = steps
    cdef double acc
    with nogil:
        for k in range(steps):
            if not _edges_clear(a):
                done = k
                break
            _full_step(a, b)
            acc = 0.0
            for i in range(wall_index):
                acc += b[i].real * b[i].real + b[i].imag * b[i].imag
                b[i] = 0
            absorbed[k] = acc
            tmp = a
            a = b
            b = tmp
    if done % 2:
        psi[:] = buf
    return done


def classical_steps(double[::1] p, Py_ssize_t steps):
    cdef Py_ssize_t k, i, n = p.shape[0], done = steps
    cdef double prev, cur
    with nogil:
        for k in range(steps):
            if p[1] != 0 or p[n - 2] != 0:
                done = k
                break
            prev = p[0]
            for i in range(1, n - 1):
                cur = p[i]
                p[i] = 0.5 * (prev + p[i + 1])
                prev = cur
    return done
