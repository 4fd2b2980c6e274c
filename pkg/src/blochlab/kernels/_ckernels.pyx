# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled grid kernels.  Mirrors ``_pykernels`` term for term."""
import numpy as np

from libc.math cimport log, INFINITY

cdef extern from "complex.h" nogil:
    double cabs(double complex)


cdef inline double complex _recip(double complex w) noexcept nogil:
    # denominators here are 1 - conj(a) z with |a|, |z| < 1, so they sit
    # in an annulus and the plain formula is safe (and avoids __divdc3)
    cdef double d = w.real * w.real + w.imag * w.imag
    return w.conjugate() * (1.0 / d)


def mobius_sum(weights, atoms, zs):
    cdef const double complex[::1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef const double complex[::1] a = np.ascontiguousarray(atoms, dtype=np.complex128)
    cdef const double complex[::1] z = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef Py_ssize_t n = z.shape[0], m = a.shape[0], i, k
    out = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex ak, ac, wk
    with nogil:
        # atoms outermost: same per-point summation order as the fallback
        for k in range(m):
            ak = a[k]
            ac = ak.conjugate()
            wk = w[k]
            for i in range(n):
                o[i] = o[i] + wk * (ak - z[i]) * _recip(1.0 - ac * z[i])
    return out


def pole_sum(coefs, atoms, zs, int power):
    cdef const double complex[::1] c = np.ascontiguousarray(coefs, dtype=np.complex128)
    cdef const double complex[::1] a = np.ascontiguousarray(atoms, dtype=np.complex128)
    cdef const double complex[::1] z = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef Py_ssize_t n = z.shape[0], m = a.shape[0], i, k
    cdef int p
    out = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex ac, ck, inv, pw
    with nogil:
        for k in range(m):
            ac = a[k].conjugate()
            ck = c[k]
            for i in range(n):
                inv = _recip(1.0 - ac * z[i])
                pw = 1.0
                for p in range(power):
                    pw = pw * inv
                o[i] = o[i] + ck * pw
    return out


def blaschke_eval(zeros, zs):
    cdef const double complex[::1] a = np.ascontiguousarray(zeros, dtype=np.complex128)
    cdef const double complex[::1] z = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef Py_ssize_t n = z.shape[0], m = a.shape[0], i, k
    out = np.ones(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex ak, ac, ph
    cdef double mod
    with nogil:
        for k in range(m):
            ak = a[k]
            mod = cabs(ak)
            if mod == 0.0:
                for i in range(n):
                    o[i] = o[i] * z[i]
                continue
            ac = ak.conjugate()
            ph = ac * (1.0 / mod)
            for i in range(n):
                o[i] = o[i] * (ph * (ak - z[i]) * _recip(1.0 - ac * z[i]))
    return out


def separation_logs(zeros):
    cdef const double complex[::1] a = np.ascontiguousarray(zeros, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0], i, j
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double acc, num
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(n):
                if j == i:
                    continue
                num = cabs(a[i] - a[j])
                if num == 0.0:
                    acc = -INFINITY
                    break
                acc = acc + (log(num) - log(cabs(1.0 - a[i].conjugate() * a[j])))
            o[i] = acc
    return out
