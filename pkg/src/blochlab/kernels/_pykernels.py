"""Numpy implementations of the grid kernels.

Same signatures and summation order as the compiled module, so the two
backends agree to rounding.
"""
import numpy as np

_CHUNK = 1 << 14


def _chunks(n):
    for lo in range(0, n, _CHUNK):
        yield lo, min(lo + _CHUNK, n)


def mobius_sum(weights, atoms, zs):
    """``sum_k w_k (a_k - z)/(1 - conj(a_k) z)`` for every ``z`` in ``zs``."""
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    atoms = np.ascontiguousarray(atoms, dtype=np.complex128)
    zs = np.ascontiguousarray(zs, dtype=np.complex128)
    out = np.zeros(zs.shape[0], dtype=np.complex128)
    ac = atoms.conjugate()
    for lo, hi in _chunks(zs.shape[0]):
        z = zs[lo:hi]
        acc = np.zeros(hi - lo, dtype=np.complex128)
        for k in range(atoms.shape[0]):
            acc += weights[k] * (atoms[k] - z) / (1.0 - ac[k] * z)
        out[lo:hi] = acc
    return out


def pole_sum(coefs, atoms, zs, power):
    """``sum_k c_k (1 - conj(a_k) z)^(-power)``."""
    coefs = np.ascontiguousarray(coefs, dtype=np.complex128)
    atoms = np.ascontiguousarray(atoms, dtype=np.complex128)
    zs = np.ascontiguousarray(zs, dtype=np.complex128)
    out = np.zeros(zs.shape[0], dtype=np.complex128)
    ac = atoms.conjugate()
    for lo, hi in _chunks(zs.shape[0]):
        z = zs[lo:hi]
        acc = np.zeros(hi - lo, dtype=np.complex128)
        for k in range(atoms.shape[0]):
            inv = 1.0 / (1.0 - ac[k] * z)
            p = np.ones_like(inv)
            for _ in range(power):
                p = p * inv
            acc += coefs[k] * p
        out[lo:hi] = acc
    return out


def blaschke_eval(zeros, zs):
    """Finite Blaschke product; a zero at the origin contributes the factor ``z``."""
    zeros = np.ascontiguousarray(zeros, dtype=np.complex128)
    zs = np.ascontiguousarray(zs, dtype=np.complex128)
    out = np.ones(zs.shape[0], dtype=np.complex128)
    for lo, hi in _chunks(zs.shape[0]):
        z = zs[lo:hi]
        acc = np.ones(hi - lo, dtype=np.complex128)
        for k in range(zeros.shape[0]):
            a = zeros[k]
            m = abs(a)
            if m == 0.0:
                acc = acc * z
            else:
                acc = acc * ((m / a) * (a - z) / (1.0 - a.conjugate() * z))
        out[lo:hi] = acc
    return out


def separation_logs(zeros):
    """``sum_{m != n} log rho(a_n, a_m)`` for each ``n`` (``-inf`` on repeats)."""
    zeros = np.ascontiguousarray(zeros, dtype=np.complex128)
    n = zeros.shape[0]
    out = np.zeros(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        a = zeros[i]
        for j in range(n):
            if j == i:
                continue
            b = zeros[j]
            num = abs(a - b)
            if num == 0.0:
                acc = -np.inf
                break
            acc += np.log(num) - np.log(abs(1.0 - a.conjugate() * b))
        out[i] = acc
    return out
