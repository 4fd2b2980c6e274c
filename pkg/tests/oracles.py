"""Independent reference computations (mpmath, closed forms, brute force)."""
import math
import random

import mpmath as mp

from blochlab import zoo


def mpc(z):
    return mp.mpc(z.real, z.imag)


def mobius_mp(a, z):
    a, z = mpc(a), mpc(z)
    return (a - z) / (1 - mp.conj(a) * z)


def one_minus_rho2_mp(a, z):
    return 1 - abs(mobius_mp(a, z)) ** 2


def richardson_derivative(fun, z, h, levels=3):
    """Central differences at h, h/2, h/4, ... combined by Richardson extrapolation."""
    table = []
    for i in range(levels):
        hi = h / 2 ** i
        table.append([(fun(z + hi) - fun(z - hi)) / (2 * hi)])
    for j in range(1, levels):
        for i in range(j, levels):
            f4 = 4 ** j
            table[i].append((f4 * table[i][j - 1] - table[i - 1][j - 1]) / (f4 - 1))
    return table[-1][-1]


def random_disc_point(rng, rmax):
    r = rmax * math.sqrt(rng.random())
    th = rng.uniform(-math.pi, math.pi)
    return complex(r * math.cos(th), r * math.sin(th))


def horner(coefs):
    """Expression tree for sum c_k z^k."""
    expr = zoo.Constant(coefs[-1])
    for c in reversed(coefs[:-1]):
        expr = zoo.Sum(zoo.Constant(c), zoo.Product(zoo.Identity(), expr))
    return expr


def random_tree(rng: random.Random, depth: int = 3):
    """Random expression over the safe leaves and all combinators."""
    if depth == 0 or rng.random() < 0.3:
        k = rng.randrange(8)
        if k == 0:
            return zoo.Identity()
        if k == 1:
            return zoo.Constant(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
        if k == 2:
            return zoo.LogOneMinus()
        if k == 3:
            return zoo.PowOneMinus(rng.randint(1, 2))
        if k == 4:
            return zoo.AtomicInner(rng.uniform(0.2, 1.0))
        if k == 5:
            return zoo.MobiusAtom(random_disc_point(rng, 0.8))
        if k == 6:
            return zoo.BlaschkeFinite(tuple(random_disc_point(rng, 0.8) for _ in range(rng.randint(1, 3))))
        n = rng.randint(1, 3)
        return zoo.besov_assemble(complex(rng.uniform(-1, 1)),
                                  [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)],
                                  [random_disc_point(rng, 0.8) for _ in range(n)])
    k = rng.randrange(4)
    if k == 0:
        return zoo.Sum(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if k == 1:
        return zoo.Product(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if k == 2:
        return zoo.Scale(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), random_tree(rng, depth - 1))
    return zoo.Rotate(rng.uniform(-math.pi, math.pi), random_tree(rng, depth - 1))
