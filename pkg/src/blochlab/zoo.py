"""Immutable expression trees for the analytic functions used in the lab.

Every node supports three evaluation channels:

* ``_log_eval(z)`` -- precise pointwise value as a :class:`LogComplex`, stable
  at gap-regime points;
* ``_log_mod(z)`` -- ``ln|f(z)|`` assembled additively over products, so
  ``log_modulus(Product(f, g)) == log_modulus(f) + log_modulus(g)`` exactly;
* ``_grid(ctx)`` -- vectorized values on a circle, used only for scanning.

Derivatives are symbolic and returned as new trees.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .disc import (
    CircleGrid, DiscPoint, mobius_log, normalize_angle, one_minus, one_minus_conj_mul,
    one_minus_polar_array,
)
from .errors import DomainError
from .logscale import NEG_INF, ONE, ZERO, LogComplex, lsum


class _GridCtx:
    """Lazily built arrays for the points ``r e^{i theta}`` of one circle.

    The angles need not be sorted, which lets :class:`Rotate` shift them.
    """

    def __init__(self, gap_log: float, thetas: np.ndarray):
        self.gap_log = gap_log
        self.thetas = thetas
        self.t = math.exp(-gap_log)
        self._z = None
        self._omz = None

    @property
    def z(self):
        if self._z is None:
            self._z = -math.expm1(-self.gap_log) * np.exp(1j * self.thetas)
        return self._z

    @property
    def omz(self):
        if self._omz is None:
            self._omz = one_minus_polar_array(self.t, self.thetas)
        return self._omz

    @property
    def one_minus_abs2(self):
        return self.t * (2.0 - self.t)

    def rotated(self, angle: float) -> "_GridCtx":
        return _GridCtx(self.gap_log, self.thetas + angle)


def _exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def _cplx(c) -> complex:
    return complex(c)


class FunctionExpr:
    """Base class; nodes are frozen dataclasses."""

    # arithmetic sugar
    def __add__(self, other):
        return Sum(self, as_expr(other))

    def __radd__(self, other):
        return Sum(as_expr(other), self)

    def __mul__(self, other):
        if isinstance(other, FunctionExpr):
            return Product(self, other)
        return Scale(_cplx(other), self)

    def __rmul__(self, other):
        if isinstance(other, FunctionExpr):
            return Product(other, self)
        return Scale(_cplx(other), self)

    def __neg__(self):
        return Scale(-1 + 0j, self)

    def deriv(self) -> "FunctionExpr":
        cached = self.__dict__.get("_deriv_cache")
        if cached is None:
            cached = self._deriv()
            object.__setattr__(self, "_deriv_cache", cached)
        return cached

    # channels overridden per node
    def _log_eval(self, z: DiscPoint) -> LogComplex:
        raise NotImplementedError

    def _log_mod(self, z: DiscPoint) -> float:
        return self._log_eval(z).log_abs

    def _grid(self, ctx: _GridCtx) -> np.ndarray:
        raise NotImplementedError

    def _log_mod_grid(self, ctx: _GridCtx) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self._grid(ctx)))

    def _deriv(self) -> "FunctionExpr":
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def ray_angle(self):
        """Angle of a ray along which ``|f|`` is known to attain its circle
        maxima near the boundary, or ``None``."""
        return None


# ---------------------------------------------------------------------------
# leaves

@dataclass(frozen=True)
class Identity(FunctionExpr):
    def _log_eval(self, z):
        if z.is_origin:
            return ZERO
        return LogComplex(complex(math.cos(z.theta), math.sin(z.theta)), z.log_abs)

    def _log_mod(self, z):
        return z.log_abs

    def _grid(self, ctx):
        return ctx.z.copy()

    def _deriv(self):
        return Constant(1 + 0j)

    def to_json(self):
        return {"op": "identity"}


@dataclass(frozen=True)
class Constant(FunctionExpr):
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "c", _cplx(self.c))

    def _log_eval(self, z):
        return LogComplex.from_complex(self.c)

    def _grid(self, ctx):
        return np.full(ctx.thetas.shape, self.c, dtype=np.complex128)

    def _deriv(self):
        return Constant(0j)

    def to_json(self):
        return {"op": "constant", "c": [self.c.real, self.c.imag]}


@dataclass(frozen=True)
class LogOneMinus(FunctionExpr):
    """``z -> log(1/(1 - z))``, principal branch."""

    def _log_eval(self, z):
        if not z.in_gap_regime and abs(z.z) < 0.5:
            x, y = z.re, z.im
            re = -0.5 * math.log1p(x * x + y * y - 2.0 * x)
            im = math.atan2(y, 1.0 - x)
            return LogComplex.from_complex(complex(re, im))
        w = one_minus(z)
        return LogComplex.from_complex(complex(-w.log_abs, -w.arg()))

    def _grid(self, ctx):
        return -np.log(ctx.omz)

    def _deriv(self):
        return PowOneMinus(1)

    def to_json(self):
        return {"op": "log_one_minus"}

    def ray_angle(self):
        return 0.0


@dataclass(frozen=True)
class PowOneMinus(FunctionExpr):
    """``z -> (1 - z)^(-k)``."""

    k: int

    def __post_init__(self):
        if int(self.k) != self.k:
            raise DomainError("PowOneMinus exponent must be an integer")
        object.__setattr__(self, "k", int(self.k))

    def _log_eval(self, z):
        return one_minus(z) ** (-self.k)

    def _log_mod(self, z):
        return -self.k * one_minus(z).log_abs

    def _grid(self, ctx):
        return ctx.omz ** (-self.k)

    def _deriv(self):
        if self.k == 0:
            return Constant(0j)
        return Scale(complex(self.k), PowOneMinus(self.k + 1))

    def to_json(self):
        return {"op": "pow_one_minus", "k": self.k}

    def ray_angle(self):
        return 0.0 if self.k > 0 else None


@dataclass(frozen=True)
class AtomicInner(FunctionExpr):
    """``z -> exp(-c (1 + z)/(1 - z))``."""

    c: float = 1.0

    def __post_init__(self):
        if not self.c > 0.0:
            raise DomainError("AtomicInner needs c > 0")
        object.__setattr__(self, "c", float(self.c))

    def _exponent(self, z):
        w = one_minus(z)
        inv2 = -2.0 * w.log_abs
        re = _exp(z.log_one_minus_abs2 + inv2)
        # Im((1+z)/(1-z)) = 2 Im z / |1-z|^2
        im_z = math.exp(z.log_abs) * math.sin(z.theta) if not z.is_origin else 0.0
        im = 2.0 * im_z * _exp(inv2) if im_z != 0.0 else 0.0
        return re, im

    def _log_eval(self, z):
        re, im = self._exponent(z)
        return LogComplex.polar(-self.c * re, -self.c * im)

    def _log_mod(self, z):
        return -self.c * self._exponent(z)[0]

    def _grid(self, ctx):
        omz = ctx.omz
        d2 = (omz * omz.conjugate()).real
        re = ctx.one_minus_abs2 / d2
        im = 2.0 * ctx.z.imag / d2
        return np.exp(-self.c * (re + 1j * im))

    def _log_mod_grid(self, ctx):
        omz = ctx.omz
        d2 = (omz * omz.conjugate()).real
        return -self.c * ctx.one_minus_abs2 / d2

    def _deriv(self):
        return Product(AtomicInner(self.c), Scale(complex(-2.0 * self.c), PowOneMinus(2)))

    def to_json(self):
        return {"op": "atomic_inner", "c": self.c}


@dataclass(frozen=True)
class MobiusAtom(FunctionExpr):
    """``z -> (a - z)/(1 - conj(a) z)``."""

    a: DiscPoint

    def __post_init__(self):
        object.__setattr__(self, "a", DiscPoint.coerce(self.a))

    def _log_eval(self, z):
        return mobius_log(self.a, z)

    def _grid(self, ctx):
        a = self.a.z
        zs = ctx.z
        return (a - zs) / (1.0 - a.conjugate() * zs)

    def _deriv(self):
        return MobiusDerivSum((1 + 0j,), (self.a,), 1)

    def to_json(self):
        return {"op": "mobius", "a": self.a.to_json()}


def _atom_power_term(a: DiscPoint, z: DiscPoint, order: int) -> LogComplex:
    """``phi_a^(order)(z) = -order! (1-|a|^2) conj(a)^(order-1) / (1 - conj(a) z)^(order+1)``."""
    if order >= 2 and a.is_origin:
        return ZERO
    mag = math.lgamma(order + 1) + a.log_one_minus_abs2
    phase = -1 + 0j
    if order >= 2:
        mag += (order - 1) * a.log_abs
        phase = -(a.conj_phase() ** (order - 1))
    return LogComplex(phase, mag) * one_minus_conj_mul(a, z) ** (-(order + 1))


@dataclass(frozen=True)
class MobiusDerivSum(FunctionExpr):
    """``z -> sum_k w_k phi_{a_k}^(order)(z)``; derivative of a Möbius sum."""

    weights: tuple
    atoms: tuple
    order: int = 1

    def __post_init__(self):
        w = tuple(_cplx(x) for x in self.weights)
        a = tuple(DiscPoint.coerce(x) for x in self.atoms)
        if len(w) != len(a):
            raise DomainError("weights and atoms differ in length")
        if self.order < 1:
            raise DomainError("derivative order must be >= 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "atoms", a)

    def terms(self, z: DiscPoint):
        for w, a in zip(self.weights, self.atoms):
            if w == 0:
                continue
            yield LogComplex.from_complex(w) * _atom_power_term(a, z, self.order)

    def _log_eval(self, z):
        return lsum(self.terms(z))

    def _grid(self, ctx):
        m = self.order
        coefs = []
        for w, a in zip(self.weights, self.atoms):
            c = -math.factorial(m) * w * math.exp(a.log_one_minus_abs2)
            c *= a.z.conjugate() ** (m - 1) if m >= 2 else 1.0
            coefs.append(c)
        atoms = np.array([a.z for a in self.atoms], dtype=np.complex128)
        return kernels.pole_sum(np.array(coefs, dtype=np.complex128), atoms, ctx.z, m + 1)

    def _deriv(self):
        return MobiusDerivSum(self.weights, self.atoms, self.order + 1)

    def to_json(self):
        return {
            "op": "mobius_deriv_sum",
            "order": self.order,
            "weights": [[w.real, w.imag] for w in self.weights],
            "atoms": [a.to_json() for a in self.atoms],
        }


@dataclass(frozen=True)
class BlaschkeFinite(FunctionExpr):
    """``prod_j (|a_j|/a_j) (a_j - z)/(1 - conj(a_j) z)``; a zero at 0 gives ``z``."""

    zeros: tuple

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(DiscPoint.coerce(a) for a in self.zeros))

    @staticmethod
    def _factor(a: DiscPoint, z: DiscPoint) -> LogComplex:
        if a.is_origin:
            return Identity()._log_eval(z)
        return LogComplex(a.conj_phase(), 0.0) * mobius_log(a, z)

    def _log_eval(self, z):
        acc = ONE
        for a in self.zeros:
            acc = acc * self._factor(a, z)
        return acc

    def _log_mod(self, z):
        total = 0.0
        for a in self.zeros:
            total += self._factor(a, z).log_abs
        return total

    def _grid(self, ctx):
        return kernels.blaschke_eval(np.array([a.z for a in self.zeros], dtype=np.complex128), ctx.z)

    def _deriv(self):
        zs = self.zeros
        if not zs:
            return Constant(0j)
        terms = []
        for j, a in enumerate(zs):
            if a.is_origin:
                dj = Constant(1 + 0j)
            else:
                dj = Scale(a.conj_phase(), MobiusDerivSum((1 + 0j,), (a,), 1))
            rest = zs[:j] + zs[j + 1:]
            terms.append(dj if not rest else Product(dj, BlaschkeFinite(rest)))
        out = terms[0]
        for t in terms[1:]:
            out = Sum(out, t)
        return out

    def to_json(self):
        return {"op": "blaschke", "zeros": [a.to_json() for a in self.zeros]}


@dataclass(frozen=True)
class BesovAtomSum(FunctionExpr):
    """``z -> lambda0 + sum_k lambda_k phi_{a_k}(z)``.

    ``weight_l1`` caches ``sum |lambda_k|`` and ``sup_bound`` the certificate
    ``|lambda0| + weight_l1`` for the sup norm (every atom maps into the disc).
    """

    lambda0: complex
    weights: tuple
    atoms: tuple
    weight_l1: float = field(default=float("nan"), compare=False)
    sup_bound: float = field(default=float("nan"), compare=False)

    def __post_init__(self):
        w = tuple(_cplx(x) for x in self.weights)
        a = tuple(DiscPoint.coerce(x) for x in self.atoms)
        if len(w) != len(a):
            raise DomainError("weights and atoms differ in length")
        l1 = math.fsum(abs(x) for x in w)
        if not math.isfinite(l1):
            raise DomainError("weights are not summable")
        object.__setattr__(self, "lambda0", _cplx(self.lambda0))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "atoms", a)
        object.__setattr__(self, "weight_l1", l1)
        object.__setattr__(self, "sup_bound", abs(self.lambda0) + l1)

    def terms(self, z: DiscPoint):
        if self.lambda0 != 0:
            yield LogComplex.from_complex(self.lambda0)
        for w, a in zip(self.weights, self.atoms):
            if w == 0:
                continue
            yield LogComplex.from_complex(w) * mobius_log(a, z)

    def _log_eval(self, z):
        return lsum(self.terms(z))

    def _grid(self, ctx):
        atoms = np.array([a.z for a in self.atoms], dtype=np.complex128)
        w = np.array(self.weights, dtype=np.complex128)
        return self.lambda0 + kernels.mobius_sum(w, atoms, ctx.z)

    def _deriv(self):
        return MobiusDerivSum(self.weights, self.atoms, 1)

    def to_json(self):
        return {
            "op": "besov",
            "lambda0": [self.lambda0.real, self.lambda0.imag],
            "weights": [[w.real, w.imag] for w in self.weights],
            "atoms": [a.to_json() for a in self.atoms],
            "weight_l1": self.weight_l1,
            "sup_bound": self.sup_bound,
        }


# ---------------------------------------------------------------------------
# combinators

@dataclass(frozen=True)
class Sum(FunctionExpr):
    left: FunctionExpr
    right: FunctionExpr

    def _log_eval(self, z):
        return self.left._log_eval(z) + self.right._log_eval(z)

    def _grid(self, ctx):
        return self.left._grid(ctx) + self.right._grid(ctx)

    def _deriv(self):
        return _sum(self.left.deriv(), self.right.deriv())

    def to_json(self):
        return {"op": "sum", "args": [self.left.to_json(), self.right.to_json()]}


@dataclass(frozen=True)
class Product(FunctionExpr):
    left: FunctionExpr
    right: FunctionExpr

    def _log_eval(self, z):
        return self.left._log_eval(z) * self.right._log_eval(z)

    def _log_mod(self, z):
        return self.left._log_mod(z) + self.right._log_mod(z)

    def _grid(self, ctx):
        return self.left._grid(ctx) * self.right._grid(ctx)

    def _log_mod_grid(self, ctx):
        return self.left._log_mod_grid(ctx) + self.right._log_mod_grid(ctx)

    def _deriv(self):
        return _sum(_product(self.left.deriv(), self.right), _product(self.left, self.right.deriv()))

    def to_json(self):
        return {"op": "product", "args": [self.left.to_json(), self.right.to_json()]}

    def ray_angle(self):
        # only when one factor is a constant the ray survives
        if isinstance(self.left, Constant):
            return self.right.ray_angle()
        if isinstance(self.right, Constant):
            return self.left.ray_angle()
        return None


@dataclass(frozen=True)
class Scale(FunctionExpr):
    c: complex
    inner: FunctionExpr

    def __post_init__(self):
        object.__setattr__(self, "c", _cplx(self.c))

    def _log_eval(self, z):
        return LogComplex.from_complex(self.c) * self.inner._log_eval(z)

    def _log_mod(self, z):
        if self.c == 0:
            return NEG_INF
        return math.log(abs(self.c)) + self.inner._log_mod(z)

    def _grid(self, ctx):
        return self.c * self.inner._grid(ctx)

    def _log_mod_grid(self, ctx):
        if self.c == 0:
            return np.full(ctx.thetas.shape, -np.inf)
        return math.log(abs(self.c)) + self.inner._log_mod_grid(ctx)

    def _deriv(self):
        return _scale(self.c, self.inner.deriv())

    def to_json(self):
        return {"op": "scale", "c": [self.c.real, self.c.imag], "args": [self.inner.to_json()]}

    def ray_angle(self):
        return self.inner.ray_angle() if self.c != 0 else None


@dataclass(frozen=True)
class Rotate(FunctionExpr):
    """``z -> inner(e^{i angle} z)``."""

    angle: float
    inner: FunctionExpr

    def __post_init__(self):
        object.__setattr__(self, "angle", float(self.angle))

    def _log_eval(self, z):
        return self.inner._log_eval(z.rotate(self.angle))

    def _log_mod(self, z):
        return self.inner._log_mod(z.rotate(self.angle))

    def _grid(self, ctx):
        return self.inner._grid(ctx.rotated(self.angle))

    def _log_mod_grid(self, ctx):
        return self.inner._log_mod_grid(ctx.rotated(self.angle))

    def _deriv(self):
        return _scale(cmath.exp(1j * self.angle), Rotate(self.angle, self.inner.deriv()))

    def to_json(self):
        return {"op": "rotate", "theta": self.angle, "args": [self.inner.to_json()]}

    def ray_angle(self):
        inner = self.inner.ray_angle()
        if inner is None:
            return None
        return normalize_angle(inner - self.angle)


# light simplification keeps derivative trees from filling up with zeros

def _is_const(f, value):
    return isinstance(f, Constant) and f.c == value


def _sum(a, b):
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Sum(a, b)


def _product(a, b):
    if _is_const(a, 0) or _is_const(b, 0):
        return Constant(0j)
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    return Product(a, b)


def _scale(c, f):
    if c == 0 or _is_const(f, 0):
        return Constant(0j)
    if c == 1:
        return f
    if isinstance(f, Constant):
        return Constant(c * f.c)
    return Scale(c, f)


def as_expr(x) -> FunctionExpr:
    if isinstance(x, FunctionExpr):
        return x
    return Constant(_cplx(x))


# ---------------------------------------------------------------------------
# public operations

def log_evaluate(f: FunctionExpr, z) -> LogComplex:
    """Value of ``f`` at ``z`` as ``phase * exp(log_abs)``."""
    return f._log_eval(DiscPoint.coerce(z))


def evaluate(f: FunctionExpr, z) -> complex:
    """Value of ``f`` at ``z``.

    May underflow to exactly 0 (e.g. the singular inner function near 1) or
    overflow to infinity; :func:`log_modulus` is the precision-bearing channel.
    """
    return log_evaluate(f, z).to_complex()


def log_modulus(f: FunctionExpr, z) -> float:
    """``ln|f(z)|``; ``-inf`` at zeros."""
    return f._log_mod(DiscPoint.coerce(z))


def deriv(f: FunctionExpr) -> FunctionExpr:
    return f.deriv()


def evaluate_grid(f: FunctionExpr, grid: CircleGrid) -> np.ndarray:
    """Vectorized values on a circle (scanning only, not precision-bearing)."""
    return f._grid(_GridCtx(grid.gap_log, grid.thetas))


def log_modulus_grid(f: FunctionExpr, grid: CircleGrid) -> np.ndarray:
    with np.errstate(all="ignore"):
        out = f._log_mod_grid(_GridCtx(grid.gap_log, grid.thetas))
    out = np.where(np.isnan(out), -np.inf, out)
    return out


@dataclass(frozen=True)
class TailBound:
    """Certified ``sup_{|z|<=R} |B - B_N|`` for truncation after ``N`` factors."""

    truncation_index: int
    bound: float
    R: float


def blaschke_tail_bound(gaps: Sequence[float], R: float, truncation_index: int = 0) -> TailBound:
    """Bound for dropping the factors ``N, N+1, ...`` of a Blaschke product.

    ``gaps`` are ``1 - |a_n|``.  Each dropped factor obeys
    ``|1 - b_n(z)| <= (1+R)(1-|a_n|)/(1-R)`` on ``|z| <= R``; the product of the
    tail then differs from 1 by at most ``exp(sum) - 1``, and ``|B_N| <= 1``.
    """
    if not 0.0 < R < 1.0:
        raise DomainError(f"R must lie in (0, 1), got {R!r}")
    if truncation_index < 0:
        raise DomainError("truncation index must be >= 0")
    tail = [float(g) for g in gaps[truncation_index:]]
    if any(not g > 0.0 for g in tail):
        raise DomainError("gaps must be positive")
    x = (1.0 + R) / (1.0 - R) * math.fsum(tail)
    return TailBound(truncation_index, math.expm1(x), R)


def besov_assemble(lambda0, weights: Iterable, atoms: Iterable) -> BesovAtomSum:
    weights = tuple(weights)
    atoms = tuple(atoms)
    if len(weights) != len(atoms):
        raise DomainError(f"{len(weights)} weights but {len(atoms)} atoms")
    return BesovAtomSum(lambda0, weights, atoms)


# ---------------------------------------------------------------------------
# JSON AST

def _c(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def _pt(v) -> DiscPoint:
    if isinstance(v, dict):
        return DiscPoint.from_json(v)
    return DiscPoint.coerce(_c(v))


def from_json(d: dict) -> FunctionExpr:
    op = d.get("op")
    args = d.get("args", [])
    if op == "identity":
        return Identity()
    if op == "constant":
        return Constant(_c(d["c"]))
    if op == "log_one_minus":
        return LogOneMinus()
    if op == "pow_one_minus":
        return PowOneMinus(int(d["k"]))
    if op == "atomic_inner":
        return AtomicInner(float(d.get("c", 1.0)))
    if op == "mobius":
        return MobiusAtom(_pt(d["a"]))
    if op == "mobius_deriv_sum":
        return MobiusDerivSum(tuple(_c(w) for w in d["weights"]),
                              tuple(_pt(a) for a in d["atoms"]), int(d.get("order", 1)))
    if op == "blaschke":
        return BlaschkeFinite(tuple(_pt(a) for a in d["zeros"]))
    if op == "besov":
        return BesovAtomSum(_c(d.get("lambda0", 0.0)), tuple(_c(w) for w in d["weights"]),
                            tuple(_pt(a) for a in d["atoms"]))
    if op in ("sum", "product"):
        if len(args) < 2:
            raise DomainError(f"{op} needs at least two arguments")
        node = Sum if op == "sum" else Product
        out = from_json(args[0])
        for a in args[1:]:
            out = node(out, from_json(a))
        return out
    if op == "scale":
        return Scale(_c(d["c"]), from_json(args[0]))
    if op == "rotate":
        return Rotate(float(d["theta"]), from_json(args[0]))
    raise DomainError(f"unknown expression op {op!r}")


__all__ = [
    "FunctionExpr", "Identity", "Constant", "LogOneMinus", "PowOneMinus", "AtomicInner",
    "MobiusAtom", "MobiusDerivSum", "BlaschkeFinite", "BesovAtomSum", "Sum", "Product",
    "Scale", "Rotate", "TailBound", "evaluate", "log_evaluate", "log_modulus", "deriv",
    "evaluate_grid", "log_modulus_grid", "blaschke_tail_bound", "besov_assemble",
    "from_json", "as_expr",
]

