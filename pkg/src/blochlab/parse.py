"""Expression mini-language and the plain-text point files.

Grammar::

    expr  := name "(" [arg ("," arg)*] ")"
    arg   := expr | number | path

Leaves: ``id()``, ``const(c)``, ``log1m()``, ``pow1m(k)``, ``inner(c)``,
``mobius(a)``, ``blaschke(file)``, ``besov(file)``, ``rotate(theta, e)``
(``theta`` may be ``pi``).  Combinators: ``sum(e, ...)``, ``product(e, ...)``,
``scale(c, e)``.  Numbers use Python complex syntax (``0.5``, ``-0.2+0.3j``).

Point files hold one point per line, either ``re im`` or ``gap_log theta g``;
``#`` starts a comment.  Besov files hold ``lam_re lam_im re im`` (or
``lam_re lam_im gap_log theta g``) per atom and optionally one line
``lambda0 re im``.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from .disc import DiscPoint
from . import zoo
from .errors import DomainError, ParseError


# ---------------------------------------------------------------------------
# tokenizer / parser

class _Call:
    __slots__ = ("name", "args", "pos")

    def __init__(self, name, args, pos):
        self.name, self.args, self.pos = name, args, pos


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def error(self, msg):
        raise ParseError(f"{msg} at position {self.i} in {self.s!r}")

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def parse(self):
        node = self.expr()
        self.ws()
        if self.i != len(self.s):
            self.error("trailing input")
        return node

    def expr(self):
        self.ws()
        start = self.i
        while self.i < len(self.s) and (self.s[self.i].isalnum() or self.s[self.i] == "_"):
            self.i += 1
        name = self.s[start:self.i]
        self.ws()
        if not name or self.i >= len(self.s) or self.s[self.i] != "(":
            self.i = start
            self.error("expected a call like name(...)")
        self.i += 1
        args = []
        self.ws()
        if self.i < len(self.s) and self.s[self.i] == ")":
            self.i += 1
            return _Call(name, args, start)
        while True:
            args.append(self.arg())
            self.ws()
            if self.i >= len(self.s):
                self.error("unclosed parenthesis")
            ch = self.s[self.i]
            self.i += 1
            if ch == ")":
                return _Call(name, args, start)
            if ch != ",":
                self.i -= 1
                self.error("expected ',' or ')'")

    def arg(self):
        self.ws()
        j = self.i
        while j < len(self.s) and (self.s[j].isalnum() or self.s[j] == "_"):
            j += 1
        k = j
        while k < len(self.s) and self.s[k].isspace():
            k += 1
        if j > self.i and k < len(self.s) and self.s[k] == "(":
            return self.expr()
        start = self.i
        depth = 0
        while self.i < len(self.s):
            ch = self.s[self.i]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif ch == "," and depth == 0:
                break
            self.i += 1
        raw = self.s[start:self.i].strip()
        if not raw:
            self.error("empty argument")
        return raw


def _number(raw, what="number") -> complex:
    if not isinstance(raw, str):
        raise ParseError(f"expected a {what}, got an expression")
    txt = raw.strip().replace(" ", "")
    if txt.lower() in ("pi", "+pi"):
        return complex(math.pi)
    if txt.lower() == "-pi":
        return complex(-math.pi)
    try:
        return complex(txt)
    except ValueError:
        raise ParseError(f"cannot read {what} {raw!r}") from None


def _real(raw, what="real number") -> float:
    c = _number(raw, what)
    if c.imag != 0:
        raise ParseError(f"{what} must be real, got {raw!r}")
    return c.real


def _path(raw, base: Path | None) -> Path:
    if not isinstance(raw, str):
        raise ParseError("expected a file path, got an expression")
    p = Path(raw.strip().strip("'\""))
    if base is not None and not p.is_absolute():
        p = base / p
    return p


def _arity(call, n):
    if len(call.args) != n:
        raise ParseError(f"{call.name}() takes {n} argument(s), got {len(call.args)}")


def _build(call, base) -> zoo.FunctionExpr:
    if not isinstance(call, _Call):
        raise ParseError(f"expected an expression, got {call!r}")
    name = call.name
    if name == "id":
        _arity(call, 0)
        return zoo.Identity()
    if name == "const":
        _arity(call, 1)
        return zoo.Constant(_number(call.args[0]))
    if name == "log1m":
        _arity(call, 0)
        return zoo.LogOneMinus()
    if name == "pow1m":
        _arity(call, 1)
        k = _real(call.args[0], "exponent")
        if k != int(k) or k < 1:
            raise ParseError("pow1m exponent must be a positive integer")
        return zoo.PowOneMinus(int(k))
    if name == "inner":
        _arity(call, 1)
        c = _real(call.args[0], "mass")
        if not c > 0:
            raise DomainError("inner(c) needs c > 0")
        return zoo.AtomicInner(c)
    if name == "mobius":
        _arity(call, 1)
        return zoo.MobiusAtom(DiscPoint.coerce(_number(call.args[0])))
    if name == "blaschke":
        _arity(call, 1)
        return zoo.BlaschkeFinite(tuple(read_points(_path(call.args[0], base))))
    if name == "besov":
        _arity(call, 1)
        lam0, weights, atoms = read_besov(_path(call.args[0], base))
        return zoo.besov_assemble(lam0, weights, atoms)
    if name == "rotate":
        _arity(call, 2)
        return zoo.Rotate(_real(call.args[0], "angle"), _build(call.args[1], base))
    if name == "scale":
        _arity(call, 2)
        return zoo.Scale(_number(call.args[0]), _build(call.args[1], base))
    if name in ("sum", "product"):
        if len(call.args) < 2:
            raise ParseError(f"{name}() needs at least two arguments")
        node = zoo.Sum if name == "sum" else zoo.Product
        out = _build(call.args[0], base)
        for a in call.args[1:]:
            out = node(out, _build(a, base))
        return out
    raise ParseError(f"unknown function {name!r}")


def parse_expr(text: str, base_dir=None) -> zoo.FunctionExpr:
    """Parse the mini-language; relative file paths resolve against ``base_dir``."""
    base = Path(base_dir) if base_dir is not None else None
    return _build(_Parser(text).parse(), base)


def load_expr(path) -> zoo.FunctionExpr:
    """Read a JSON expression tree (as produced by ``to_json``)."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read expression file {path}: {exc}") from None
    try:
        return zoo.from_json(data)
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed expression tree in {path}: {exc!r}") from None


# ---------------------------------------------------------------------------
# files

def _lines(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    for no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].split()
        if body:
            yield no, body


def _floats(tokens, where):
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise ParseError(f"{where}: expected numbers, got {' '.join(tokens)!r}") from None


def parse_point(tokens, where="point") -> DiscPoint:
    """``re im`` or ``gap_log theta g``."""
    if len(tokens) == 3 and tokens[2] == "g":
        gap, theta = _floats(tokens[:2], where)
        return DiscPoint.from_gap(gap, theta)
    if len(tokens) == 2:
        re, im = _floats(tokens, where)
        return DiscPoint.from_complex(complex(re, im))
    raise ParseError(f"{where}: expected 're im' or 'gap_log theta g', got {' '.join(tokens)!r}")


def read_points(path) -> list[DiscPoint]:
    out = []
    for no, tokens in _lines(path):
        out.append(parse_point(tokens, f"{path}:{no}"))
    return out


def read_besov(path):
    lam0 = 0j
    weights, atoms = [], []
    for no, tokens in _lines(path):
        where = f"{path}:{no}"
        if tokens[0] == "lambda0":
            if len(tokens) != 3:
                raise ParseError(f"{where}: expected 'lambda0 re im'")
            re, im = _floats(tokens[1:], where)
            lam0 = complex(re, im)
            continue
        if len(tokens) < 4:
            raise ParseError(f"{where}: expected 'lam_re lam_im' followed by a point")
        lr, li = _floats(tokens[:2], where)
        weights.append(complex(lr, li))
        atoms.append(parse_point(tokens[2:], where))
    return lam0, weights, atoms
