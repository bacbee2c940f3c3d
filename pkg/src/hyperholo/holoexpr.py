"""Expression trees for entire functions of four complex variables.

Nodes cover constants, the variables v1..v4, sums, products, negation,
nonnegative integer powers and ``exp``. Every tree denotes an entire function,
so evaluation never fails and symbolic derivatives are exact.

``normalize`` maps a tree to a canonical sum of terms ``c * v^a * exp(P)`` with
like terms merged; two trees denote the same function iff their difference
normalizes to ``Const(0)`` (up to the coefficient tolerance).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from .errors import InvalidParameter

Number = Union[int, float, complex]
Point4 = Sequence[complex]

ZERO_ATOL = 1e-12


class HoloExpr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Add(self, Neg(as_expr(other)))

    def __rsub__(self, other):
        return Add(as_expr(other), Neg(self))

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n: int):
        return Pow(self, n)

    def __str__(self):
        from .parser import print_expr

        return print_expr(self, "cartan")


@dataclass(frozen=True, eq=True, repr=True)
class Const(HoloExpr):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Var(HoloExpr):
    index: int

    def __post_init__(self):
        if self.index not in (1, 2, 3, 4):
            raise ValueError(f"variable index must be in 1..4, got {self.index}")


@dataclass(frozen=True)
class Add(HoloExpr):
    left: HoloExpr
    right: HoloExpr


@dataclass(frozen=True)
class Mul(HoloExpr):
    left: HoloExpr
    right: HoloExpr


@dataclass(frozen=True)
class Neg(HoloExpr):
    arg: HoloExpr


@dataclass(frozen=True)
class Pow(HoloExpr):
    base: HoloExpr
    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {self.exponent!r}")


@dataclass(frozen=True)
class Exp(HoloExpr):
    arg: HoloExpr


ZERO = Const(0)
ONE = Const(1)
Z1, Z2, Z3, Z4 = (Var(i) for i in range(1, 5))


def as_expr(x) -> HoloExpr:
    if isinstance(x, HoloExpr):
        return x
    if isinstance(x, (int, float, complex)) and not isinstance(x, bool):
        return Const(x)
    raise TypeError(f"cannot use {type(x).__name__} as an expression")


def lin(coeffs: Sequence[Number], const: Number = 0) -> HoloExpr:
    """The linear form const + sum(coeffs[s] * v_{s+1}), skipping zero coefficients."""
    out: HoloExpr = ZERO
    if const != 0:
        out = Const(const)
    for s, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        term = Var(s) if c == 1 else Mul(Const(c), Var(s))
        out = term if out == ZERO else Add(out, term)
    return out


# -- evaluation -------------------------------------------------------------


def evaluate(e: HoloExpr, p: Point4) -> complex:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return complex(p[e.index - 1])
    if isinstance(e, Add):
        return evaluate(e.left, p) + evaluate(e.right, p)
    if isinstance(e, Mul):
        return evaluate(e.left, p) * evaluate(e.right, p)
    if isinstance(e, Neg):
        return -evaluate(e.arg, p)
    if isinstance(e, Pow):
        return evaluate(e.base, p) ** e.exponent if e.exponent else 1 + 0j
    if isinstance(e, Exp):
        return cmath.exp(evaluate(e.arg, p))
    raise TypeError(f"not an expression node: {e!r}")


def _source(e: HoloExpr) -> str:
    if isinstance(e, Const):
        return repr(e.value)
    if isinstance(e, Var):
        return f"p[{e.index - 1}]"
    if isinstance(e, Add):
        return f"({_source(e.left)} + {_source(e.right)})"
    if isinstance(e, Mul):
        return f"({_source(e.left)} * {_source(e.right)})"
    if isinstance(e, Neg):
        return f"(-{_source(e.arg)})"
    if isinstance(e, Pow):
        return f"({_source(e.base)} ** {e.exponent})" if e.exponent else "(1+0j)"
    if isinstance(e, Exp):
        return f"_exp({_source(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def lambdify(e: HoloExpr) -> Callable[[Point4], complex]:
    """Compile ``e`` into a fast callable ``f(p)``; same values as :func:`evaluate`."""
    try:
        code = compile(f"lambda p: complex({_source(e)})", "<holoexpr>", "eval")
    except (RecursionError, MemoryError, SyntaxError):
        return lambda p: evaluate(e, p)
    return eval(code, {"_exp": cmath.exp, "complex": complex})


# -- differentiation and substitution ---------------------------------------


def _is_const(e, value=None):
    return isinstance(e, Const) and (value is None or e.value == value)


def _add(a: HoloExpr, b: HoloExpr) -> HoloExpr:
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return Add(a, b)


def _mul(a: HoloExpr, b: HoloExpr) -> HoloExpr:
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    return Mul(a, b)


def _neg(a: HoloExpr) -> HoloExpr:
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def diff(e: HoloExpr, v: int) -> HoloExpr:
    """Exact partial derivative with respect to variable ``v`` (1..4)."""
    if isinstance(v, Var):
        v = v.index
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.index == v else ZERO
    if isinstance(e, Add):
        return _add(diff(e.left, v), diff(e.right, v))
    if isinstance(e, Mul):
        return _add(_mul(diff(e.left, v), e.right), _mul(e.left, diff(e.right, v)))
    if isinstance(e, Neg):
        return _neg(diff(e.arg, v))
    if isinstance(e, Pow):
        n = e.exponent
        if n == 0:
            return ZERO
        inner = diff(e.base, v)
        if _is_const(inner, 0):
            return ZERO
        lowered = e.base if n == 2 else Pow(e.base, n - 1)
        if n == 1:
            return inner
        return _mul(_mul(Const(n), lowered), inner)
    if isinstance(e, Exp):
        return _mul(diff(e.arg, v), e)
    raise TypeError(f"not an expression node: {e!r}")


def substitute(e: HoloExpr, mapping: Mapping[int, HoloExpr]) -> HoloExpr:
    """Replace every ``Var(s)`` with ``mapping[s]`` simultaneously; unmapped variables stay."""
    mapping = {(k.index if isinstance(k, Var) else k): as_expr(x) for k, x in mapping.items()}

    def walk(node):
        if isinstance(node, Var):
            return mapping.get(node.index, node)
        if isinstance(node, Const):
            return node
        if isinstance(node, Add):
            return Add(walk(node.left), walk(node.right))
        if isinstance(node, Mul):
            return Mul(walk(node.left), walk(node.right))
        if isinstance(node, Neg):
            return Neg(walk(node.arg))
        if isinstance(node, Pow):
            return Pow(walk(node.base), node.exponent)
        if isinstance(node, Exp):
            return Exp(walk(node.arg))
        raise TypeError(f"not an expression node: {node!r}")

    return walk(e)


def free_vars(e: HoloExpr) -> set[int]:
    if isinstance(e, Var):
        return {e.index}
    if isinstance(e, Const):
        return set()
    if isinstance(e, (Add, Mul)):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, (Neg, Exp)):
        return free_vars(e.arg)
    if isinstance(e, Pow):
        return free_vars(e.base) if e.exponent else set()
    raise TypeError(f"not an expression node: {e!r}")


def size(e: HoloExpr) -> int:
    if isinstance(e, (Const, Var)):
        return 1
    if isinstance(e, (Add, Mul)):
        return 1 + size(e.left) + size(e.right)
    if isinstance(e, (Neg, Exp)):
        return 1 + size(e.arg)
    return 1 + size(e.base)


# -- numerical oracle -------------------------------------------------------


def cauchy_derivative(e: HoloExpr, v: int, p: Point4, radius: float = 0.1, n: int = 64) -> complex:
    """Partial derivative from the trapezoidal rule on Cauchy's integral over a circle in coordinate ``v``.

    Independent of :func:`diff`: only point evaluations of ``e`` are used.
    """
    if isinstance(v, Var):
        v = v.index
    if not radius > 0:
        raise InvalidParameter(f"radius must be positive, got {radius}")
    if n < 8:
        raise InvalidParameter(f"need at least 8 nodes, got {n}")
    f = lambdify(e)
    base = [complex(x) for x in p]
    total = 0j
    for k in range(n):
        w = cmath.exp(2j * math.pi * k / n)
        q = list(base)
        q[v - 1] += radius * w
        total += f(q) / w
    return total / (n * radius)


# -- canonical form ---------------------------------------------------------
#
# A polynomial-exponential sum is a dict {monomial: coefficient}. A monomial is
# (exponents, exp_key): exponents is a 4-tuple of ints and exp_key is the frozen
# form of the (constant-free) argument of a single exp factor, () meaning none.
# Coefficients inside keys are stored as (re, im) so keys stay orderable.

_UNIT = ((0, 0, 0, 0), ())


def _freeze(poly: dict) -> tuple:
    return tuple(sorted(((m, (c.real, c.imag)) for m, c in poly.items()), key=lambda item: item[0]))


def _thaw(key: tuple) -> dict:
    return {m: complex(re, im) for m, (re, im) in key}


def _prune(poly: dict, atol: float) -> dict:
    return {m: c for m, c in poly.items() if abs(c) > atol}


def _padd(a: dict, b: dict, sign=1) -> dict:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0j) + sign * c
    return out


def _mono_mul(m1, m2, atol):
    exps = tuple(x + y for x, y in zip(m1[0], m2[0]))
    if not m1[1]:
        return (exps, m2[1])
    if not m2[1]:
        return (exps, m1[1])
    arg = _prune(_padd(_thaw(m1[1]), _thaw(m2[1])), atol)
    return (exps, _freeze(arg))


def _pmul(a: dict, b: dict, atol) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mono_mul(m1, m2, atol)
            out[m] = out.get(m, 0j) + c1 * c2
    return out


def _ppow(a: dict, n: int, atol) -> dict:
    result = {_UNIT: 1 + 0j}
    base = a
    while n:
        if n & 1:
            result = _pmul(result, base, atol)
        n >>= 1
        if n:
            base = _pmul(base, base, atol)
    return result


def _pexp(a: dict, atol) -> dict:
    a = _prune(a, atol)
    c0 = a.pop(_UNIT, 0j)
    return {((0, 0, 0, 0), _freeze(a)): cmath.exp(c0)}


def to_poly(e: HoloExpr, atol: float = ZERO_ATOL) -> dict:
    if isinstance(e, Const):
        return {_UNIT: e.value} if e.value != 0 else {}
    if isinstance(e, Var):
        exps = [0, 0, 0, 0]
        exps[e.index - 1] = 1
        return {(tuple(exps), ()): 1 + 0j}
    if isinstance(e, Add):
        return _padd(to_poly(e.left, atol), to_poly(e.right, atol))
    if isinstance(e, Mul):
        return _pmul(to_poly(e.left, atol), to_poly(e.right, atol), atol)
    if isinstance(e, Neg):
        return {m: -c for m, c in to_poly(e.arg, atol).items()}
    if isinstance(e, Pow):
        return _ppow(to_poly(e.base, atol), e.exponent, atol)
    if isinstance(e, Exp):
        return _pexp(to_poly(e.arg, atol), atol)
    raise TypeError(f"not an expression node: {e!r}")


def _mono_order(m):
    exps, key = m
    return (sum(exps), tuple(-x for x in exps), len(key), key)


def _term_expr(m, c: complex) -> HoloExpr:
    exps, key = m
    factors: list[HoloExpr] = []
    for s, n in enumerate(exps, start=1):
        if n == 1:
            factors.append(Var(s))
        elif n > 1:
            factors.append(Pow(Var(s), n))
    if key:
        factors.append(Exp(from_poly(_thaw(key))))
    if c != 1 or not factors:
        factors.insert(0, Const(c))
    out = factors[0]
    for f in factors[1:]:
        out = Mul(out, f)
    return out


def from_poly(poly: dict) -> HoloExpr:
    terms = sorted(poly.items(), key=lambda item: _mono_order(item[0]))
    if not terms:
        return ZERO
    out = _term_expr(*terms[0])
    for m, c in terms[1:]:
        out = Add(out, _term_expr(m, c))
    return out


def normalize(e: HoloExpr, atol: float = ZERO_ATOL) -> HoloExpr:
    """Canonical tree: expanded, like terms merged, coefficients with ``|c| <= atol`` dropped."""
    return from_poly(_prune(to_poly(e, atol), atol))


def is_zero(e: HoloExpr, atol: float = ZERO_ATOL) -> bool:
    return normalize(e, atol) == ZERO


def equivalent(a: HoloExpr, b: HoloExpr, atol: float = ZERO_ATOL) -> bool:
    return is_zero(Add(a, Neg(b)), atol)
