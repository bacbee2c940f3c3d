"""Independent oracles and seeded generators shared by the test modules."""

import numpy as np

from hyperholo import holoexpr as hx
from hyperholo.algebra import Basis, Biquaternion
from hyperholo.holoexpr import Add, Const, Exp, Mul, Neg, Pow, Var
from hyperholo.operators import BqFunction

# H(C) is isomorphic to 2x2 complex matrices; complex scalars act as scalar multiples of the identity.
_MATS = (
    np.eye(2, dtype=complex),
    np.array([[1j, 0], [0, -1j]]),
    np.array([[0, 1], [-1, 0]], dtype=complex),
    np.array([[0, 1j], [1j, 0]]),
)


def as_matrix(q: Biquaternion) -> np.ndarray:
    """Matrix image of ``q``; Cartan inputs go through e1=(1+iI)/2 etc. written out by hand."""
    if q.basis is Basis.STANDARD:
        return sum(c * m for c, m in zip(q.c, _MATS))
    one, mi, mj, mk = _MATS
    cartan = (
        (one + 1j * mi) / 2,
        (one - 1j * mi) / 2,
        (1j * mj - mk) / 2,
        (1j * mj + mk) / 2,
    )
    return sum(c * m for c, m in zip(q.c, cartan))


def random_bq(rng, basis=Basis.STANDARD, scale=1.0) -> Biquaternion:
    c = scale * (rng.normal(size=4) + 1j * rng.normal(size=4))
    return Biquaternion(basis, c)


def random_complex(rng, scale=1.0) -> complex:
    return complex(scale * rng.normal(), scale * rng.normal())


def dyadic(rng, lo=-8, hi=8, denom=4) -> complex:
    """Gaussian dyadic rational; products of a few of these are exact in double precision."""
    return complex(rng.integers(lo, hi + 1) / denom, rng.integers(lo, hi + 1) / denom)


def monomials(variables, degree):
    """Exponent dicts of total degree <= ``degree`` in ``variables``."""
    out = [()]
    for _ in variables:
        out = [m + (k,) for m in out for k in range(degree + 1) if sum(m) + k <= degree]
    return [dict(zip(variables, m)) for m in out]


def random_poly(rng, variables=(1, 2, 3, 4), degree=3, density=0.6, coef=None) -> hx.HoloExpr:
    coef = coef or (lambda: random_complex(rng))
    e = hx.ZERO
    for m in monomials(variables, degree):
        if rng.random() > density:
            continue
        term = Const(coef())
        for v, n in m.items():
            if n:
                term = Mul(term, Pow(Var(v), n) if n > 1 else Var(v))
        e = Add(e, term)
    return e


def random_exp_linear(rng, variables=(1, 2, 3, 4), scale=0.5) -> hx.HoloExpr:
    """c * exp(a0 + sum a_s v_s)."""
    arg = hx.lin([random_complex(rng, scale) if s in variables else 0 for s in range(1, 5)], random_complex(rng, scale))
    return Mul(Const(random_complex(rng)), Exp(arg))


def random_function(rng, basis=Basis.CARTAN, degree=3) -> BqFunction:
    return BqFunction(basis, tuple(random_poly(rng, degree=degree) for _ in range(4)))


def random_tree(rng, depth=4) -> hx.HoloExpr:
    """Arbitrary (unnormalized) tree over every node type."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Var(int(rng.integers(1, 5)))
        return Const(complex(round(rng.normal(), 3), round(rng.normal(), 3) if rng.random() < 0.5 else 0))
    kind = rng.integers(0, 6)
    if kind == 0:
        return Add(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 1:
        return Mul(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 2:
        return Neg(random_tree(rng, depth - 1))
    if kind == 3:
        return Pow(random_tree(rng, min(depth - 1, 1)), int(rng.integers(0, 4)))
    if kind == 4:
        return Exp(random_tree(rng, min(depth - 1, 1)))
    return Add(random_tree(rng, depth - 1), Neg(random_tree(rng, depth - 1)))


def unit_polydisc(rng, count):
    r = np.sqrt(rng.random((count, 4)))
    a = rng.uniform(0, 2 * np.pi, (count, 4))
    return [tuple(row) for row in r * np.exp(1j * a)]
