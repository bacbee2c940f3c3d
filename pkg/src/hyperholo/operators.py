"""Weighted Dirac operators on biquaternion-valued holomorphic functions.

A function ``f = f1*e1 + f2*e2 + f3*e3 + f4*e4`` is stored as a :class:`BqFunction`
whose components are :mod:`hyperholo.holoexpr` trees. All operators return new
symbolic functions, so "the residual vanishes identically" can be decided by
normalization rather than by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import holoexpr as hx
from .algebra import (
    ATOL,
    TABLES,
    Basis,
    BasisMatrix,
    Biquaternion,
    E1,
    E2,
    E3,
    E4,
    I,
    J,
    K,
    ONE,
    to_cartan,
)
from .errors import BasisMismatch
from .holoexpr import HoloExpr


@dataclass(frozen=True)
class BqFunction:
    basis: Basis
    f: tuple[HoloExpr, HoloExpr, HoloExpr, HoloExpr]

    def __post_init__(self):
        object.__setattr__(self, "basis", Basis(self.basis))
        comps = tuple(hx.as_expr(x) for x in self.f)
        if len(comps) != 4:
            raise ValueError(f"a biquaternion function has exactly 4 components, got {len(comps)}")
        object.__setattr__(self, "f", comps)

    @classmethod
    def cartan(cls, f1=0, f2=0, f3=0, f4=0) -> BqFunction:
        return cls(Basis.CARTAN, (f1, f2, f3, f4))

    @classmethod
    def standard(cls, f0=0, f1=0, f2=0, f3=0) -> BqFunction:
        return cls(Basis.STANDARD, (f0, f1, f2, f3))

    @classmethod
    def constant(cls, q: Biquaternion) -> BqFunction:
        return cls(q.basis, tuple(hx.Const(x) for x in q.c))

    def __call__(self, p) -> Biquaternion:
        return Biquaternion(self.basis, [hx.evaluate(c, p) for c in self.f])

    def compiled(self):
        fs = [hx.lambdify(c) for c in self.f]
        return lambda p: Biquaternion(self.basis, [g(p) for g in fs])

    def map(self, fn) -> BqFunction:
        return BqFunction(self.basis, tuple(fn(c) for c in self.f))

    def normalize(self, atol: float = hx.ZERO_ATOL) -> BqFunction:
        return self.map(lambda c: hx.normalize(c, atol))

    def is_zero(self, atol: float = hx.ZERO_ATOL) -> bool:
        return all(hx.is_zero(c, atol) for c in self.f)

    def diff(self, v: int) -> BqFunction:
        return self.map(lambda c: hx.diff(c, v))

    def substitute(self, mapping) -> BqFunction:
        return self.map(lambda c: hx.substitute(c, mapping))

    def __add__(self, other: BqFunction) -> BqFunction:
        if self.basis is not other.basis:
            raise BasisMismatch("cannot add functions in different bases")
        return BqFunction(self.basis, tuple(hx.Add(a, b) for a, b in zip(self.f, other.f)))

    def __sub__(self, other: BqFunction) -> BqFunction:
        if self.basis is not other.basis:
            raise BasisMismatch("cannot subtract functions in different bases")
        return BqFunction(self.basis, tuple(hx.Add(a, hx.Neg(b)) for a, b in zip(self.f, other.f)))

    def scale(self, lam: complex) -> BqFunction:
        return self.map(lambda c: hx._mul(hx.Const(lam), c))


@dataclass(frozen=True)
class PsiWeights:
    """Weights (psi1, psi2, psi3, psi4); stored in the Cartan basis whatever basis they arrive in."""

    psi: tuple[Biquaternion, Biquaternion, Biquaternion, Biquaternion]

    def __post_init__(self):
        psi = tuple(to_cartan(w) for w in self.psi)
        if len(psi) != 4:
            raise ValueError(f"need 4 weights, got {len(psi)}")
        object.__setattr__(self, "psi", psi)

    @classmethod
    def of(cls, *weights: Biquaternion) -> PsiWeights:
        return cls(tuple(weights))

    @classmethod
    def from_coeffs(cls, rows: Sequence[Sequence[complex]]) -> PsiWeights:
        return cls(tuple(Biquaternion(Basis.CARTAN, row) for row in rows))

    @property
    def alpha(self):
        return self.psi[0].c

    @property
    def beta(self):
        return self.psi[1].c

    @property
    def gamma(self):
        return self.psi[2].c

    @property
    def delta(self):
        return self.psi[3].c

    def __getitem__(self, j):
        return self.psi[j]

    def __iter__(self):
        return iter(self.psi)

    def isclose(self, other: PsiWeights, atol: float = ATOL) -> bool:
        return all(a.isclose(b, atol) for a, b in zip(self.psi, other.psi))

    def to_json(self) -> dict:
        return {"psi": [w.to_json() for w in self.psi]}


def _require(f: BqFunction, basis: Basis, what: str):
    if f.basis is not basis:
        hint = " (convert with constructors.standard_to_cartan_vars)" if basis is Basis.CARTAN else ""
        raise BasisMismatch(f"{what} needs a {basis.value}-tagged function, got {f.basis.value}{hint}")


def _lincomb(*pairs) -> HoloExpr:
    """sum(c * e) over (c, e) pairs, dropping zero weights."""
    out: HoloExpr = hx.ZERO
    for c, e in pairs:
        if c == 0:
            continue
        out = hx._add(out, hx._mul(hx.Const(c), e))
    return out


def left_dirac(psi: PsiWeights, f: BqFunction) -> BqFunction:
    """sum_j psi_j * df/dz_j, expanded component by component from the Cartan table.

    With psi_j = sum_s w_j[s] e_s, the e1 line is
    sum_j d/dz_j (w_j[1] f1 + w_j[3] f4), and similarly for e2, e3, e4.
    """
    _require(f, Basis.CARTAN, "left_dirac")
    f1, f2, f3, f4 = f.f
    out = [hx.ZERO] * 4
    for j, w in enumerate(psi.psi, start=1):
        a1, a2, a3, a4 = w.c
        lines = (
            _lincomb((a1, f1), (a3, f4)),
            _lincomb((a2, f2), (a4, f3)),
            _lincomb((a1, f3), (a3, f2)),
            _lincomb((a2, f4), (a4, f1)),
        )
        out = [hx._add(acc, hx.diff(line, j)) for acc, line in zip(out, lines)]
    return BqFunction(Basis.CARTAN, tuple(out))


def right_dirac(psi: PsiWeights, f: BqFunction) -> BqFunction:
    """sum_j df/dz_j * psi_j; the weights multiply from the right."""
    _require(f, Basis.CARTAN, "right_dirac")
    f1, f2, f3, f4 = f.f
    out = [hx.ZERO] * 4
    for j, w in enumerate(psi.psi, start=1):
        a1, a2, a3, a4 = w.c
        lines = (
            _lincomb((a1, f1), (a4, f3)),
            _lincomb((a2, f2), (a3, f4)),
            _lincomb((a3, f1), (a2, f3)),
            _lincomb((a4, f2), (a1, f4)),
        )
        out = [hx._add(acc, hx.diff(line, j)) for acc, line in zip(out, lines)]
    return BqFunction(Basis.CARTAN, tuple(out))


def dirac(psi: PsiWeights, f: BqFunction, side: str = "left") -> BqFunction:
    if side == "left":
        return left_dirac(psi, f)
    if side == "right":
        return right_dirac(psi, f)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def weight_product(w: Biquaternion, f: BqFunction, side: str = "left") -> BqFunction:
    """Symbolic ``w * f`` (or ``f * w`` for side='right') through the generic product table."""
    if w.basis is not f.basis:
        w = w.to(f.basis)
    table = TABLES[f.basis]
    out = [hx.ZERO] * 4
    for a, x in enumerate(w.c):
        if x == 0:
            continue
        for b, comp in enumerate(f.f):
            entry = table[a][b] if side == "left" else table[b][a]
            if entry is None:
                continue
            sign, k = entry
            out[k] = hx._add(out[k], hx._mul(hx.Const(sign * x), comp))
    return BqFunction(f.basis, tuple(out))


def generic_dirac(psi: Sequence[Biquaternion], f: BqFunction, side: str = "left") -> BqFunction:
    """Same operator as :func:`dirac`, by generic multiplication in ``f``'s own basis."""
    acc = BqFunction(f.basis, (hx.ZERO,) * 4)
    for j, w in enumerate(psi, start=1):
        term = weight_product(w, f.diff(j), side)
        acc = BqFunction(f.basis, tuple(hx._add(a, b) for a, b in zip(acc.f, term.f)))
    return acc


def cauchy_fueter(f: BqFunction) -> BqFunction:
    """df/dt0 + I df/dt1 + J df/dt2 + K df/dt3 for a standard-tagged function of t0..t3."""
    _require(f, Basis.STANDARD, "cauchy_fueter")
    return generic_dirac((ONE, I, J, K), f, "left")


def fueter_psi() -> PsiWeights:
    """Weights (1, I, J, K): the Cauchy-Fueter operator written as a weighted Dirac operator."""
    return PsiWeights.of(ONE, I, J, K)


def laplacian(f: BqFunction) -> BqFunction:
    """Componentwise sum of pure second derivatives in the function's own variables."""
    return f.map(lambda c: _sum(hx.diff(hx.diff(c, s), s) for s in range(1, 5)))


def _sum(exprs: Iterable[HoloExpr]) -> HoloExpr:
    out: HoloExpr = hx.ZERO
    for e in exprs:
        out = hx._add(out, e)
    return out


def gram_sums(M: BasisMatrix) -> list[list[complex]]:
    """Row j: k_j k_u + m_j m_u + n_j n_u + r_j r_u for u = 1..4 (no conjugation)."""
    k, m, n, r = M.rows
    return [[k[j] * k[u] + m[j] * m[u] + n[j] * n[u] + r[j] * r[u] for u in range(4)] for j in range(4)]


def induced_psi(M: BasisMatrix) -> PsiWeights:
    """Weights that turn ``e1 d/dt1 + ... + e4 d/dt4`` into ``sum psi_j d/dz_j`` after the change of variables
    z_s = t1*k_s + t2*m_s + t3*n_s + t4*r_s.

    Row j of :func:`gram_sums` gives psi_j's coordinates against the target
    basis i1..i4; they are mapped back to the Cartan basis on return.
    """
    back = M.inverse()
    return PsiWeights(tuple(Biquaternion(Basis.CARTAN, back.apply(row)) for row in gram_sums(M)))


def basis_change_map(M: BasisMatrix) -> dict[int, HoloExpr]:
    """z_s in terms of t: z_s = t1*k_s + t2*m_s + t3*n_s + t4*r_s."""
    return {s + 1: hx.lin([row[s] for row in M.rows]) for s in range(4)}


def inverse_basis_change_map(M: BasisMatrix) -> dict[int, HoloExpr]:
    """t_j in terms of z, inverting :func:`basis_change_map`."""
    inv = np.linalg.inv(M.array())
    return {j + 1: hx.lin([inv[s][j] for s in range(4)]) for j in range(4)}


# -- residual reports -------------------------------------------------------


@dataclass
class ResidualReport:
    max_abs: float
    per_point: list = field(default_factory=list)
    symbolic_zero: bool = False

    def to_json(self) -> dict:
        return {
            "symbolic_zero": self.symbolic_zero,
            "max_abs": self.max_abs,
            "points": [
                {
                    "point": [[complex(x).real, complex(x).imag] for x in p],
                    "residual": [[x.real, x.imag] for x in res],
                }
                for p, res in self.per_point
            ],
        }


def sample_points(count: int, seed: int = 0, rng: np.random.Generator | None = None) -> list[tuple[complex, ...]]:
    """Points drawn uniformly from the unit polydisc |z_s| < 1."""
    rng = rng if rng is not None else np.random.default_rng(seed)
    radius = np.sqrt(rng.random((count, 4)))
    angle = rng.uniform(0, 2 * np.pi, (count, 4))
    pts = radius * np.exp(1j * angle)
    return [tuple(complex(x) for x in row) for row in pts]


def report(residual: BqFunction, points: Sequence, atol: float = hx.ZERO_ATOL) -> ResidualReport:
    if not points:
        raise ValueError("need at least one sample point")
    normalized = residual.normalize(atol)
    symbolic_zero = all(c == hx.ZERO for c in normalized.f)
    g = normalized.compiled()
    per_point = []
    for p in points:
        per_point.append((tuple(complex(x) for x in p), g(p).c))
    max_abs = max(abs(x) for _, res in per_point for x in res)
    return ResidualReport(max_abs=float(max_abs), per_point=per_point, symbolic_zero=symbolic_zero)


def residual_norm(psi: PsiWeights, f: BqFunction, side: str, points: Sequence, atol: float = hx.ZERO_ATOL) -> ResidualReport:
    return report(dirac(psi, f, side), points, atol)


CARTAN_UNIT_PSI = (E1, E2, E3, E4)
