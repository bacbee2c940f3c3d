"""Closed-form solutions and named weight families."""

from __future__ import annotations

from dataclasses import dataclass

from . import holoexpr as hx
from .algebra import Basis, Biquaternion, E1, E2, E3, E4, cartan_coeffs_from_standard, standard_coeffs_from_cartan
from .errors import DegenerateParams, VariableViolation
from .holoexpr import HoloExpr, Var
from .operators import BqFunction, PsiWeights

DEGENERACY_ATOL = 1e-12

_CARTAN_NAMES = {1: "z1", 2: "z2", 3: "z3", 4: "z4"}

# z in terms of t: z1 = t0 - i t1, z2 = t0 + i t1, z3 = -i t2 - t3, z4 = -i t2 + t3.
# Variables are positional: t0..t3 are Var(1)..Var(4).
Z_OF_T = {
    1: hx.lin([1, -1j, 0, 0]),
    2: hx.lin([1, 1j, 0, 0]),
    3: hx.lin([0, 0, -1j, -1]),
    4: hx.lin([0, 0, -1j, 1]),
}

# Linear inverse of Z_OF_T.
T_OF_Z = {
    1: hx.lin([0.5, 0.5, 0, 0]),
    2: hx.lin([0.5j, -0.5j, 0, 0]),
    3: hx.lin([0, 0, 0.5j, 0.5j]),
    4: hx.lin([0, 0, -0.5, 0.5]),
}


def z_of_t(t) -> tuple[complex, ...]:
    t0, t1, t2, t3 = (complex(x) for x in t)
    return (t0 - 1j * t1, t0 + 1j * t1, -1j * t2 - t3, -1j * t2 + t3)


def t_of_z(z) -> tuple[complex, ...]:
    z1, z2, z3, z4 = (complex(x) for x in z)
    return ((z1 + z2) / 2, 0.5j * (z1 - z2), 0.5j * (z3 + z4), (z4 - z3) / 2)


def cf_psi() -> PsiWeights:
    """(e2, e1, -e4, -e3): the Cauchy-Fueter operator after the change of variables z(t), up to a factor 2."""
    return PsiWeights.of(E2, E1, -E4, -E3)


def bc_psi(side: str = "left") -> PsiWeights:
    """Weights (e2, -e1, 0, 0) of the bicomplex Cauchy-Riemann analog.

    Under ``left_dirac`` they encode e2 df/dz1 = e1 df/dz2; under ``right_dirac``
    they encode df/dz1 e2 = df/dz2 e1.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    zero = Biquaternion.zero()
    return PsiWeights.of(E2, -E1, zero, zero)


def _forbid(e: HoloExpr, banned, label: str):
    bad = sorted(hx.free_vars(e) & set(banned))
    if bad:
        name = _CARTAN_NAMES[bad[0]]
        raise VariableViolation(f"{label} must not depend on {name}", variable=name)


def cf_solution(g1: HoloExpr, g2: HoloExpr) -> BqFunction:
    """Solution of e2 df/dz1 + e1 df/dz2 - e4 df/dz3 - e3 df/dz4 = 0 built from g1(z2, z3) and g2(z1, z4).

    f = g1 e1 + g2 e2 + (z3 dg2/dz1 + z2 dg2/dz4) e3 + (z4 dg1/dz2 + z1 dg1/dz3) e4
    """
    g1, g2 = hx.as_expr(g1), hx.as_expr(g2)
    _forbid(g1, (1, 4), "g1")
    _forbid(g2, (2, 3), "g2")
    z1, z2, z3, z4 = hx.Z1, hx.Z2, hx.Z3, hx.Z4
    f3 = hx._add(hx._mul(z3, hx.diff(g2, 1)), hx._mul(z2, hx.diff(g2, 4)))
    f4 = hx._add(hx._mul(z4, hx.diff(g1, 2)), hx._mul(z1, hx.diff(g1, 3)))
    return BqFunction(Basis.CARTAN, (g1, g2, f3, f4))


def standard_to_cartan_vars(f: BqFunction, normalize: bool = True) -> BqFunction:
    """Rewrite f(t) = f0 + f1 I + f2 J + f3 K as a Cartan-tagged function of z = z(t)."""
    if f.basis is Basis.CARTAN:
        return f
    comps = cartan_coeffs_from_standard(*f.f)
    out = BqFunction(Basis.CARTAN, comps).substitute(T_OF_Z)
    return out.normalize() if normalize else out


def cartan_to_standard_vars(f: BqFunction, normalize: bool = True) -> BqFunction:
    """Rewrite a Cartan-tagged f(z) as a standard-tagged function of t via z = z(t)."""
    if f.basis is Basis.STANDARD:
        return f
    comps = standard_coeffs_from_cartan(*f.f)
    out = BqFunction(Basis.STANDARD, comps).substitute(Z_OF_T)
    return out.normalize() if normalize else out


@dataclass(frozen=True)
class SpecialPsiParams:
    alpha: tuple[complex, complex, complex, complex]
    lam: complex = 0
    mu: complex = 0
    theta: complex = 0
    vartheta: complex = 0
    nu: complex = 0
    eta: complex = 0

    def __post_init__(self):
        alpha = tuple(complex(a) for a in self.alpha)
        if len(alpha) != 4:
            raise ValueError("alpha needs 4 entries")
        object.__setattr__(self, "alpha", alpha)
        for name in ("lam", "mu", "theta", "vartheta", "nu", "eta"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        a1, a2, a3, a4 = alpha
        if not abs(a1 * a2 - a3 * a4) > DEGENERACY_ATOL:
            raise DegenerateParams(f"alpha1*alpha2 must differ from alpha3*alpha4 (difference {abs(a1 * a2 - a3 * a4):.3g})")


def special_psi(p: SpecialPsiParams) -> PsiWeights:
    a1, a2, a3, a4 = p.alpha
    return PsiWeights.from_coeffs(
        [
            (a1, a2, a3, a4),
            (p.lam * a1, p.mu * a2, p.mu * a3, p.lam * a4),
            (p.theta * a1, p.vartheta * a2, p.vartheta * a3, p.theta * a4),
            (p.nu * a1, p.eta * a2, p.eta * a3, p.nu * a4),
        ]
    )


def characteristic_vars(p: SpecialPsiParams) -> tuple[tuple[HoloExpr, ...], tuple[HoloExpr, ...]]:
    """((lam z1 - z2, theta z1 - z3, nu z1 - z4), (mu z1 - z2, vartheta z1 - z3, eta z1 - z4))."""
    tilde = (
        hx.lin([p.lam, -1, 0, 0]),
        hx.lin([p.theta, 0, -1, 0]),
        hx.lin([p.nu, 0, 0, -1]),
    )
    plain = (
        hx.lin([p.mu, -1, 0, 0]),
        hx.lin([p.vartheta, 0, -1, 0]),
        hx.lin([p.eta, 0, 0, -1]),
    )
    return tilde, plain


def _slots(g: HoloExpr, args, label: str) -> HoloExpr:
    g = hx.as_expr(g)
    if 4 in hx.free_vars(g):
        raise VariableViolation(f"{label} takes three slots (z1..z3); z4 is not a slot", variable="z4")
    return hx.substitute(g, {1: args[0], 2: args[1], 3: args[2]})


def special_solution(p: SpecialPsiParams, g1, g2, g3, g4) -> BqFunction:
    """f = g1(tilde) e1 + g2(plain) e2 + g3(tilde) e3 + g4(plain) e4.

    Each g is written in three slots z1, z2, z3; slot i receives the i-th
    characteristic variable from :func:`characteristic_vars`.
    """
    tilde, plain = characteristic_vars(p)
    return BqFunction(
        Basis.CARTAN,
        (
            _slots(g1, tilde, "g1"),
            _slots(g2, plain, "g2"),
            _slots(g3, tilde, "g3"),
            _slots(g4, plain, "g4"),
        ),
    )


def transport(p: SpecialPsiParams, e: HoloExpr, tilde: bool = True) -> HoloExpr:
    """de/dz1 + lam de/dz2 + theta de/dz3 + nu de/dz4 (or mu, vartheta, eta with tilde=False)."""
    coeffs = (p.lam, p.theta, p.nu) if tilde else (p.mu, p.vartheta, p.eta)
    out = hx.diff(e, 1)
    for c, v in zip(coeffs, (2, 3, 4)):
        out = hx._add(out, hx._mul(hx.Const(c), hx.diff(e, v)))
    return out


def characteristic_flow(p: SpecialPsiParams, s: complex, tilde: bool = True) -> dict[int, HoloExpr]:
    """Substitution moving a point a distance ``s`` along dz1/1 = dz2/lam = dz3/theta = dz4/nu."""
    coeffs = (1, p.lam, p.theta, p.nu) if tilde else (1, p.mu, p.vartheta, p.eta)
    return {v: hx.Add(Var(v), hx.Const(c * s)) for v, c in zip((1, 2, 3, 4), coeffs)}
