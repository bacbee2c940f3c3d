"""Complex quaternions H(C) in the standard basis (1, I, J, K) and the Cartan basis (e1..e4).

Products are computed from integer-indexed tables, so basis identities such as
``e1*e3 == e3`` hold exactly with no floating-point recombination.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BasisMismatch, SchemaError, SingularMatrix

ATOL = 1e-12


class Basis(enum.Enum):
    STANDARD = "standard"
    CARTAN = "cartan"


# (sign, index) of the product of basis elements a*b; None means zero.
_STANDARD_TABLE = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)

_CARTAN_TABLE = (
    ((1, 0), None, (1, 2), None),
    (None, (1, 1), None, (1, 3)),
    (None, (1, 2), None, (1, 0)),
    ((1, 3), None, (1, 1), None),
)

TABLES = {Basis.STANDARD: _STANDARD_TABLE, Basis.CARTAN: _CARTAN_TABLE}


def _coeffs(values) -> tuple[complex, complex, complex, complex]:
    c = tuple(complex(v) for v in values)
    if len(c) != 4:
        raise ValueError(f"a biquaternion needs 4 coefficients, got {len(c)}")
    return c  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class Biquaternion:
    basis: Basis
    c: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "c", _coeffs(self.c))

    @classmethod
    def standard(cls, a0=0, a1=0, a2=0, a3=0) -> Biquaternion:
        return cls(Basis.STANDARD, (a0, a1, a2, a3))

    @classmethod
    def cartan(cls, c1=0, c2=0, c3=0, c4=0) -> Biquaternion:
        return cls(Basis.CARTAN, (c1, c2, c3, c4))

    @classmethod
    def zero(cls, basis=Basis.CARTAN) -> Biquaternion:
        return cls(basis, (0, 0, 0, 0))

    @classmethod
    def one(cls, basis=Basis.CARTAN) -> Biquaternion:
        basis = Basis(basis)
        return cls(basis, (1, 0, 0, 0) if basis is Basis.STANDARD else (1, 1, 0, 0))

    @classmethod
    def scalar(cls, value: complex, basis=Basis.CARTAN) -> Biquaternion:
        return cls.one(basis).scale(value)

    def to(self, basis) -> Biquaternion:
        return to_cartan(self) if Basis(basis) is Basis.CARTAN else to_standard(self)

    def scale(self, lam: complex) -> Biquaternion:
        return scale(lam, self)

    def max_abs(self) -> float:
        return max(abs(x) for x in self.c)

    def isclose(self, other: Biquaternion, atol: float = ATOL) -> bool:
        other = other.to(self.basis)
        return all(abs(x - y) <= atol for x, y in zip(self.c, other.c))

    def __eq__(self, other):
        if not isinstance(other, Biquaternion):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other):
        if isinstance(other, Biquaternion):
            return add(self, other)
        return add(self, Biquaternion.scalar(other, self.basis))

    __radd__ = __add__

    def __neg__(self):
        return scale(-1, self)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Biquaternion):
            return mul(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def __repr__(self):
        names = ("1", "I", "J", "K") if self.basis is Basis.STANDARD else ("e1", "e2", "e3", "e4")
        terms = [f"{x}*{n}" for x, n in zip(self.c, names) if x != 0]
        return f"Biquaternion({self.basis.value}: {' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {"basis": self.basis.value, "c": [[x.real, x.imag] for x in self.c]}

    @classmethod
    def from_json(cls, data, path="") -> Biquaternion:
        if not isinstance(data, dict) or "basis" not in data or "c" not in data:
            raise SchemaError('expected {"basis": ..., "c": [[re, im] x4]}', path)
        try:
            basis = Basis(data["basis"])
        except ValueError:
            raise SchemaError(f"unknown basis {data['basis']!r}", f"{path}.basis") from None
        c = data["c"]
        if not isinstance(c, list) or len(c) != 4:
            raise SchemaError("expected 4 coefficients", f"{path}.c")
        return cls(basis, [parse_complex_json(x, f"{path}.c[{i}]") for i, x in enumerate(c)])


def parse_complex_json(value, path="") -> complex:
    """Accept ``[re, im]`` or a bare real number."""
    if isinstance(value, bool):
        raise SchemaError("expected a number or [re, im]", path)
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        return complex(value[0], value[1])
    raise SchemaError("expected a number or [re, im]", path)


def _check_same(a: Biquaternion, b: Biquaternion):
    if a.basis is not b.basis:
        raise BasisMismatch(f"operands are in different bases ({a.basis.value} vs {b.basis.value})")


def mul(a: Biquaternion, b: Biquaternion) -> Biquaternion:
    _check_same(a, b)
    out = [0j, 0j, 0j, 0j]
    table = TABLES[a.basis]
    for i, x in enumerate(a.c):
        if x == 0:
            continue
        for j, y in enumerate(b.c):
            entry = table[i][j]
            if entry is None or y == 0:
                continue
            sign, k = entry
            out[k] += sign * (x * y)
    return Biquaternion(a.basis, out)


def add(a: Biquaternion, b: Biquaternion) -> Biquaternion:
    _check_same(a, b)
    return Biquaternion(a.basis, [x + y for x, y in zip(a.c, b.c)])


def scale(lam: complex, a: Biquaternion) -> Biquaternion:
    lam = complex(lam)
    return Biquaternion(a.basis, [lam * x for x in a.c])


def cartan_coeffs_from_standard(a0, a1, a2, a3):
    """Coefficients on e1..e4 of a0 + a1*I + a2*J + a3*K, using 1=e1+e2, I=-ie1+ie2, J=-ie3-ie4, K=e4-e3."""
    return (a0 - 1j * a1, a0 + 1j * a1, -1j * a2 - a3, -1j * a2 + a3)


def standard_coeffs_from_cartan(c1, c2, c3, c4):
    """Inverse of :func:`cartan_coeffs_from_standard`, from e1=(1+iI)/2, e2=(1-iI)/2, e3=(iJ-K)/2, e4=(iJ+K)/2."""
    return (
        (c1 + c2) * 0.5,
        (c1 - c2) * 0.5j,
        (c3 + c4) * 0.5j,
        (c4 - c3) * 0.5,
    )


def to_cartan(a: Biquaternion) -> Biquaternion:
    if a.basis is Basis.CARTAN:
        return a
    return Biquaternion(Basis.CARTAN, cartan_coeffs_from_standard(*a.c))


def to_standard(a: Biquaternion) -> Biquaternion:
    if a.basis is Basis.STANDARD:
        return a
    return Biquaternion(Basis.STANDARD, standard_coeffs_from_cartan(*a.c))


ONE = Biquaternion.standard(1)
I = Biquaternion.standard(0, 1)
J = Biquaternion.standard(0, 0, 1)
K = Biquaternion.standard(0, 0, 0, 1)
E1 = Biquaternion.cartan(1)
E2 = Biquaternion.cartan(0, 1)
E3 = Biquaternion.cartan(0, 0, 1)
E4 = Biquaternion.cartan(0, 0, 0, 1)


class BasisMatrix:
    """Expresses the Cartan elements in another basis {i1..i4}.

    Row ``k`` holds e1's coordinates, then ``m`` (e2), ``n`` (e3), ``r`` (e4):
    e1 = k1*i1 + k2*i2 + k3*i3 + k4*i4, and so on.
    """

    def __init__(self, k: Sequence[complex], m: Sequence[complex], n: Sequence[complex], r: Sequence[complex]):
        self.k, self.m, self.n, self.r = (_coeffs(row) for row in (k, m, n, r))
        det = np.linalg.det(self.array())
        if not abs(det) > ATOL:
            raise SingularMatrix(f"basis matrix is singular (|det| = {abs(det):.3g})")
        self.det = complex(det)

    @classmethod
    def from_rows(cls, rows) -> BasisMatrix:
        rows = [list(row) for row in rows]
        if len(rows) != 4:
            raise ValueError("a basis matrix needs 4 rows")
        return cls(*rows)

    @classmethod
    def identity(cls) -> BasisMatrix:
        return cls.from_rows(np.eye(4))

    @property
    def rows(self):
        return (self.k, self.m, self.n, self.r)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=complex)

    def inverse(self) -> BasisMatrix:
        """Matrix expressing i1..i4 against the Cartan elements."""
        return BasisMatrix.from_rows(np.linalg.inv(self.array()))

    def apply(self, coeffs: Sequence[complex]) -> tuple[complex, ...]:
        """Re-express coordinates against the source rows as coordinates against the target basis."""
        coeffs = _coeffs(coeffs)
        return tuple(sum(coeffs[j] * self.rows[j][s] for j in range(4)) for s in range(4))

    def __mul__(self, other: complex) -> BasisMatrix:
        return BasisMatrix.from_rows([[other * x for x in row] for row in self.rows])

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {name: [[x.real, x.imag] for x in row] for name, row in zip("kmnr", self.rows)}

    @classmethod
    def from_json(cls, data, path="") -> BasisMatrix:
        if isinstance(data, dict):
            missing = [name for name in "kmnr" if name not in data]
            if missing:
                raise SchemaError(f"missing rows {missing}", path)
            rows = [data[name] for name in "kmnr"]
            names = list("kmnr")
        elif isinstance(data, list) and len(data) == 4:
            rows, names = data, [f"[{i}]" for i in range(4)]
        else:
            raise SchemaError('expected {"k": [...], "m": [...], "n": [...], "r": [...]} or 4 rows', path)
        parsed = []
        for row, name in zip(rows, names):
            where = f"{path}.{name}" if not name.startswith("[") else f"{path}{name}"
            if not isinstance(row, list) or len(row) != 4:
                raise SchemaError("expected 4 entries", where)
            parsed.append([parse_complex_json(x, f"{where}[{i}]") for i, x in enumerate(row)])
        return cls.from_rows(parsed)


# e1..e4 written against 1, I, J, K.
CARTAN_IN_STANDARD = BasisMatrix(
    k=(0.5, 0.5j, 0, 0),
    m=(0.5, -0.5j, 0, 0),
    n=(0, 0, 0.5j, -0.5),
    r=(0, 0, 0.5j, 0.5),
)


def change_basis(M: BasisMatrix, a: Biquaternion) -> tuple[complex, ...]:
    """Coordinates of a Cartan-tagged ``a`` against the target basis of ``M``."""
    if a.basis is not Basis.CARTAN:
        raise BasisMismatch("change_basis expects a Cartan-tagged biquaternion")
    return M.apply(a.c)
