"""Text syntax for holomorphic expressions and the JSON job format.

Grammar, loosest binding first::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INTEGER)?
    atom   := NUMBER | NUMBER "i" | "i" | VARIABLE | "exp" "(" expr ")" | "(" expr ")"

Variables are ``z1..z4`` in Cartan coordinates and ``t0..t3`` in standard
coordinates; both map positionally onto ``Var(1)..Var(4)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from . import holoexpr as hx
from .algebra import Basis, Biquaternion, parse_complex_json
from .constructors import SpecialPsiParams, bc_psi, special_psi
from .errors import BasisMismatch, ExprSyntaxError, SchemaError, WrongCoordinateSystem
from .holoexpr import Add, Const, Exp, HoloExpr, Mul, Neg, Pow, Var
from .operators import BqFunction, PsiWeights

VARIABLE_NAMES = {
    "cartan": ("z1", "z2", "z3", "z4"),
    "standard": ("t0", "t1", "t2", "t3"),
}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _coords(coords) -> str:
    value = coords.value if isinstance(coords, Basis) else str(coords)
    if value not in VARIABLE_NAMES:
        raise ValueError(f"coords must be 'cartan' or 'standard', got {coords!r}")
    return value


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos, source)
        kind = m.lastgroup
        text = m.group()
        if kind == "number":
            end = m.end()
            # "2i" is an imaginary literal; "2in" is not.
            if end < len(source) and source[end] == "i" and not (
                end + 1 < len(source) and (source[end + 1].isalnum() or source[end + 1] == "_")
            ):
                tokens.append(Token("imag", text, pos))
                pos = end + 1
                continue
            tokens.append(Token("number", text, pos))
        elif kind != "ws":
            tokens.append(Token(kind, text, pos))
        pos = m.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str, coords: str):
        self.source = source
        self.coords = coords
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ExprSyntaxError(message, tok.pos, self.source)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text):
        if self.tok.text != text or self.tok.kind not in ("op", "name"):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def parse(self) -> HoloExpr:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> HoloExpr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Add(e, Neg(rhs))
        return e

    def term(self) -> HoloExpr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text == "*":
            self.advance()
            e = Mul(e, self.unary())
        return e

    def unary(self) -> HoloExpr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> HoloExpr:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            tok = self.tok
            if tok.kind != "number" or not tok.text.isdigit():
                raise self.error("exponent must be a nonnegative integer literal")
            self.advance()
            return Pow(base, int(tok.text))
        return base

    def atom(self) -> HoloExpr:
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "imag":
            self.advance()
            return Const(complex(0, float(tok.text)))
        if tok.kind == "name":
            self.advance()
            if tok.text == "i":
                return Const(1j)
            if tok.text == "exp":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Exp(arg)
            names = VARIABLE_NAMES[self.coords]
            if tok.text in names:
                return Var(names.index(tok.text) + 1)
            for other, other_names in VARIABLE_NAMES.items():
                if tok.text in other_names:
                    raise WrongCoordinateSystem(
                        f"variable {tok.text!r} belongs to {other} coordinates, expected one of {', '.join(names)}",
                        tok.pos,
                        self.source,
                    )
            raise self.error(f"unknown name {tok.text!r}", tok)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")


def parse_expr(source: str, coords="cartan") -> HoloExpr:
    return _Parser(source, _coords(coords)).parse()


# -- printing ---------------------------------------------------------------


def _real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _coef(c: complex) -> str:
    if c.imag == 0:
        return _real(c.real)
    if c.real == 0:
        return "i" if c.imag == 1 else _real(c.imag) + "i"
    sign = "-" if c.imag < 0 else "+"
    return f"({_real(c.real)}{sign}{_real(abs(c.imag))}i)"


def _negative(c: complex) -> bool:
    if c.imag == 0:
        return c.real < 0
    return c.real == 0 and c.imag < 0


def _print_term(e: HoloExpr, names) -> tuple[bool, str]:
    """(negated, text) of one canonical summand."""
    factors = []
    while isinstance(e, Mul):
        factors.append(e.right)
        e = e.left
    factors.append(e)
    factors.reverse()
    coef = 1 + 0j
    if isinstance(factors[0], Const):
        coef = factors.pop(0).value
    neg = _negative(coef)
    if neg:
        coef = -coef
    parts = [_print_factor(f, names) for f in factors]
    if coef != 1 or not parts:
        parts.insert(0, _coef(coef))
    return neg, "*".join(parts)


def _print_factor(e: HoloExpr, names) -> str:
    if isinstance(e, Var):
        return names[e.index - 1]
    if isinstance(e, Pow):
        return f"{_print_factor(e.base, names)}^{e.exponent}"
    if isinstance(e, Exp):
        return f"exp({_print_sum(e.arg, names)})"
    if isinstance(e, Const):
        return _coef(e.value)
    return f"({_print_sum(e, names)})"


def _print_sum(e: HoloExpr, names) -> str:
    terms = []
    while isinstance(e, Add):
        terms.append(e.right)
        e = e.left
    terms.append(e)
    terms.reverse()
    out = ""
    for k, t in enumerate(terms):
        neg, text = _print_term(t, names)
        if k == 0:
            out = f"-{text}" if neg else text
        else:
            out += f" - {text}" if neg else f" + {text}"
    return out


def print_expr(e: HoloExpr, coords="cartan") -> str:
    """Canonical text of ``normalize(e)``."""
    return _print_sum(hx.normalize(e), VARIABLE_NAMES[_coords(coords)])


# -- functions and jobs -----------------------------------------------------


def function_to_json(f: BqFunction) -> dict:
    return {"basis": f.basis.value, "components": [print_expr(c, f.basis) for c in f.f]}


def function_from_json(data, path="f") -> BqFunction:
    if not isinstance(data, dict):
        raise SchemaError('expected {"basis": ..., "components": [4 strings]}', path)
    try:
        basis = Basis(data.get("basis"))
    except ValueError:
        raise SchemaError(f"basis must be 'standard' or 'cartan', got {data.get('basis')!r}", f"{path}.basis") from None
    comps = data.get("components")
    if not isinstance(comps, list) or len(comps) != 4:
        raise SchemaError("expected a list of 4 expression strings", f"{path}.components")
    exprs = []
    for k, text in enumerate(comps):
        where = f"{path}.components[{k}]"
        if not isinstance(text, str):
            raise SchemaError("expected an expression string", where)
        try:
            exprs.append(parse_expr(text, basis))
        except ExprSyntaxError as exc:
            raise type(exc)(f"{where}: {exc.args[0].rsplit(' at position', 1)[0]}", exc.position, text) from None
    return BqFunction(basis, tuple(exprs))


def psi_from_json(spec, path="psi") -> Union[str, PsiWeights]:
    """The literal ``"cf"`` is returned as-is; every other form becomes concrete weights."""
    if spec == "cf":
        return "cf"
    if spec == "bc-left":
        return bc_psi("left")
    if spec == "bc-right":
        return bc_psi("right")
    if isinstance(spec, dict) and len(spec) == 1 and "special" in spec:
        return special_psi(special_params_from_json(spec["special"], f"{path}.special"))
    if isinstance(spec, dict) and len(spec) == 1 and "explicit" in spec:
        items = spec["explicit"]
        if not isinstance(items, list) or len(items) != 4:
            raise SchemaError("expected 4 biquaternions", f"{path}.explicit")
        return PsiWeights(tuple(Biquaternion.from_json(q, f"{path}.explicit[{k}]") for k, q in enumerate(items)))
    raise SchemaError('expected "cf", "bc-left", "bc-right", {"special": {...}} or {"explicit": [...]}', path)


SPECIAL_KEYS = ("lambda", "mu", "theta", "vartheta", "nu", "eta")


def special_params_from_json(data, path="special") -> SpecialPsiParams:
    if not isinstance(data, dict):
        raise SchemaError("expected an object", path)
    unknown = sorted(set(data) - {"alpha", *SPECIAL_KEYS})
    if unknown:
        raise SchemaError(f"unknown keys {unknown}", path)
    alpha = data.get("alpha")
    if not isinstance(alpha, list) or len(alpha) != 4:
        raise SchemaError("expected 4 complex numbers", f"{path}.alpha")
    values = {key: parse_complex_json(data.get(key, 0), f"{path}.{key}") for key in SPECIAL_KEYS}
    return SpecialPsiParams(
        alpha=tuple(parse_complex_json(a, f"{path}.alpha[{k}]") for k, a in enumerate(alpha)),
        lam=values["lambda"],
        mu=values["mu"],
        theta=values["theta"],
        vartheta=values["vartheta"],
        nu=values["nu"],
        eta=values["eta"],
    )


def special_params_to_json(p: SpecialPsiParams) -> dict:
    pair = lambda x: [x.real, x.imag]  # noqa: E731
    return {
        "alpha": [pair(a) for a in p.alpha],
        "lambda": pair(p.lam),
        "mu": pair(p.mu),
        "theta": pair(p.theta),
        "vartheta": pair(p.vartheta),
        "nu": pair(p.nu),
        "eta": pair(p.eta),
    }


@dataclass(frozen=True)
class Job:
    psi: Union[str, PsiWeights]
    f: BqFunction
    side: str = "left"

    @property
    def is_cauchy_fueter(self) -> bool:
        return self.psi == "cf"


def job_from_json(data) -> Job:
    if not isinstance(data, dict):
        raise SchemaError("a job must be a JSON object", "$")
    unknown = sorted(set(data) - {"psi", "f", "side"})
    if unknown:
        raise SchemaError(f"unknown keys {unknown}", "$")
    for key in ("psi", "f"):
        if key not in data:
            raise SchemaError("missing", f"$.{key}")
    psi = psi_from_json(data["psi"], "$.psi")
    f = function_from_json(data["f"], "$.f")
    side = data.get("side", "left")
    if side not in ("left", "right"):
        raise SchemaError("side must be 'left' or 'right'", "$.side")
    if psi != "cf" and f.basis is not Basis.CARTAN:
        raise BasisMismatch("$.f.basis: weighted operators act on cartan-tagged functions of z1..z4; only \"cf\" accepts standard")
    if psi == "cf" and side != "left":
        raise SchemaError("the Cauchy-Fueter operator is a left operator", "$.side")
    return Job(psi=psi, f=f, side=side)


def load_job(path) -> Job:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", str(path)) from None
    return job_from_json(data)


def load_json_arg(text: str):
    """A CLI argument holding JSON inline, or ``@path`` / a path to a JSON file."""
    candidate = text[1:] if text.startswith("@") else text
    p = Path(candidate)
    try:
        if text.startswith("@") or (not text.lstrip().startswith(("{", "[", '"')) and p.is_file()):
            return json.loads(p.read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read JSON argument: {exc}", "argument") from None

