"""Command-line entry point: ``hyperholo <subcommand> ...``.

Exit codes: 0 success, 2 validation error, 3 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import holoexpr as hx
from .algebra import Basis, BasisMatrix, Biquaternion, mul
from .constructors import cartan_to_standard_vars, cf_psi, cf_solution, special_solution
from .errors import HyperholoError
from .operators import BqFunction, PsiWeights, cauchy_fueter, dirac, induced_psi, laplacian, report, sample_points
from .parser import (
    Job,
    function_from_json,
    function_to_json,
    job_from_json,
    load_json_arg,
    parse_expr,
    special_params_from_json,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3


@dataclass(frozen=True)
class CliConfig:
    seed: int = 0
    samples: int = 100
    tolerance: float = 1e-9
    radius: float = 0.1
    oracle_n: int = 64
    output: str = "json"

    def __post_init__(self):
        if self.samples < 1:
            raise HyperholoError("--samples must be at least 1")
        if not self.radius > 0:
            raise HyperholoError("--radius must be positive")
        if self.oracle_n < 8:
            raise HyperholoError("--oracle-n must be at least 8")


def _emit(payload, cfg: CliConfig, text: str | None = None):
    if cfg.output == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(payload, indent=2))


def _job(args) -> Job:
    return job_from_json(load_json_arg(args.job))


def _residual(job: Job) -> BqFunction:
    if job.is_cauchy_fueter:
        if job.f.basis is Basis.STANDARD:
            return cauchy_fueter(job.f)
        return dirac(cf_psi(), job.f, "left")
    return dirac(job.psi, job.f, job.side)


def _weights(job: Job):
    if not job.is_cauchy_fueter:
        return job.psi.psi
    if job.f.basis is Basis.STANDARD:
        one = Biquaternion.one(Basis.STANDARD)
        return (one, Biquaternion.standard(0, 1), Biquaternion.standard(0, 0, 1), Biquaternion.standard(0, 0, 0, 1))
    return cf_psi().psi


def oracle_residual(job: Job, p, radius: float, n: int) -> Biquaternion:
    """Residual at ``p`` from Cauchy-integral derivatives and generic multiplication only."""
    basis = job.f.basis
    acc = Biquaternion.zero(basis)
    for j, w in enumerate(_weights(job), start=1):
        grad = Biquaternion(basis, [hx.cauchy_derivative(c, j, p, radius, n) for c in job.f.f])
        w = w.to(basis)
        acc = acc + (mul(w, grad) if job.side == "left" else mul(grad, w))
    return acc


def cmd_mul(args, cfg):
    a = Biquaternion.from_json(load_json_arg(args.a), "a")
    b = Biquaternion.from_json(load_json_arg(args.b), "b")
    if args.in_basis:
        a, b = a.to(args.in_basis), b.to(args.in_basis)
    product = mul(a, b)
    _emit(product.to_json(), cfg, repr(product))
    return EXIT_OK


def cmd_convert(args, cfg):
    q = Biquaternion.from_json(load_json_arg(args.value), "value")
    target = args.emit or ("standard" if q.basis is Basis.CARTAN else "cartan")
    out = q.to(target)
    _emit(out.to_json(), cfg, repr(out))
    return EXIT_OK


def cmd_dirac(args, cfg):
    job = _job(args)
    out = _residual(job).normalize()
    _emit(function_to_json(out), cfg, "\n".join(function_to_json(out)["components"]))
    return EXIT_OK


def cmd_laplacian(args, cfg):
    data = load_json_arg(args.function)
    f = function_from_json(data["f"] if isinstance(data, dict) and "f" in data else data)
    out = laplacian(f).normalize()
    _emit(function_to_json(out), cfg, "\n".join(function_to_json(out)["components"]))
    return EXIT_OK


def cmd_solve(args, cfg):
    if args.kind == "cf":
        f = cf_solution(parse_expr(args.g1), parse_expr(args.g2))
    else:
        if args.params is None:
            raise HyperholoError("solve special needs --params")
        p = special_params_from_json(load_json_arg(args.params), "params")
        gs = [parse_expr(g) for g in (args.g1, args.g2, args.g3, args.g4)]
        f = special_solution(p, *gs)
    f = cartan_to_standard_vars(f) if args.emit == "standard" else f.normalize()
    _emit(function_to_json(f), cfg, "\n".join(function_to_json(f)["components"]))
    return EXIT_OK


def cmd_verify(args, cfg):
    job = _job(args)
    points = sample_points(cfg.samples, cfg.seed)
    rep = report(_residual(job), points)
    oracle = max(oracle_residual(job, p, cfg.radius, cfg.oracle_n).max_abs() for p in points)
    payload = rep.to_json()
    payload["oracle_max_abs"] = oracle
    passed = rep.max_abs <= cfg.tolerance
    payload["passed"] = passed
    text = f"symbolic_zero={rep.symbolic_zero} max_abs={rep.max_abs:.3e} oracle_max_abs={oracle:.3e} passed={passed}"
    _emit(payload, cfg, text)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_induced_psi(args, cfg):
    M = BasisMatrix.from_json(load_json_arg(args.matrix), "matrix")
    psi = induced_psi(M)
    if args.emit == "standard":
        payload = {"psi": [w.to("standard").to_json() for w in psi.psi]}
    else:
        payload = psi.to_json()
    _emit(payload, cfg, "\n".join(repr(w) for w in psi.psi))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sample points")
    common.add_argument("--samples", type=int, default=100, help="number of sample points")
    common.add_argument("--tolerance", type=float, default=1e-9, help="max residual accepted by verify")
    common.add_argument("--radius", type=float, default=0.1, help="Cauchy-integral oracle radius")
    common.add_argument("--oracle-n", type=int, default=64, help="Cauchy-integral oracle nodes")
    common.add_argument("--output", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="hyperholo", description="Biquaternion weighted Dirac operator toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", parents=[common], help="multiply two biquaternions")
    p.add_argument("a", help="biquaternion JSON (inline, @file or path)")
    p.add_argument("b")
    p.add_argument("--in-basis", choices=("standard", "cartan"), help="convert both operands first")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("convert", parents=[common], help="convert a biquaternion between bases")
    p.add_argument("value")
    p.add_argument("--emit", choices=("standard", "cartan"), help="target basis (default: the other one)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("dirac", parents=[common], help="apply the job's operator symbolically")
    p.add_argument("job")
    p.set_defaults(func=cmd_dirac)

    p = sub.add_parser("solve", parents=[common], help="build a closed-form solution")
    p.add_argument("kind", choices=("cf", "special"))
    p.add_argument("--g1", default="0")
    p.add_argument("--g2", default="0")
    p.add_argument("--g3", default="0")
    p.add_argument("--g4", default="0")
    p.add_argument("--params", help="special parameters JSON")
    p.add_argument("--emit", choices=("standard", "cartan"), default="cartan")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="residual report for a job")
    p.add_argument("job")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("laplacian", parents=[common], help="componentwise Laplacian of a function")
    p.add_argument("function", help='{"basis": ..., "components": [...]} or a job')
    p.set_defaults(func=cmd_laplacian)

    p = sub.add_parser("induced-psi", parents=[common], help="weights induced by a change of basis")
    p.add_argument("matrix", help='{"k": [...], "m": [...], "n": [...], "r": [...]}')
    p.add_argument("--emit", choices=("standard", "cartan"), default="cartan")
    p.set_defaults(func=cmd_induced_psi)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = CliConfig(args.seed, args.samples, args.tolerance, args.radius, args.oracle_n, args.output)
        return args.func(args, cfg)
    except HyperholoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
