"""Computer algebra for complex quaternions: weighted Dirac operators and their closed-form solutions."""

from .algebra import E1, E2, E3, E4, I, J, K, ONE, Basis, BasisMatrix, Biquaternion, change_basis, mul, to_cartan, to_standard
from .constructors import (
    SpecialPsiParams,
    bc_psi,
    cartan_to_standard_vars,
    cf_psi,
    cf_solution,
    special_psi,
    special_solution,
    standard_to_cartan_vars,
)
from .holoexpr import Const, Exp, HoloExpr, Var, cauchy_derivative, diff, evaluate, normalize, substitute
from .operators import (
    BqFunction,
    PsiWeights,
    ResidualReport,
    cauchy_fueter,
    induced_psi,
    laplacian,
    left_dirac,
    residual_norm,
    right_dirac,
)
from .parser import load_job, parse_expr, print_expr

__version__ = "0.1.0"
