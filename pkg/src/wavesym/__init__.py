"""wavesym: symbolic Lie-symmetry engine for the equation class
u_tt = f(x,u) u_xx + g(x,u).

The package verifies invariance algebras, admissible point transformations
and equivalence-group actions, solves for symmetries of concrete equations
by exact linear algebra, and ships a machine-checked classification
catalog (wavesym.catalog) together with drivers that re-check all of it.
"""

from .deteq import ClassMember, MemberError, invariance_residuals, is_symmetry
from .equiv import (
    ElementaryKind,
    EquivalenceElement,
    adjoint_on_generator,
    apply_to_member,
    compose_equiv,
    equivalence_algebra_generator,
    factor_elementary,
    invert_equiv,
)
from .evaluate import KERNEL_NAME, EvalFloat, SingularEvaluation, UnboundSymbol, evaluate
from .expr import (
    Expr,
    ExprError,
    add,
    assume_positive,
    const,
    differentiate,
    div,
    func,
    mul,
    neg,
    pow_,
    render,
    simplify,
    sub,
    substitute,
    sym,
)
from .jets import ProlongedField, VectorField, commutator, prolong2, total_derivative
from .liealg import (
    AlgebraInvariants,
    LieAlgebraSpan,
    NotClosed,
    algebra_invariants,
    closure_check,
    contains,
    subspace_equal,
)
from .parser import ParseError, parse
from .ptrans import (
    AdmissibleTransformation,
    NotAdmissible,
    PointTransformation,
    compose_admissible,
    identity_at,
    identity_transformation,
    invert_admissible,
    pushforward_field,
    pushforward_theta,
    raw_identity_residual,
    verify_admissible,
)
from .sampling import Chart
from .solver import Ansatz, SolverConfig, SolveResult, dimension_profile, solve_symmetries
from .zerotest import ZeroVerdict, is_zero

__version__ = "0.1.0"

__all__ = [
    "Expr", "ExprError", "ParseError", "parse", "render", "simplify",
    "const", "sym", "add", "mul", "pow_", "func", "neg", "sub", "div",
    "differentiate", "substitute", "evaluate", "assume_positive",
    "EvalFloat", "SingularEvaluation", "UnboundSymbol", "KERNEL_NAME",
    "is_zero", "ZeroVerdict", "Chart",
    "VectorField", "ProlongedField", "total_derivative", "prolong2", "commutator",
    "ClassMember", "MemberError", "invariance_residuals", "is_symmetry",
    "PointTransformation", "AdmissibleTransformation", "NotAdmissible",
    "verify_admissible", "pushforward_theta", "pushforward_field",
    "compose_admissible", "invert_admissible", "identity_at",
    "identity_transformation", "raw_identity_residual",
    "EquivalenceElement", "ElementaryKind", "apply_to_member",
    "factor_elementary", "compose_equiv", "invert_equiv",
    "equivalence_algebra_generator", "adjoint_on_generator",
    "LieAlgebraSpan", "NotClosed", "closure_check", "algebra_invariants",
    "subspace_equal", "contains", "AlgebraInvariants",
    "SolverConfig", "SolveResult", "Ansatz", "solve_symmetries", "dimension_profile",
]
