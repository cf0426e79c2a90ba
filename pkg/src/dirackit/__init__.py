"""dirackit: exact Poisson/Dirac bracket analysis of finite-dimensional
constrained Hamiltonian systems.

Everything is exact rational arithmetic; floating point appears only in
numeric evaluation and on-shell sampling.
"""

__version__ = "0.1.0"

from .analysis import (
    Classification,
    SamplerConfig,
    TraceIdentity,
    classify_constraints,
    dof_count,
    reduction_check,
    sample_on_shell,
    trace_identity,
)
from .brackets import (
    DiracContext,
    bracket_table,
    delta_matrix,
    dirac_bracket,
    make_context,
    poisson_bracket,
)
from .closure import (
    AlgebraReport,
    PrimarySet,
    Verdict,
    closure_analysis,
    decompose_linear,
    finite_dim_obstruction,
    lemma_verdict,
)
from .expr import (
    RationalExpr,
    arithmetic,
    differentiate,
    evaluate,
    is_zero,
    print_expression,
    reduce_mod_constraints,
)
from .matrix import ExprMatrix, invert_matrix
from .parser import parse_expression
from .phase_space import PhaseSpace
from .poly import Polynomial
from .sysfile import SystemSpec, load_system

__all__ = [
    "AlgebraReport",
    "Classification",
    "DiracContext",
    "ExprMatrix",
    "PhaseSpace",
    "Polynomial",
    "PrimarySet",
    "RationalExpr",
    "SamplerConfig",
    "SystemSpec",
    "TraceIdentity",
    "Verdict",
    "arithmetic",
    "bracket_table",
    "classify_constraints",
    "closure_analysis",
    "decompose_linear",
    "delta_matrix",
    "differentiate",
    "dirac_bracket",
    "dof_count",
    "evaluate",
    "finite_dim_obstruction",
    "invert_matrix",
    "is_zero",
    "lemma_verdict",
    "load_system",
    "make_context",
    "parse_expression",
    "poisson_bracket",
    "print_expression",
    "reduce_mod_constraints",
    "reduction_check",
    "sample_on_shell",
    "trace_identity",
]
