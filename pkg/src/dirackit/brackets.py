"""Poisson and Dirac brackets on a phase space.

The Poisson bracket of f and g is

    {f, g} = sum_i (df/dx_i * dg/dp_i - df/dp_i * dg/dx_i)

with the canonical pairing x_i <-> p_i.  For a second-class constraint
set chi_1..chi_2m the Dirac bracket is

    {f, g}_D = {f, g} - {f, chi_a} * (Delta^-1)_ab * {chi_b, g}

where Delta_ab = {chi_a, chi_b} must be invertible as a matrix of
rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NotSecondClassError,
    OddConstraintCountError,
    SingularMatrixError,
    TooManyConstraintsError,
)
from .expr import RationalExpr
from .matrix import ExprMatrix, invert_matrix
from .phase_space import PhaseSpace


def poisson_bracket(f: RationalExpr, g: RationalExpr, ps: PhaseSpace) -> RationalExpr:
    acc = RationalExpr.zero(ps)
    for i in range(1, ps.n + 1):
        xi = ps.coordinate_index(i)
        pi = ps.momentum_index(i)
        acc = acc + f.diff_index(xi) * g.diff_index(pi) \
                  - f.diff_index(pi) * g.diff_index(xi)
    return acc


def delta_matrix(constraints: list[RationalExpr], ps: PhaseSpace) -> ExprMatrix:
    """Constraint bracket matrix Delta_ab = {chi_a, chi_b}; exactly skew."""
    k = len(constraints)
    if k < 2 or k % 2 != 0:
        raise OddConstraintCountError(f"need an even number >= 2 of constraints, got {k}")
    zero = RationalExpr.zero(ps)
    entries = [[zero] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            v = poisson_bracket(constraints[a], constraints[b], ps)
            entries[a][b] = v
            entries[b][a] = -v
    return ExprMatrix.from_rows(entries)


@dataclass(frozen=True)
class DiracContext:
    ps: PhaseSpace
    constraints: tuple[RationalExpr, ...]
    delta: ExprMatrix
    delta_inv: ExprMatrix

    @property
    def m(self) -> int:
        return len(self.constraints) // 2


def make_context(ps: PhaseSpace, constraints) -> DiracContext:
    """Validate a second-class constraint set and cache Delta and its inverse."""
    constraints = tuple(constraints)
    k = len(constraints)
    if k == 0 or k % 2 != 0:
        raise OddConstraintCountError(f"need an even number >= 2 of constraints, got {k}")
    if k > 2 * ps.n:
        raise TooManyConstraintsError(f"{k} constraints exceed 2n = {2 * ps.n}")
    delta = delta_matrix(constraints, ps)
    try:
        delta_inv = invert_matrix(delta)
    except SingularMatrixError as exc:
        raise NotSecondClassError(
            "constraint bracket matrix is symbolically singular") from exc
    return DiracContext(ps, constraints, delta, delta_inv)


def dirac_bracket(f: RationalExpr, g: RationalExpr, ctx: DiracContext) -> RationalExpr:
    ps = ctx.ps
    k = len(ctx.constraints)
    f_chi = [poisson_bracket(f, chi, ps) for chi in ctx.constraints]
    chi_g = [poisson_bracket(chi, g, ps) for chi in ctx.constraints]
    acc = poisson_bracket(f, g, ps)
    for a in range(k):
        if f_chi[a].is_zero:
            continue
        for b in range(k):
            entry = ctx.delta_inv.at(a, b)
            if entry.is_zero or chi_g[b].is_zero:
                continue
            acc = acc - f_chi[a] * entry * chi_g[b]
    return acc


def bracket_table(items, ctx_or_ps, mode: str = "poisson") -> ExprMatrix:
    """All pairwise brackets of items; exactly skew-symmetric by construction."""
    items = list(items)
    if not items:
        raise ValueError("items must be nonempty")
    if mode == "poisson":
        ps = ctx_or_ps.ps if isinstance(ctx_or_ps, DiracContext) else ctx_or_ps
        bracket = lambda f, g: poisson_bracket(f, g, ps)
    elif mode == "dirac":
        if not isinstance(ctx_or_ps, DiracContext):
            raise ValueError("dirac mode requires a DiracContext")
        ps = ctx_or_ps.ps
        bracket = lambda f, g: dirac_bracket(f, g, ctx_or_ps)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    k = len(items)
    zero = RationalExpr.zero(ps)
    entries = [[zero] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            v = bracket(items[a], items[b])
            entries[a][b] = v
            entries[b][a] = -v
    return ExprMatrix.from_rows(entries)
