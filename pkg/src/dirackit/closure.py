"""Bracket-algebra closure of a primary-quantity set and the
finite-dimensionality obstruction.

Each bracket {g_a, g_b} is decomposed exactly as a rational-linear
combination of the basis plus a constant (the central charge).  A
nonzero central charge in a closed algebra rules out any
finite-dimensional operator realization: commutators are traceless,
the identity is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import SamplerConfig, classify_constraints, trace_identity
from .brackets import DiracContext, bracket_table, make_context, poisson_bracket
from .errors import (
    NonPolynomialInputError,
    NotSecondClassError,
    ReportNotClosedError,
)
from .expr import RationalExpr
from .phase_space import PhaseSpace
from .poly import Polynomial, grlex_key


@dataclass(frozen=True)
class PrimarySet:
    names: tuple[str, ...]
    exprs: tuple[RationalExpr, ...]
    hamiltonian: RationalExpr | None = None

    def __post_init__(self):
        if not self.names or len(self.names) != len(self.exprs):
            raise ValueError("need matching nonempty name and expression lists")
        if len(set(self.names)) != len(self.names):
            raise ValueError("primary-quantity names must be distinct")

    def __len__(self):
        return len(self.names)


@dataclass(frozen=True)
class Decomposition:
    coefficients: tuple[Fraction, ...]
    constant: Fraction


@dataclass(frozen=True)
class AlgebraReport:
    mode: str
    names: tuple[str, ...]
    closed: bool
    c: tuple  # k x k x k structure constants
    z: tuple  # k x k central charges
    h: tuple | None  # k x k Hamiltonian coefficients
    h_const: tuple | None  # constant column of {g_a, H}; nonzero is flagged
    residuals: dict  # (a, b) -> non-decomposable bracket, when not closed
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Verdict:
    kind: str  # infinite_dimensional | no_obstruction_detected | trivial_system
    witness: dict | None
    explanation: str


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve A x = b exactly over the rationals; None when inconsistent.

    Free unknowns are set to zero; pivot ties go to the lowest row.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        scale = a[r][c]
        a[r] = [v / scale for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if a[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row_idx, c in enumerate(pivots):
        x[c] = a[row_idx][ncols]
    return x


def decompose_linear(target: RationalExpr, basis: PrimarySet,
                     allow_constant: bool) -> Decomposition | None:
    """Write target as sum(lambda_b * g_b) (+ lambda_0), exactly.

    Returns None when no exact rational combination exists; the caller
    records the target itself as the residual.
    """
    if not target.is_polynomial:
        raise NonPolynomialInputError(f"target is not polynomial: {target}")
    polys = []
    for name, e in zip(basis.names, basis.exprs):
        if not e.is_polynomial:
            raise NonPolynomialInputError(f"basis element {name} is not polynomial: {e}")
        polys.append(e.num)
    k = len(polys)
    nsyms = target.ps.nsyms
    one = (0,) * nsyms

    monomials = set(target.num.terms)
    for p in polys:
        monomials.update(p.terms)
    if allow_constant:
        monomials.add(one)
    ordered = sorted(monomials, key=grlex_key, reverse=True)

    rows = []
    rhs = []
    for mono in ordered:
        row = [p.terms.get(mono, Fraction(0)) for p in polys]
        if allow_constant:
            row.append(Fraction(1) if mono == one else Fraction(0))
        rows.append(row)
        rhs.append(target.num.terms.get(mono, Fraction(0)))
    solution = _solve_exact(rows, rhs)
    if solution is None:
        return None
    if allow_constant:
        return Decomposition(tuple(solution[:k]), solution[k])
    return Decomposition(tuple(solution), Fraction(0))


def _reduced(e: RationalExpr, rules: list[Polynomial] | None) -> RationalExpr:
    return e.reduce_mod(rules) if rules else e


def closure_analysis(primaries: PrimarySet, ctx_or_ps, mode: str,
                     on_shell_rules=None) -> AlgebraReport:
    """Decompose every pairwise bracket (and {g_a, H} when a Hamiltonian
    is declared) into structure constants plus central charges."""
    rules = None
    if on_shell_rules:
        rules = [r.as_polynomial() if isinstance(r, RationalExpr) else r
                 for r in on_shell_rules]
    reduced_basis = PrimarySet(
        names=primaries.names,
        exprs=tuple(_reduced(e, rules) for e in primaries.exprs),
        hamiltonian=primaries.hamiltonian,
    )
    k = len(primaries)
    table = bracket_table(list(primaries.exprs), ctx_or_ps, mode)

    zero = Fraction(0)
    c = [[[zero] * k for _ in range(k)] for _ in range(k)]
    z = [[zero] * k for _ in range(k)]
    residuals = {}
    notes = []
    for a in range(k):
        for b in range(a + 1, k):
            bracket = _reduced(table.at(a, b), rules)
            dec = decompose_linear(bracket, reduced_basis, allow_constant=True)
            if dec is None:
                residuals[(a, b)] = bracket
                residuals[(b, a)] = -bracket
                continue
            for idx in range(k):
                c[a][b][idx] = dec.coefficients[idx]
                c[b][a][idx] = -dec.coefficients[idx]
            z[a][b] = dec.constant
            z[b][a] = -dec.constant

    h = None
    h_const = None
    if primaries.hamiltonian is not None:
        if mode == "dirac":
            from .brackets import dirac_bracket
            ham_bracket = lambda f: dirac_bracket(f, primaries.hamiltonian, ctx_or_ps)
        else:
            ps = ctx_or_ps.ps if isinstance(ctx_or_ps, DiracContext) else ctx_or_ps
            ham_bracket = lambda f: poisson_bracket(f, primaries.hamiltonian, ps)
        h = [[zero] * k for _ in range(k)]
        h_const = [zero] * k
        for a in range(k):
            hb = _reduced(ham_bracket(primaries.exprs[a]), rules)
            dec = decompose_linear(hb, reduced_basis, allow_constant=True)
            if dec is None:
                residuals[(a, "H")] = hb
                continue
            h[a] = list(dec.coefficients)
            h_const[a] = dec.constant
            if dec.constant != 0:
                notes.append(
                    f"bracket of {primaries.names[a]} with the Hamiltonian "
                    f"carries constant term {dec.constant}; recorded in the "
                    "constant column rather than treated as closure failure")

    return AlgebraReport(
        mode=mode,
        names=primaries.names,
        closed=not residuals,
        c=tuple(tuple(tuple(row) for row in plane) for plane in c),
        z=tuple(tuple(row) for row in z),
        h=tuple(tuple(row) for row in h) if h is not None else None,
        h_const=tuple(h_const) if h_const is not None else None,
        residuals=residuals,
        notes=tuple(notes),
    )


def finite_dim_obstruction(report: AlgebraReport) -> Verdict:
    """Trace argument on a closed algebra.

    A nonzero central charge z_ab means the operator image of
    {g_a, g_b} is a nonzero multiple of the identity; in dimension D the
    left side has trace 0 and the right side trace proportional to D.
    """
    if not report.closed:
        raise ReportNotClosedError("obstruction logic requires a closed algebra")
    k = len(report.names)
    for a in range(k):
        for b in range(k):
            if report.z[a][b] != 0:
                return Verdict(
                    kind="infinite_dimensional",
                    witness={"pair": (report.names[a], report.names[b]),
                             "central_charge": report.z[a][b]},
                    explanation=(
                        f"{{{report.names[a]}, {report.names[b]}}} contains the "
                        f"constant {report.z[a][b]}; its operator image is a nonzero "
                        "multiple of the identity, whose trace in a finite dimension D "
                        "would be proportional to D, while every commutator is "
                        "traceless. No finite-dimensional realization exists."),
                )
    return Verdict(
        kind="no_obstruction_detected",
        witness=None,
        explanation=(
            "All central charges vanish, so the trace argument does not apply. "
            "This is a necessary condition only: the algebra may still fail to "
            "admit a finite-dimensional realization for other reasons. Algebras "
            "representable by traceless matrices (e.g. angular momentum / spin) "
            "do admit finite-dimensional operators."),
    )


def lemma_verdict(ps: PhaseSpace, constraints, cfg: SamplerConfig) -> Verdict:
    """Machine check of the headline result: any second-class system
    with m < n carries the central Dirac bracket sum(x_i, p_i) = n - m
    and therefore has no finite-dimensional quantization."""
    classification = classify_constraints(ps, constraints, cfg)
    if classification.verdict != "second_class":
        raise NotSecondClassError(
            "constraint set is degenerate; the obstruction analysis needs an "
            "invertible constraint bracket matrix")
    m = classification.m
    if m == ps.n:
        return Verdict(
            kind="trivial_system",
            witness=None,
            explanation=(
                f"m = n = {ps.n}: every canonical pair is constrained away, "
                "leaving no dynamical degrees of freedom; there is nothing to "
                "quantize."),
        )
    ctx = make_context(ps, constraints)
    ti = trace_identity(ctx)
    if not ti.holds:
        raise AssertionError(
            f"trace identity violated: got {ti.value}, expected {ti.expected}")
    return Verdict(
        kind="infinite_dimensional",
        witness={"trace_value": ti.expected, "trace_expression": str(ti.value)},
        explanation=(
            f"The sum of Dirac brackets of all canonical pairs equals "
            f"n - m = {ti.expected} != 0 identically. Its operator image is "
            f"{ti.expected} times the identity; were the Hilbert space of "
            "finite dimension D, taking the trace of the corresponding sum of "
            f"commutators would force 0 = {ti.expected} * D, a contradiction. "
            "The Hilbert space is infinite dimensional."),
    )
