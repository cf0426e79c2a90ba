"""Shared fixtures and independent numeric oracles.

The finite-difference brackets here deliberately avoid the symbolic
differentiation path: partials are central differences of plain numeric
evaluation, so they can serve as an independent cross-check.
"""

import random
from fractions import Fraction

import numpy as np
import pytest

from dirackit import PhaseSpace, RationalExpr, make_context, parse_expression
from dirackit.poly import Polynomial

FD_STEP = 1e-5


@pytest.fixture
def ps2():
    return PhaseSpace(2)


@pytest.fixture
def ps3():
    return PhaseSpace(3)


@pytest.fixture
def ps3r():
    return PhaseSpace(3, parameters=("r",))


@pytest.fixture
def sphere_ctx(ps3r):
    chi1 = parse_expression("x1^2 + x2^2 + x3^2 - r^2", ps3r)
    chi2 = parse_expression("p1*x1 + p2*x2 + p3*x3", ps3r)
    return make_context(ps3r, [chi1, chi2])


def random_polynomial(ps, rng: random.Random, max_degree=3, max_terms=4,
                      variables_only=False) -> RationalExpr:
    """Random polynomial expression with small rational coefficients."""
    nsyms = ps.nsyms
    active = 2 * ps.n if variables_only else nsyms
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = [0] * nsyms
        for _ in range(rng.randint(0, max_degree)):
            mono[rng.randrange(active)] += 1
        coeff = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if coeff != 0:
            key = tuple(mono)
            terms[key] = terms.get(key, Fraction(0)) + coeff
    poly = Polynomial(nsyms, terms)
    return RationalExpr.from_polynomial(ps, poly)


def random_rational_expr(ps, rng: random.Random, max_degree=2, max_terms=3) -> RationalExpr:
    num = random_polynomial(ps, rng, max_degree, max_terms)
    den = random_polynomial(ps, rng, max_degree, max_terms)
    while den.is_zero:
        den = random_polynomial(ps, rng, max_degree, max_terms)
    return num / den


def random_point(ps, rng: random.Random, spread=1.5) -> dict:
    return {s: rng.uniform(-spread, spread) for s in ps.symbols}


def fd_partial(e: RationalExpr, point: dict, symbol: str, h=FD_STEP) -> float:
    hi = dict(point)
    lo = dict(point)
    hi[symbol] += h
    lo[symbol] -= h
    return (e.evaluate(hi) - e.evaluate(lo)) / (2 * h)


def fd_poisson(f: RationalExpr, g: RationalExpr, ps: PhaseSpace, point: dict) -> float:
    total = 0.0
    for i in range(ps.n):
        x, p = ps.coordinates[i], ps.momenta[i]
        total += fd_partial(f, point, x) * fd_partial(g, point, p)
        total -= fd_partial(f, point, p) * fd_partial(g, point, x)
    return total


def fd_dirac(f: RationalExpr, g: RationalExpr, ctx, point: dict) -> float:
    """Numeric Dirac bracket: finite-difference Poisson brackets and a
    numeric inverse of the constraint bracket matrix at the point."""
    ps = ctx.ps
    chis = ctx.constraints
    k = len(chis)
    delta = np.array([[fd_poisson(chis[a], chis[b], ps, point) for b in range(k)]
                      for a in range(k)])
    delta_inv = np.linalg.inv(delta)
    value = fd_poisson(f, g, ps, point)
    for a in range(k):
        fa = fd_poisson(f, chis[a], ps, point)
        for b in range(k):
            value -= fa * delta_inv[a, b] * fd_poisson(chis[b], g, ps, point)
    return value


def exact_int_matrix_invertible(a) -> bool:
    """Exact nonsingularity test via Fraction Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in a]
    size = len(m)
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        for r in range(col + 1, size):
            if m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return True


def linear_mix_constraints(ps, m: int, rng: random.Random):
    """2m constraints: a random invertible integer mix of the first m
    coordinate/momentum pairs.  Always second class."""
    base = [parse_expression(ps.coordinates[i], ps) for i in range(m)] + \
           [parse_expression(ps.momenta[i], ps) for i in range(m)]
    size = 2 * m
    while True:
        a = [[rng.randint(-3, 3) for _ in range(size)] for _ in range(size)]
        if exact_int_matrix_invertible(a):
            break
    out = []
    for row in a:
        acc = RationalExpr.zero(ps)
        for coeff, e in zip(row, base):
            if coeff:
                acc = acc + e.scale(coeff)
        out.append(acc)
    return out
