"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent vectors (one slot per phase-space
symbol, parameters included) to nonzero Fractions.  The zero polynomial
is the empty map; two equal polynomials always have identical stored
form, so dict equality is canonical equality.

The monomial order is graded lexicographic over the phase space's fixed
symbol order.
"""

from __future__ import annotations

import math
from fractions import Fraction

Monomial = tuple[int, ...]


def grlex_key(mono: Monomial):
    """Sort key for graded lex: total degree first, then lex on exponents."""
    return (sum(mono), mono)


class Polynomial:
    __slots__ = ("nsyms", "terms")

    def __init__(self, nsyms: int, terms: dict[Monomial, Fraction] | None = None):
        self.nsyms = nsyms
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nsyms: int) -> "Polynomial":
        return cls(nsyms)

    @classmethod
    def constant(cls, nsyms: int, value) -> "Polynomial":
        c = Fraction(value)
        if c == 0:
            return cls(nsyms)
        return cls(nsyms, {(0,) * nsyms: c})

    @classmethod
    def variable(cls, nsyms: int, index: int) -> "Polynomial":
        mono = tuple(1 if i == index else 0 for i in range(nsyms))
        return cls(nsyms, {mono: Fraction(1)})

    # -- queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.terms[(0,) * self.nsyms]

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def content(self) -> Fraction:
        """Positive gcd of the coefficients (gcd of numerators / lcm of denominators)."""
        if self.is_zero:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def total_degree(self) -> int:
        if self.is_zero:
            return 0
        return max(sum(m) for m in self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order (canonical print order)."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.nsyms, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nsyms, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.nsyms, out)

    def scale(self, factor) -> "Polynomial":
        f = Fraction(factor)
        if f == 0:
            return Polynomial(self.nsyms)
        return Polynomial(self.nsyms, {m: c * f for m, c in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power on a bare polynomial")
        result = Polynomial.constant(self.nsyms, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus and evaluation --------------------------------------

    def derivative(self, index: int) -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[index]
            if e == 0:
                continue
            dm = m[:index] + (e - 1,) + m[index + 1:]
            out[dm] = out.get(dm, Fraction(0)) + c * e
        return Polynomial(self.nsyms, out)

    def evaluate(self, values) -> float:
        total = 0.0
        for m, c in self.terms.items():
            term = float(c)
            for e, v in zip(m, values):
                if e:
                    term *= v ** e
            total += term
        return total

    # -- equality -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({self.nsyms}, {self.terms!r})"


def _divides(da: Monomial, db: Monomial) -> bool:
    return all(a <= b for a, b in zip(da, db))


def reduce_by(poly: Polynomial, divisors: list[Polynomial]) -> Polynomial:
    """Remainder of multivariate division by an ordered divisor list.

    Graded-lex leading terms; at each step the first divisor whose
    leading monomial divides the current one is used.  The result is
    weakly equal to the input: they agree wherever all divisors vanish.
    """
    divs = [(d, d.leading_monomial(), d.leading_coefficient())
            for d in divisors if not d.is_zero]
    remainder = Polynomial.zero(poly.nsyms)
    work = poly
    while not work.is_zero:
        lm = work.leading_monomial()
        lc = work.terms[lm]
        for d, dlm, dlc in divs:
            if _divides(dlm, lm):
                qm = tuple(a - b for a, b in zip(lm, dlm))
                quotient = Polynomial(poly.nsyms, {qm: lc / dlc})
                work = work - quotient * d
                break
        else:
            remainder = remainder + Polynomial(poly.nsyms, {lm: lc})
            work = work - Polynomial(poly.nsyms, {lm: lc})
    return remainder
