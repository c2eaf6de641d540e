"""The loop-count to theta to T pipeline, and the xi calculus of rational
functions built from (1 - q^n) and (1 + q^n) factors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Tuple

from .exact import PowerSeries, QPolynomial, series_compose, series_invert
from .graphs import GraphFamily, UnsupportedFamily


class DegreeTooLarge(ValueError):
    """Closed-form T needs deg P strictly below the support parameter."""


class XiFactor(NamedTuple):
    exponent: int
    plus: bool  # True for (1 + q^n), False for (1 - q^n)

    def text(self) -> str:
        return f"{self.exponent}+" if self.plus else str(self.exponent)


NORMALIZERS = ("", "prime", "doubleprime")


@dataclass(frozen=True)
class XiExpression:
    """A formal product of (1 +- q^n) factors over another, with an optional
    extra (1 - q) or (1 - q^2) divisor.

    Structural equality is intentional (expressions are table keys); equality
    as rational functions is `equivalent`, decided by series expansion.
    """

    numerator: Tuple[XiFactor, ...] = ()
    denominator: Tuple[XiFactor, ...] = ()
    normalizer: str = ""

    def __post_init__(self):
        if self.normalizer not in NORMALIZERS:
            raise ValueError(f"bad normalizer {self.normalizer!r}")
        for f in self.numerator + self.denominator:
            if f.exponent < 1:
                raise ValueError("factor exponents must be positive")

    def text(self) -> str:
        mark = {"": "", "prime": "'", "doubleprime": "''"}[self.normalizer]
        num = ",".join(f.text() for f in self.numerator)
        den = ",".join(f.text() for f in self.denominator)
        return f"xi{mark}({num}:{den})"

    def equivalent(self, other: "XiExpression", order: int = 64) -> bool:
        return xi_expand(self, order) == xi_expand(other, order)


def xi(*args, **kwargs) -> XiExpression:
    """Convenience constructor: xi([n1, (n2, True), ...], [m1, ...], normalizer)."""
    num, den = (), ()
    if args:
        num = tuple(_factor(f) for f in args[0])
    if len(args) > 1:
        den = tuple(_factor(f) for f in args[1])
    return XiExpression(num, den, kwargs.get("normalizer", ""))


def _factor(f) -> XiFactor:
    if isinstance(f, XiFactor):
        return f
    if isinstance(f, tuple):
        return XiFactor(int(f[0]), bool(f[1]))
    return XiFactor(int(f), False)


def xi_expand(expr: XiExpression, order: int) -> PowerSeries:
    """Exact series expansion of the rational function to the given order."""
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for n, plus in expr.numerator:
        sign = 1 if plus else -1
        for i in range(order, n - 1, -1):
            out[i] += sign * out[i - n]
    divisors = [(f.exponent, f.plus) for f in expr.denominator]
    if expr.normalizer == "prime":
        divisors.append((1, False))
    elif expr.normalizer == "doubleprime":
        divisors.append((2, False))
    for n, plus in divisors:
        sign = -1 if plus else 1
        for i in range(n, order + 1):
            out[i] += sign * out[i - n]
    return PowerSeries(order, out)


# ---------------------------------------------------------------------------
# Poincare series -> theta series -> T series
# ---------------------------------------------------------------------------

def theta_from_poincare_formula(counts: PowerSeries, order: int) -> PowerSeries:
    """Theta coefficients from the loop counts via the alternating binomial
    sum.

    The variable change behind theta contributes a standalone linear term on
    top of the sum, and the sum's r = 0 term is indeterminate; both boundary
    values are fixed so that this path agrees with the substitution path.
    """
    if counts.order < order:
        raise ValueError("need loop counts up to the requested order")
    if counts.coeffs[0] != 1:
        raise ValueError("loop count sequence must start at 1")
    out = [counts.coeffs[0]]
    for r in range(1, order + 1):
        acc = Fraction(0)
        for k in range(r + 1):
            term = Fraction(2 * r, r + k) * comb(r + k, r - k) * counts.coeffs[k]
            acc += term if (r - k) % 2 == 0 else -term
        if r == 1:
            acc += 1
        out.append(acc)
    return PowerSeries(order, out)


def theta_from_poincare_subst(counts: PowerSeries, order: int) -> PowerSeries:
    """Theta series computed literally: q plus (1-q)/(1+q) times the loop
    generating function evaluated at q/(1+q)^2."""
    if counts.order < order:
        raise ValueError("need loop counts up to the requested order")
    if counts.coeffs[0] != 1:
        raise ValueError("loop count sequence must start at 1")
    one_plus_q = PowerSeries.from_list([1, 1], order)
    inner = series_invert(one_plus_q * one_plus_q).shift(1)
    composed = series_compose(PowerSeries.from_list(counts.coeffs, order), inner)
    prefactor = PowerSeries.from_list([1, -1], order) * series_invert(one_plus_q)
    return prefactor * composed + PowerSeries.monomial(1, order)


def t_from_theta(theta: PowerSeries) -> PowerSeries:
    """(theta - q)/(1 - q) at the same order; a running sum in coefficients."""
    out = []
    acc = Fraction(0)
    for i, c in enumerate(theta.coeffs):
        acc += c - 1 if i == 1 else c
        out.append(acc)
    return PowerSeries(theta.order, out)


def graph_t_series(counts: PowerSeries, order: int) -> PowerSeries:
    return t_from_theta(theta_from_poincare_subst(counts, order))


def t_closed_form(poly: QPolynomial, n: int, variant: str,
                  order: int = 64) -> PowerSeries:
    """Expansion of (P(q) +- q^n P(1/q)) / ((1-q)(1 -+ q^n)).

    The unprimed variant takes + and (1 - q^n); the primed variant takes -
    and (1 + q^n).  Requires deg P < n and P(0) = 1, which makes the
    numerator a genuine polynomial.
    """
    if variant not in ("unprimed", "primed"):
        raise ValueError(f"unknown variant {variant!r}")
    if poly.degree >= n:
        raise DegreeTooLarge(f"deg {poly.degree} >= {n}")
    if poly.is_zero() or poly.coeffs[0] != 1:
        raise ValueError("polynomial must have constant term 1")
    reflected = poly.reversed_to(n)
    num = poly + reflected if variant == "unprimed" else poly - reflected
    out = list(num.to_series(order).coeffs)
    for i in range(1, order + 1):
        out[i] += out[i - 1]
    sign = 1 if variant == "unprimed" else -1
    for i in range(n, order + 1):
        out[i] += sign * out[i - n]
    return PowerSeries(order, out)


# ---------------------------------------------------------------------------
# The closed-form T table for the ten families
# ---------------------------------------------------------------------------

def theorem_2_5_lookup(family: GraphFamily) -> XiExpression:
    """The closed-form T series of the family as a xi expression."""
    tag, m = family.tag, family.param
    if tag == "A":
        if m < 2:
            raise UnsupportedFamily("A table needs at least 2 vertices")
        return xi([m], [m + 1])
    if tag == "D":
        if m < 3:
            raise UnsupportedFamily("D table needs at least 3 vertices")
        return xi([(m - 2, True)], [(m - 1, True)])
    if tag == "Atilde":
        if m < 2 or m % 2:
            raise UnsupportedFamily("Atilde table needs an even vertex count")
        n = m // 2
        return xi([(n, True)], [n], normalizer="prime")
    if tag == "Dtilde":
        if m < 4:
            raise UnsupportedFamily("Dtilde table needs parameter >= 4")
        n = m - 2
        return xi([(n + 1, True)], [n], normalizer="doubleprime")
    table = {
        "E6": xi([8], [3, (6, True)]),
        "E7": xi([12], [4, (9, True)]),
        "E8": xi([(5, True), (9, True)], [(15, True)]),
        "E6tilde": xi([(6, True)], [3, 4]),
        "E7tilde": xi([(9, True)], [4, 6]),
        "E8tilde": xi([(15, True)], [6, 10]),
    }
    if tag in table:
        return table[tag]
    raise UnsupportedFamily(f"no T table entry for {tag!r}")
