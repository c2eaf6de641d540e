from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from cyclade.exact import (
    CyclotomicNumber,
    NotRational,
    NonzeroConstantTerm,
    OrderMismatch,
    PowerSeries,
    QPolynomial,
    ZeroConstantTerm,
    cyclo_as_rational,
    cyclo_conj,
    cyclo_embed,
    cyclo_make,
    cyclo_project,
    cyclotomic_poly,
    real_part,
    root_of_unity,
    series_compose,
    series_invert,
    sign_of_real,
    solve_linear_system,
)


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------

def test_cyclotomic_poly_small():
    assert cyclotomic_poly(1) == QPolynomial([-1, 1])
    assert cyclotomic_poly(2) == QPolynomial([1, 1])
    assert cyclotomic_poly(4) == QPolynomial([1, 0, 1])


def test_cyclotomic_poly_12_by_division_oracle():
    # divide x^12 - 1 by the lower-order factors, written out by hand
    x12 = QPolynomial([-1] + [0] * 11 + [1])
    for known in (QPolynomial([-1, 1]), QPolynomial([1, 1]), QPolynomial([1, 1, 1]),
                  QPolynomial([1, 0, 1]), QPolynomial([1, -1, 1])):
        x12 = x12.exact_div(known)
    assert x12 == QPolynomial([1, 0, -1, 0, 1])
    assert cyclotomic_poly(12) == x12


def test_cyclotomic_poly_product_property():
    for n in range(1, 121):
        prod = QPolynomial([1])
        for d in range(1, n + 1):
            if n % d == 0:
                prod = prod * cyclotomic_poly(d)
        assert prod == QPolynomial([-1] + [0] * (n - 1) + [1])


def test_poly_divmod_and_eval():
    p = QPolynomial([2, 0, 1])  # x^2 + 2
    q, r = divmod(p * QPolynomial([1, 1]) + QPolynomial([5]), QPolynomial([1, 1]))
    assert q == p
    assert r == QPolynomial([5])
    assert p.evaluate(Fraction(3)) == 11


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

def test_cyclo_make_examples():
    assert cyclo_make(4, {2: 1, 0: 1}).is_zero()
    assert cyclo_as_rational(cyclo_make(3, {1: 1, 2: 1})) == -1
    assert cyclo_as_rational(cyclo_make(12, {2: 1, 10: 1})) == 1


def test_cyclo_embed_examples():
    minus_one = cyclo_make(2, {1: 1})
    assert cyclo_embed(minus_one, 4) == cyclo_make(4, {2: 1})
    one = CyclotomicNumber.one(1)
    assert cyclo_embed(one, 12) == CyclotomicNumber.one(12)
    z3 = root_of_unity(3)
    assert cyclo_embed(z3, 6) == cyclo_make(6, {2: 1})
    with pytest.raises(ValueError):
        cyclo_embed(z3, 8)


def test_cyclo_embed_numeric_roundtrip():
    z = cyclo_make(3, {1: 2, 2: -1})
    lifted = cyclo_embed(z, 12)
    assert abs(z.numeric(30) - lifted.numeric(30)) < mpmath.mpf("1e-25")


def test_cyclo_project_inverts_embed():
    z = cyclo_make(6, {1: 2, 5: -1, 0: Fraction(1, 3)})
    for m in (12, 18, 24):
        assert cyclo_project(cyclo_embed(z, m), 6) == z
    sqrt2 = cyclo_make(8, {1: 1, 7: 1})
    assert cyclo_project(sqrt2, 8) == sqrt2
    with pytest.raises(ValueError):
        cyclo_project(sqrt2, 4)  # not an element of the smaller field
    with pytest.raises(ValueError):
        cyclo_project(sqrt2, 3)  # 3 does not divide 8
    rational = CyclotomicNumber.from_rational(Fraction(7, 2), 24)
    assert cyclo_project(rational, 1) == Fraction(7, 2)


def test_cyclo_conj_examples():
    i = root_of_unity(4)
    assert cyclo_conj(i) == -i
    r = CyclotomicNumber.from_rational(Fraction(5, 3), 8)
    assert cyclo_conj(r) == r
    assert real_part(1 - root_of_unity(8, 2)) == 1


def test_cyclo_as_rational_errors():
    assert cyclo_as_rational(CyclotomicNumber.zero(6)) == 0
    sqrt2 = cyclo_make(8, {1: 1, 7: 1})
    with pytest.raises(NotRational):
        cyclo_as_rational(sqrt2)


def test_sign_of_real():
    sqrt2 = cyclo_make(8, {1: 1, 7: 1})
    assert sign_of_real(sqrt2) == 1
    assert sign_of_real(-sqrt2) == -1
    assert sign_of_real(CyclotomicNumber.zero(8)) == 0
    with pytest.raises(ValueError):
        sign_of_real(root_of_unity(4))


_orders = st.sampled_from([1, 2, 3, 4, 6, 8, 12])


@st.composite
def _cyclo_triples(draw):
    order = draw(_orders)
    out = []
    for _ in range(3):
        mapping = draw(st.dictionaries(st.integers(0, 2 * order), st.integers(-3, 3), max_size=4))
        out.append(cyclo_make(order, mapping))
    return out


@settings(max_examples=60, deadline=None)
@given(_cyclo_triples())
def test_field_axioms(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert cyclo_conj(cyclo_conj(a)) == a
    assert real_part(a) == cyclo_conj(real_part(a))


@settings(max_examples=60, deadline=None)
@given(_cyclo_triples(), st.sampled_from([2, 3, 4]))
def test_embed_is_ring_morphism(triple, factor):
    a, b, _ = triple
    m = a.order * factor
    assert cyclo_embed(a * b, m) == cyclo_embed(a, m) * cyclo_embed(b, m)
    assert cyclo_embed(a + b, m) == cyclo_embed(a, m) + cyclo_embed(b, m)


@settings(max_examples=60, deadline=None)
@given(_cyclo_triples())
def test_canonical_equality_matches_numeric(triple):
    a, b, _ = triple
    close = abs(a.numeric(40) - b.numeric(40)) < mpmath.mpf("1e-30")
    assert close == (a == b)


# ---------------------------------------------------------------------------
# power series
# ---------------------------------------------------------------------------

def test_series_invert_examples():
    geom = series_invert(PowerSeries.from_list([1, -1], 8))
    assert geom.coeffs == tuple(Fraction(1) for _ in range(9))
    alt = series_invert(PowerSeries.from_list([1, 1], 8))
    assert alt.coeffs == tuple(Fraction((-1) ** k) for k in range(9))
    cubes = series_invert(PowerSeries.from_list([1, 0, 0, -1], 8))
    assert cubes.coeffs == tuple(Fraction(1 if k % 3 == 0 else 0) for k in range(9))
    with pytest.raises(ZeroConstantTerm):
        series_invert(PowerSeries.from_list([0, 1], 4))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=4),
                min_size=1, max_size=8))
def test_series_invert_round_trip(coeffs):
    if coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    s = PowerSeries.from_list(coeffs, 10)
    assert s * series_invert(s) == PowerSeries.one(10)


def test_series_compose_examples():
    f = PowerSeries.from_list([1] * 9, 8)
    q = PowerSeries.monomial(1, 8)
    assert series_compose(f, q) == f

    # inner q/(1+q)^2 expanded by the binomial series; with f = 1 + z the
    # result is 1 + q - 2q^2 + 3q^3 - ...
    inner = series_invert(PowerSeries.from_list([1, 2, 1], 8)).shift(1)
    assert inner.coeffs == tuple(Fraction((-1) ** (k + 1) * k) for k in range(9))
    composed = series_compose(PowerSeries.from_list([1, 1], 8), inner)
    expected = [1] + [(-1) ** (k + 1) * k for k in range(1, 9)]
    assert composed == PowerSeries.from_list(expected, 8)

    assert series_compose(PowerSeries.one(8), inner) == PowerSeries.one(8)
    with pytest.raises(NonzeroConstantTerm):
        series_compose(f, PowerSeries.one(8))


def test_series_order_discipline():
    a = PowerSeries.one(4)
    b = PowerSeries.one(6)
    assert (a + b).order == 4
    assert (a * b).order == 4
    with pytest.raises(OrderMismatch):
        _ = a == b
    assert b.truncate(4) == a


# ---------------------------------------------------------------------------
# linear solver
# ---------------------------------------------------------------------------

def test_solve_linear_system():
    sol = solve_linear_system([[1, 1], [1, -1]], [3, 1])
    assert sol == [Fraction(2), Fraction(1)]
    assert solve_linear_system([[1, 1], [2, 2]], [1, 3]) is None
    # underdetermined: free variable pinned to zero
    sol = solve_linear_system([[1, 1]], [5])
    assert sol == [Fraction(5), Fraction(0)]
    assert solve_linear_system([[0, 0]], [0]) == [Fraction(0), Fraction(0)]
