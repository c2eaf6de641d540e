"""Exact arithmetic substrate: rational polynomials, truncated power series,
and cyclotomic field elements in canonically reduced form.

Everything here is immutable and pure.  Rational numbers are
``fractions.Fraction`` throughout (re-exported as ``Rational``); cyclotomic
field elements are coordinate vectors over the power basis of the N-th
cyclotomic field, reduced modulo the N-th cyclotomic polynomial, so that
structural equality of coordinates decides field equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

import mpmath

Rational = Fraction


class NotRational(ArithmeticError):
    """A cyclotomic number expected to be rational has irrational parts."""


class ZeroConstantTerm(ArithmeticError):
    """Series inversion needs a nonzero constant term."""


class NonzeroConstantTerm(ArithmeticError):
    """Series composition needs the inner series to vanish at 0."""


class OrderMismatch(ValueError):
    """Truncated series of different orders were compared."""


# ---------------------------------------------------------------------------
# Polynomials over Q
# ---------------------------------------------------------------------------

class QPolynomial:
    """Dense polynomial with rational coefficients, constant term first.

    Trailing zeros are stripped on construction; the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(-c for c in self.coeffs)

    def __add__(self, other) -> "QPolynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)
        )

    __radd__ = __add__

    def __sub__(self, other) -> "QPolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "QPolynomial":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "QPolynomial":
        if isinstance(other, (int, Fraction)):
            return QPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return QPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "QPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, dn = other.degree, len(rem) - 1
        quo = [Fraction(0)] * max(dn - dd + 1, 0)
        lead = other.coeffs[-1]
        while len(rem) - 1 >= dd and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            shift = len(rem) - 1 - dd
            f = rem[-1] / lead
            quo[shift] = f
            for i, b in enumerate(other.coeffs):
                rem[shift + i] -= f * b
            rem.pop()
        return QPolynomial(quo), QPolynomial(rem)

    def __floordiv__(self, other: "QPolynomial") -> "QPolynomial":
        q, _ = divmod(self, other)
        return q

    def exact_div(self, other: "QPolynomial") -> "QPolynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("polynomial division has a remainder")
        return q

    def evaluate(self, x):
        """Horner evaluation; works for any ring element with + and *."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return Fraction(0) if acc is None else acc

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return QPolynomial((Fraction(0),) * k + self.coeffs)

    def reversed_to(self, n: int) -> "QPolynomial":
        """The polynomial x**n * P(1/x); requires deg P <= n."""
        if self.degree > n:
            raise ValueError("degree exceeds reversal order")
        out = [Fraction(0)] * (n + 1)
        for s, a in enumerate(self.coeffs):
            out[n - s] = a
        return QPolynomial(out)

    def to_series(self, order: int) -> "PowerSeries":
        cs = list(self.coeffs[: order + 1])
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return PowerSeries(order, cs)

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)!r})"


def _as_poly(x) -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return QPolynomial((x,))
    raise TypeError(f"cannot coerce {type(x).__name__} to QPolynomial")


@lru_cache(maxsize=None)
def cyclotomic_poly(order: int) -> QPolynomial:
    """The monic polynomial whose roots are the primitive order-th roots of
    unity, computed by dividing x**order - 1 by the lower-order ones."""
    if order < 1:
        raise ValueError("order must be positive")
    poly = QPolynomial([-1] + [0] * (order - 1) + [1])
    for d in range(1, order):
        if order % d == 0:
            poly = poly.exact_div(cyclotomic_poly(d))
    return poly


@lru_cache(maxsize=None)
def euler_phi(order: int) -> int:
    return cyclotomic_poly(order).degree


@lru_cache(maxsize=None)
def _reduction_rows(order: int):
    """Canonical coordinates of each power of the primitive root.

    Row e is the coordinate vector of the e-th power in the power basis,
    for e up to max(order - 1, 2*phi - 2), which covers products of two
    reduced elements as well as exponent wrap-around.
    """
    phi = euler_phi(order)
    tail = cyclotomic_poly(order).coeffs[:phi]
    top = max(order - 1, 2 * phi - 2)
    rows = []
    for e in range(phi):
        row = [Fraction(0)] * phi
        row[e] = Fraction(1)
        rows.append(tuple(row))
    for e in range(phi, top + 1):
        prev = rows[e - 1]
        row = [Fraction(0)] + list(prev[: phi - 1])
        over = prev[phi - 1]
        if over:
            for i in range(phi):
                row[i] -= over * tail[i]
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Cyclotomic numbers
# ---------------------------------------------------------------------------

class CyclotomicNumber:
    """An element of the field of order-th roots of unity.

    Coordinates are over the power basis of length phi(order) and are always
    canonically reduced, so equality of coordinates is equality in the field.
    Operands at different orders are lifted to the least common order first.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence):
        phi = euler_phi(order)
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != phi:
            raise ValueError(f"need {phi} coordinates at order {order}, got {len(cs)}")
        self.order = order
        self.coeffs = cs

    @classmethod
    def from_rational(cls, value, order: int = 1) -> "CyclotomicNumber":
        phi = euler_phi(order)
        return cls(order, (Fraction(value),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, order)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def is_real(self) -> bool:
        return self == cyclo_conj(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other, 1)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = _common_order(self, other)
        return a.coeffs == b.coeffs

    __hash__ = None  # equality lifts across orders; use .coeffs at a fixed order as a key

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.order, tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "CyclotomicNumber":
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        a, b = _common_order(self, other)
        return CyclotomicNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> "CyclotomicNumber":
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CyclotomicNumber":
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CyclotomicNumber(self.order, tuple(c * f for c in self.coeffs))
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = _common_order(self, other)
        phi = euler_phi(a.order)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    conv[i + j] += x * y
        rows = _reduction_rows(a.order)
        out = list(conv[:phi])
        for e in range(phi, len(conv)):
            v = conv[e]
            if v == 0:
                continue
            row = rows[e]
            for i in range(phi):
                if row[i]:
                    out[i] += v * row[i]
        return CyclotomicNumber(a.order, out)

    __rmul__ = __mul__

    def numeric(self, dps: int = 30):
        """Complex value at the given working precision (mpmath)."""
        with mpmath.workdps(dps):
            total = mpmath.mpc(0)
            for j, c in enumerate(self.coeffs):
                if c:
                    total += mpmath.mpf(c.numerator) / c.denominator * mpmath.root(1, self.order, j)
            return total

    def __repr__(self):
        return f"CyclotomicNumber(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"


def _as_cyclo(x) -> Optional[CyclotomicNumber]:
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CyclotomicNumber.from_rational(x, 1)
    return None


def _common_order(a: CyclotomicNumber, b: CyclotomicNumber):
    if a.order == b.order:
        return a, b
    m = math.lcm(a.order, b.order)
    return cyclo_embed(a, m), cyclo_embed(b, m)


def cyclo_make(order: int, exponent_weights: Mapping[int, object]) -> CyclotomicNumber:
    """Weighted sum of powers of the primitive order-th root, reduced."""
    if order < 1:
        raise ValueError("order must be positive")
    phi = euler_phi(order)
    rows = _reduction_rows(order)
    out = [Fraction(0)] * phi
    for j, w in exponent_weights.items():
        w = Fraction(w)
        if w == 0:
            continue
        row = rows[j % order]
        for i in range(phi):
            if row[i]:
                out[i] += w * row[i]
    return CyclotomicNumber(order, out)


def root_of_unity(order: int, exponent: int = 1) -> CyclotomicNumber:
    return cyclo_make(order, {exponent: 1})


def cyclo_embed(z: CyclotomicNumber, order: int) -> CyclotomicNumber:
    """The same field element expressed at a multiple of its order."""
    if order % z.order != 0:
        raise ValueError(f"{order} is not a multiple of order {z.order}")
    if order == z.order:
        return z
    step = order // z.order
    return cyclo_make(order, {j * step: c for j, c in enumerate(z.coeffs) if c})


def cyclo_project(z: CyclotomicNumber, order: int) -> CyclotomicNumber:
    """Express z at a divisor order, the inverse of cyclo_embed.

    Solves the exact linear system over the embedded power basis of the
    smaller field; raises NotRational-style ValueError when z does not lie
    in it.
    """
    if z.order % order != 0:
        raise ValueError(f"{order} does not divide order {z.order}")
    if order == z.order:
        return z
    columns = [cyclo_embed(root_of_unity(order, j) if j else CyclotomicNumber.one(order),
                           z.order).coeffs
               for j in range(euler_phi(order))]
    rows = [[col[i] for col in columns] for i in range(euler_phi(z.order))]
    sol = solve_linear_system(rows, z.coeffs)
    if sol is None:
        raise ValueError(f"element does not lie in the order-{order} subfield")
    return CyclotomicNumber(order, sol)


def cyclo_conj(z: CyclotomicNumber) -> CyclotomicNumber:
    """Complex conjugation: the automorphism sending the root to its inverse."""
    n = z.order
    return cyclo_make(n, {(n - j) % n: c for j, c in enumerate(z.coeffs) if c})


def real_part(z: CyclotomicNumber) -> CyclotomicNumber:
    return (z + cyclo_conj(z)) * Fraction(1, 2)


def cyclo_as_rational(z: CyclotomicNumber) -> Fraction:
    """The rational value of z, or NotRational if z is not in the prime field."""
    if not z.is_rational():
        raise NotRational(f"nonzero non-constant coordinates in {z!r}")
    return z.coeffs[0] if z.coeffs else Fraction(0)


def sign_of_real(z: CyclotomicNumber) -> int:
    """Sign of a real cyclotomic number: exact zero test first, then a
    guarded high-precision evaluation (raises if the magnitude cannot be
    separated from zero, which does not happen for the weights in scope)."""
    if z.is_zero():
        return 0
    if not z.is_real():
        raise ValueError("sign is defined for real elements only")
    with mpmath.workdps(60):
        v = mpmath.re(z.numeric(dps=60))
        if abs(v) < mpmath.mpf("1e-40"):
            raise ArithmeticError("cannot certify sign numerically")
        return 1 if v > 0 else -1


# ---------------------------------------------------------------------------
# Truncated power series over Q
# ---------------------------------------------------------------------------

class PowerSeries:
    """Power series truncated at an explicit order (inclusive).

    Arithmetic truncates to the smaller order of its operands; comparing two
    series of different orders raises OrderMismatch.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable):
        cs = tuple(Fraction(c) for c in coeffs)
        if order < 0 or len(cs) != order + 1:
            raise ValueError(f"need {order + 1} coefficients for order {order}")
        self.order = order
        self.coeffs = cs

    @classmethod
    def from_list(cls, coeffs: Sequence, order: Optional[int] = None) -> "PowerSeries":
        if order is None:
            order = len(coeffs) - 1
        cs = list(coeffs[: order + 1])
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(order, cs)

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls(order, [Fraction(0)] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls.from_list([1], order)

    @classmethod
    def monomial(cls, k: int, order: int) -> "PowerSeries":
        cs = [Fraction(0)] * (order + 1)
        if k <= order:
            cs[k] = Fraction(1)
        return cls(order, cs)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return PowerSeries(order, self.coeffs[: order + 1])

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if self.order != other.order:
            raise OrderMismatch(f"comparing order {self.order} with {other.order}")
        return self.coeffs == other.coeffs

    __hash__ = None

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.order, tuple(-c for c in self.coeffs))

    def _binop(self, other, fn) -> "PowerSeries":
        if isinstance(other, (int, Fraction)):
            other = PowerSeries.from_list([other], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        k = min(self.order, other.order)
        return PowerSeries(k, tuple(fn(self.coeffs[i], other.coeffs[i]) for i in range(k + 1)))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return PowerSeries(self.order, tuple(c * f for c in self.coeffs))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        k = min(self.order, other.order)
        out = [Fraction(0)] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if a == 0:
                continue
            for j in range(k + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return PowerSeries(k, out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by q**k, truncating at the same order."""
        cs = (Fraction(0),) * k + self.coeffs
        return PowerSeries(self.order, cs[: self.order + 1])

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order > 7 else ""
        return f"PowerSeries(order={self.order}, [{head}{tail}])"


def series_invert(s: PowerSeries) -> PowerSeries:
    """The multiplicative inverse up to the order of s."""
    if s.coeffs[0] == 0:
        raise ZeroConstantTerm("cannot invert a series with zero constant term")
    inv0 = 1 / s.coeffs[0]
    out = [inv0] + [Fraction(0)] * s.order
    for i in range(1, s.order + 1):
        acc = Fraction(0)
        for j in range(1, i + 1):
            if s.coeffs[j]:
                acc += s.coeffs[j] * out[i - j]
        out[i] = -acc * inv0
    return PowerSeries(s.order, out)


@lru_cache(maxsize=8)
def _inner_powers(coeffs: tuple, order: int):
    g = PowerSeries(order, coeffs)
    powers = [PowerSeries.one(order)]
    for _ in range(order):
        powers.append(powers[-1] * g)
    return tuple(powers)


def series_compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """f(g(q)) truncated to the common order; g must vanish at 0."""
    if g.coeffs[0] != 0:
        raise NonzeroConstantTerm("inner series must have zero constant term")
    k = min(f.order, g.order)
    powers = _inner_powers(g.coeffs[: k + 1], k)
    out = [Fraction(0)] * (k + 1)
    for i, c in enumerate(f.coeffs[: k + 1]):
        if c == 0:
            continue
        # g**i has valuation i, so only the first k - i + 1 terms matter
        pc = powers[i].coeffs
        for j in range(i, k + 1):
            if pc[j]:
                out[j] += c * pc[j]
    return PowerSeries(k, out)


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------

def solve_linear_system(rows: Sequence[Sequence[Fraction]],
                        rhs: Sequence[Fraction]) -> Optional[list]:
    """Solve A x = b over the rationals by reduced row echelon form.

    Returns the canonical solution with free variables set to zero, or None
    when the system is inconsistent.
    """
    m = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    if not m:
        return []
    ncols = len(m[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol
