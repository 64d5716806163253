"""Quasi-polynomials: polynomials in n whose coefficients are periodic in n.

A quasi-polynomial of period pi and degree s is stored as a table
``a[j][rho]`` of rational coefficients, one row per power j and one column
per residue class rho mod pi.  Extraction from a rational series is done by
exact interpolation on each residue class, with post-verification against
freshly expanded coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import InternalConsistencyError
from .series import RationalSeries, UniPoly, pole_orders

_ZERO = Fraction(0)


@dataclass(frozen=True)
class QuasiPolynomial:
    """Table form of a quasi-polynomial.

    ``table[j][rho]`` is the coefficient of n**j on the residue class
    rho mod ``period``.  Values agree with the represented coefficient
    function only for n >= ``n_min``.
    """

    period: int
    degree: int
    table: tuple[tuple[Fraction, ...], ...]
    n_min: int

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be positive")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if len(self.table) != self.degree + 1:
            raise ValueError("table needs one row per power 0..degree")
        for row in self.table:
            if len(row) != self.period:
                raise ValueError("each table row needs one entry per residue")
        if all(c == 0 for c in self.table[self.degree]):
            raise ValueError("leading coefficient row is identically zero")

    def evaluate(self, n: int) -> Fraction:
        rho = n % self.period
        acc = _ZERO
        power = 1
        for j in range(self.degree + 1):
            c = self.table[j][rho]
            if c != 0:
                acc += c * power
            power *= n
        return acc

    def row_is_constant(self, j: int) -> bool:
        row = self.table[j]
        return all(c == row[0] for c in row)


def from_rational(rs: RationalSeries, *, period: int | None = None) -> QuasiPolynomial:
    """Quasi-polynomial representing the coefficients of ``rs`` for large n.

    The period is the lcm of the denominator exponents (or the given
    multiple of it), the degree is the pole order at z=1 minus one, and
    each residue class is interpolated exactly, then verified on degree+2
    further sample points.
    """
    if not rs.denominator_exponents:
        raise ValueError("series has no poles; it is a polynomial, not a quasi-polynomial")
    orders = pole_orders(rs)
    order_at_one = orders.get(1, 0)
    side = max((o for m, o in orders.items() if m >= 2), default=0)
    if order_at_one == 0 or side > order_at_one:
        raise ValueError(
            "the pole at z=1 must dominate every other pole order "
            f"(got {order_at_one} at z=1 vs {side} elsewhere)"
        )
    s = order_at_one - 1
    base_period = lcm(*rs.denominator_exponents)
    if period is None:
        period = base_period
    elif period % base_period != 0:
        raise ValueError(f"period override {period} is not a multiple of {base_period}")
    n_min = rs.numerator.degree + 1
    # First sample point per residue sits past deg(numerator), on a
    # multiple of the period so sample indices stay in one residue class.
    n0 = -(-n_min // period) * period
    top = n0 + period - 1 + (2 * s + 2) * period
    values = rs.expand(top)
    rows: list[list[Fraction]] = [[_ZERO] * period for _ in range(s + 1)]
    for rho in range(period):
        xs = [n0 + rho + t * period for t in range(s + 1)]
        poly = _interpolate(xs, [values[x] for x in xs])
        if poly.degree > s:
            raise InternalConsistencyError("interpolant exceeds the pole-order degree bound")
        for t in range(s + 1, 2 * s + 3):
            n = n0 + rho + t * period
            if poly.evaluate(Fraction(n)) != values[n]:
                raise InternalConsistencyError(
                    f"interpolated coefficients disagree with the series at n={n}"
                )
        for j in range(s + 1):
            rows[j][rho] = poly.coeff(j)
    return QuasiPolynomial(period, s, tuple(tuple(r) for r in rows), n_min)


def _interpolate(xs: list[int], ys: list[Fraction]) -> UniPoly:
    """Exact Lagrange interpolation through (xs[i], ys[i])."""
    total = UniPoly.zero()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        term = UniPoly([yi])
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            term = term * UniPoly([Fraction(-xj), Fraction(1)])
            denom *= xi - xj
        total = total + term * Fraction(1, denom)
    return total


def grade(qp: QuasiPolynomial) -> int:
    """Smallest delta with every row above it constant; -1 if all rows are."""
    for j in range(qp.degree, -1, -1):
        if not qp.row_is_constant(j):
            return j
    return -1


def grade_from_poles(rs: RationalSeries) -> int:
    """Grade read off the pole orders away from z=1.

    Independent of :func:`grade`: max pole order over m >= 2, minus one;
    -1 when the only pole sits at z=1.
    """
    orders = pole_orders(rs)
    side = max((o for m, o in orders.items() if m >= 2), default=0)
    return side - 1


def minimal_period(qp: QuasiPolynomial) -> QuasiPolynomial:
    """Reindex to the smallest divisor of the period that all rows respect."""
    for cand in range(1, qp.period + 1):
        if qp.period % cand != 0:
            continue
        ok = all(
            row[(rho + cand) % qp.period] == row[rho]
            for row in qp.table
            for rho in range(qp.period)
        )
        if ok:
            if cand == qp.period:
                return qp
            table = tuple(row[:cand] for row in qp.table)
            return QuasiPolynomial(cand, qp.degree, table, qp.n_min)
    raise AssertionError("unreachable: the full period always works")


__all__ = [
    "QuasiPolynomial",
    "from_rational",
    "grade",
    "grade_from_poles",
    "minimal_period",
]
