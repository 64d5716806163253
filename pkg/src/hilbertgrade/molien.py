"""Hilbert series of invariant rings in characteristic zero.

The series is the group average of 1/det(I - z*g).  Every det(I - z*g)
divides (1 - z^e)^d exactly, where e is any common multiple of the element
orders, so the average is assembled as a single polynomial numerator over
the denominator (1 - z^e)^d and then reduced by cancelling cyclotomic
factors.  Everything is exact; no complex roots are ever touched.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import lcm

from .errors import InternalConsistencyError
from .groups import MatrixGroup
from .matrices import Matrix
from .series import RationalSeries, UniPoly, cyclotomic_factor_orders, reduce_series


class MolienCharacteristicError(ValueError):
    """The averaging formula was asked for over a prime field."""


def characteristic_poly(g: Matrix) -> UniPoly:
    """det(tI - g) as a monic polynomial in t, over the rationals."""
    d = g.rows
    # Faddeev-LeVerrier: needs divisions by 1..d, hence characteristic 0.
    coeffs: list[Fraction] = [Fraction(0)] * (d + 1)
    coeffs[d] = Fraction(1)
    m = g
    coeffs[d - 1] = -m.trace()
    ident = Matrix.identity(g.field, d)
    for k in range(2, d + 1):
        m = g * (m + ident.scale(coeffs[d - k + 1]))
        coeffs[d - k] = -m.trace() / k
    return UniPoly(coeffs)

def char_reverse_poly(g: Matrix) -> UniPoly:
    """det(I - z*g): the reversed characteristic polynomial."""
    return _reverse(characteristic_poly(g), g.rows)


def _reverse(charpoly: UniPoly, d: int) -> UniPoly:
    # det(I - z g) = z^d det((1/z)I - g): coefficient of z^j is c_{d-j}.
    return UniPoly([charpoly.coeff(d - j) for j in range(d + 1)])


def element_order_from_char_poly(charpoly: UniPoly) -> int:
    """Multiplicative order of a finite-order matrix, from its eigenvalues.

    The characteristic polynomial of a finite-order rational matrix is a
    product of cyclotomics; the order is the lcm of their indices.
    """
    return lcm(*cyclotomic_factor_orders(charpoly))


def _charpoly_counts(grp: MatrixGroup, workers: int = 1) -> Counter:
    """Multiset of characteristic polynomials over the group elements."""
    if workers <= 1 or grp.order < 2 * workers:
        return Counter(characteristic_poly(g) for g in grp.elements)
    chunks = [grp.elements[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        partials = list(
            pool.map(lambda c: Counter(characteristic_poly(g) for g in c), chunks)
        )
    total: Counter = Counter()
    for part in partials:
        total.update(part)
    return total


def group_exponent(grp: MatrixGroup) -> int:
    """lcm of the element orders, read off exact cyclotomic factorizations."""
    _require_char_zero(grp)
    e = 1
    for poly in _charpoly_counts(grp):
        e = lcm(e, element_order_from_char_poly(poly))
    return e


def molien_canonical(grp: MatrixGroup, exponent: int | None = None) -> RationalSeries:
    """Unreduced averaged series over the denominator (1 - z^e)^d.

    ``exponent`` defaults to the group order; any common multiple of the
    element orders gives the same series.  The numerator is asserted to
    have integer coefficients.
    """
    _require_char_zero(grp)
    return _canonical(grp, _charpoly_counts(grp), exponent or grp.order)


def _canonical(grp: MatrixGroup, counts: Counter, exponent: int) -> RationalSeries:
    d = grp.spec.dimension
    base = UniPoly.one_minus_z_pow(exponent) ** d
    total = UniPoly.zero()
    for charpoly, count in counts.items():
        total = total + base.exact_div(_reverse(charpoly, d)) * count
    q = total * Fraction(1, grp.order)
    if not q.is_integral():
        raise InternalConsistencyError("averaged numerator is not integral")
    return RationalSeries(q, (exponent,) * d)


def molien_series(grp: MatrixGroup, workers: int = 1) -> RationalSeries:
    """Reduced Hilbert series of the invariant ring (characteristic zero).

    ``workers`` only partitions the per-element sum; the result is exact
    and independent of the partitioning.
    """
    _require_char_zero(grp)
    counts = _charpoly_counts(grp, workers)
    e = 1
    for poly in counts:
        e = lcm(e, element_order_from_char_poly(poly))
    return reduce_series(_canonical(grp, counts, e))


def _require_char_zero(grp: MatrixGroup) -> None:
    if grp.spec.field.characteristic != 0:
        raise MolienCharacteristicError(
            "Molien requires characteristic zero; use the oracle pipeline"
        )


__all__ = [
    "MolienCharacteristicError",
    "char_reverse_poly",
    "characteristic_poly",
    "element_order_from_char_poly",
    "group_exponent",
    "molien_canonical",
    "molien_series",
]
