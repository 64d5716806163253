"""Univariate exact polynomials and rational power series.

Series are kept in the factored form Q(z) / prod_i (1 - z^{d_i}): the
numerator is a polynomial over the rationals and the denominator is a
multiset of positive exponents.  All pole analysis happens at roots of
unity through exact cyclotomic divisibility; complex arithmetic never
enters.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

_ZERO = Fraction(0)
_ONE = Fraction(1)


class InexactDivisionError(ArithmeticError):
    """A polynomial division required to be exact left a remainder."""


class FormCheckError(Exception):
    """A series failed the hsop-shaped denominator check.

    ``offending_m`` names the cyclotomic index whose pole order exceeds the
    allowance; ``excess`` is (pole order - allowance), negative when the
    check failed because the claimed order at z=1 overshoots instead.
    """

    def __init__(self, offending_m: int, excess: int, message: str):
        super().__init__(message)
        self.offending_m = offending_m
        self.excess = excess


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("booleans are not polynomial coefficients")
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"cannot interpret {c!r} as a rational coefficient")


class UniPoly:
    """Dense univariate polynomial over the rationals.

    Coefficients are indexed by power of z; trailing zeros are trimmed so
    the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "UniPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls._raw(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls._raw((_ONE,))

    @classmethod
    def z_pow(cls, k: int) -> "UniPoly":
        return cls._raw((_ZERO,) * k + (_ONE,))

    @classmethod
    def one_minus_z_pow(cls, e: int) -> "UniPoly":
        if e < 1:
            raise ValueError("exponent must be positive")
        return cls._raw((_ONE,) + (_ZERO,) * (e - 1) + (Fraction(-1),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return UniPoly._raw(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            s = _coerce_coeff(other)
            if s == 0:
                return UniPoly.zero()
            return UniPoly._raw(tuple(c * s for c in self.coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb != 0:
                    out[i + j] += ca * cb
        return UniPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial powers are undefined")
        result = UniPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __divmod__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, dn = other.degree, len(other.coeffs)
        lead = other.coeffs[-1]
        if len(rem) <= dd:
            return UniPoly.zero(), self
        q = [_ZERO] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lead
            q[k - dd] = f
            base = k - dd
            for j in range(dn - 1):
                rem[base + j] -= f * other.coeffs[j]
            rem[k] = _ZERO
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InexactDivisionError(f"{other!r} does not divide {self!r}")
        return q

    def evaluate(self, x) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def text(self) -> str:
        """Sparse human form, ascending powers: ``1 - z + 2*z^3``."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                zk = "z" if k == 1 else f"z^{k}"
                body = zk if mag == 1 else f"{mag}*{zk}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.text()})"


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> UniPoly:
    """The m-th cyclotomic polynomial (monic, integer coefficients)."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = UniPoly.z_pow(m) - UniPoly.one()
    for k in _divisors(m):
        if k < m:
            poly = poly.exact_div(cyclotomic(k))
    return poly


def cyclotomic_multiplicity(poly: UniPoly, m: int) -> int:
    """Largest k with cyclotomic(m)**k dividing poly (poly nonzero)."""
    if poly.is_zero():
        raise ValueError("the zero polynomial has unbounded multiplicity")
    phi = cyclotomic(m)
    count = 0
    while True:
        q, r = divmod(poly, phi)
        if not r.is_zero():
            return count
        poly = q
        count += 1


def cyclotomic_factor_orders(poly: UniPoly) -> list[int]:
    """Cyclotomic indices (with multiplicity) of a monic product of cyclotomics.

    Raises ValueError if the polynomial is not such a product; ascending.
    """
    if poly.is_zero() or poly.coeffs[-1] != 1:
        raise ValueError("expected a monic polynomial")
    orders: list[int] = []
    remaining = poly
    m = 1
    # phi(m) >= sqrt(m/2), so indices beyond 2*deg^2 cannot fit.
    limit = 2 * max(poly.degree, 1) ** 2 + 2
    while remaining.degree > 0 and m <= limit:
        if cyclotomic(m).degree <= remaining.degree:
            while True:
                q, r = divmod(remaining, cyclotomic(m))
                if not r.is_zero():
                    break
                remaining = q
                orders.append(m)
        m += 1
    if remaining.degree != 0:
        raise ValueError("polynomial is not a product of cyclotomic factors")
    return orders


class RationalSeries:
    """Power series Q(z) / prod_i (1 - z^{d_i}) with exact coefficients.

    The denominator is stored as the sorted multiset of exponents d_i; an
    empty multiset means the series is the polynomial Q itself.
    """

    __slots__ = ("numerator", "denominator_exponents")

    def __init__(self, numerator: UniPoly, denominator_exponents: Iterable[int] = ()):
        if not isinstance(numerator, UniPoly):
            raise TypeError("numerator must be a UniPoly")
        exps = tuple(sorted(denominator_exponents))
        if any((not isinstance(e, int)) or isinstance(e, bool) or e < 1 for e in exps):
            raise ValueError("denominator exponents must be positive integers")
        self.numerator = numerator
        self.denominator_exponents = exps

    def denominator_poly(self) -> UniPoly:
        out = UniPoly.one()
        for e in self.denominator_exponents:
            out = out * UniPoly.one_minus_z_pow(e)
        return out

    def expand(self, n_max: int) -> list[Fraction]:
        """Power-series coefficients c_0..c_{n_max}, exactly."""
        den = self.denominator_poly().coeffs  # den[0] == 1 by construction
        num = self.numerator.coeffs
        out: list[Fraction] = []
        dlen = len(den)
        for n in range(n_max + 1):
            acc = num[n] if n < len(num) else _ZERO
            top = min(n, dlen - 1)
            for k in range(1, top + 1):
                dk = den[k]
                if dk != 0:
                    acc -= dk * out[n - k]
            out.append(acc)
        return out

    def display(self) -> str:
        """Report form ``Q(z) / [(1-z^a)(1-z^b)...]``."""
        num = self.numerator.text()
        if not self.denominator_exponents:
            return num
        terms = "".join(
            "(1-z)" if e == 1 else f"(1-z^{e})" for e in self.denominator_exponents
        )
        if " " in num:
            num = f"({num})"
        return f"{num} / [{terms}]"

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (
            self.numerator == other.numerator
            and self.denominator_exponents == other.denominator_exponents
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator_exponents))

    def __repr__(self):
        return f"RationalSeries({self.display()})"


def pole_orders(rs: RationalSeries) -> dict[int, int]:
    """Pole order at the primitive m-th roots of unity, for each m with order > 0.

    The order at m is (number of d_i divisible by m) minus the multiplicity
    of cyclotomic(m) in the numerator; non-positive entries are omitted.
    """
    if rs.numerator.is_zero():
        return {}
    support = sorted({m for e in rs.denominator_exponents for m in _divisors(e)})
    orders: dict[int, int] = {}
    for m in support:
        den_mult = sum(1 for e in rs.denominator_exponents if e % m == 0)
        order = den_mult - cyclotomic_multiplicity(rs.numerator, m)
        if order > 0:
            orders[m] = order
    return orders


def reduce_series(rs: RationalSeries) -> RationalSeries:
    """Cancel cyclotomic factors common to numerator and denominator.

    After full cancellation the remaining pole multiplicities are
    re-expressed as a multiset of (1 - z^e) factors; when no such multiset
    exists the input is returned unchanged (its pole data is identical).
    """
    num = rs.numerator
    if num.is_zero():
        raise ValueError("cannot reduce the zero series")
    if not rs.denominator_exponents:
        return rs
    support = sorted({m for e in rs.denominator_exponents for m in _divisors(e)})
    remaining: dict[int, int] = {}
    for m in support:
        den_mult = sum(1 for e in rs.denominator_exponents if e % m == 0)
        shared = min(den_mult, cyclotomic_multiplicity(num, m))
        remaining[m] = den_mult - shared
    if all(v == 0 for v in remaining.values()):
        # Denominator divides the numerator: the series is a polynomial.
        return RationalSeries(num.exact_div(rs.denominator_poly()), ())
    new_exponents: list[int] = []
    for m in sorted(remaining, reverse=True):
        count = remaining[m]
        if count < 0:
            return rs
        if count == 0:
            continue
        new_exponents.extend([m] * count)
        for d in _divisors(m):
            remaining[d] -= count
    if any(v != 0 for v in remaining.values()):
        return rs
    new_exponents.sort()
    if tuple(new_exponents) == rs.denominator_exponents:
        return rs
    new_den = UniPoly.one()
    for e in new_exponents:
        new_den = new_den * UniPoly.one_minus_z_pow(e)
    new_num = (num * new_den).exact_div(rs.denominator_poly())
    return RationalSeries(new_num, new_exponents)


def form_check(rs: RationalSeries, r: int, d: int, L: int) -> UniPoly:
    """Certify the shape Q(z) / [(1-z)^r (1-z^L)^{d-r}] with Q(1) != 0.

    ``d`` must be the pole order of ``rs`` at z=1 and ``L`` a common
    multiple of the denominator exponents.  On success returns the exact
    numerator Q for hsop degrees {1 x r, L x (d-r)}; on failure raises
    :class:`FormCheckError` naming the offending cyclotomic factor.
    """
    if r < 0 or d < 0 or r > d:
        raise ValueError(f"need 0 <= r <= d, got r={r}, d={d}")
    if L < 1:
        raise ValueError("L must be a positive integer")
    bad = [e for e in rs.denominator_exponents if L % e != 0]
    if bad:
        raise ValueError(f"L={L} is not a common multiple of denominator exponents {bad}")
    target = rs.numerator * (UniPoly.one_minus_z_pow(1) ** r)
    if d > r:
        target = target * (UniPoly.one_minus_z_pow(L) ** (d - r))
    q, rem = divmod(target, rs.denominator_poly())
    if rem.is_zero() and q.evaluate(_ONE) != 0:
        return q
    orders = pole_orders(rs)
    for m in sorted(orders):
        allowed = d if m == 1 else (d - r if L % m == 0 else 0)
        if orders[m] > allowed:
            raise FormCheckError(
                m,
                orders[m] - allowed,
                f"pole order {orders[m]} at the {m}-th roots of unity exceeds "
                f"the allowance {allowed} (excess {orders[m] - allowed})",
            )
    # Division came out exact but Q(1) = 0: the claimed order d overshoots.
    actual = orders.get(1, 0)
    raise FormCheckError(
        1,
        actual - d,
        f"pole order at z=1 is {actual}, not the claimed {d}; Q(1) would vanish",
    )


__all__ = [
    "FormCheckError",
    "InexactDivisionError",
    "RationalSeries",
    "UniPoly",
    "cyclotomic",
    "cyclotomic_factor_orders",
    "cyclotomic_multiplicity",
    "form_check",
    "pole_orders",
    "reduce_series",
]
