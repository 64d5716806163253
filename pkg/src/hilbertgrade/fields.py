"""Exact scalars: arbitrary-precision rationals and prime fields GF(p).

Rational scalars are stdlib :class:`fractions.Fraction` values, which are
always kept in lowest terms with a positive denominator.  Prime-field
scalars are :class:`GFElement` values carrying their modulus.  A field
descriptor (``QQ`` or ``GF(p)``) tags matrices and coerces entries.

Mixing scalars from different fields is rejected with
:class:`FieldMismatchError`, never silently coerced: coercion would corrupt
characteristic-dependent logic downstream.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

# Modulus cap: products of two reduced residues must fit in 64-bit
# intermediates before reduction.
MAX_MODULUS = 2**31


class FieldMismatchError(TypeError):
    """Two scalars (or matrices) over different fields met in one operation."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n < 3_215_031_751."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class GFElement:
    """A residue in GF(p), always reduced to [0, p).

    Supports field arithmetic with other elements of the same GF(p) and
    with plain ints (reduced mod p).  Any contact with rationals or with a
    different modulus raises :class:`FieldMismatchError`.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _operand(self, other) -> Union[int, None]:
        if isinstance(other, GFElement):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"cannot mix GF({self.modulus}) and GF({other.modulus}) scalars"
                )
            return other.value
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return other % self.modulus
        if isinstance(other, Fraction):
            raise FieldMismatchError("cannot mix GF(p) and rational scalars")
        return None

    def __add__(self, other):
        v = self._operand(other)
        if v is None:
            return NotImplemented
        return GFElement(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._operand(other)
        if v is None:
            return NotImplemented
        return GFElement(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._operand(other)
        if v is None:
            return NotImplemented
        return GFElement(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._operand(other)
        if v is None:
            return NotImplemented
        return GFElement(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._operand(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.modulus})")
        return GFElement(self.value * pow(v, self.modulus - 2, self.modulus), self.modulus)

    def __rtruediv__(self, other):
        v = self._operand(other)
        if v is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.modulus})")
        return GFElement(v * pow(self.value, self.modulus - 2, self.modulus), self.modulus)

    def __neg__(self):
        return GFElement(-self.value, self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"division by zero in GF({self.modulus})")
            base = pow(self.value, self.modulus - 2, self.modulus)
            exponent = -exponent
        else:
            base = self.value
        return GFElement(pow(base, exponent, self.modulus), self.modulus)

    def inverse(self) -> "GFElement":
        return GFElement(1, self.modulus) / self

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class RationalField:
    """Descriptor for the rationals (characteristic zero)."""

    characteristic = 0
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not rational scalars")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, GFElement):
            raise FieldMismatchError("cannot use a GF(p) scalar over QQ")
        raise TypeError(f"cannot interpret {x!r} as a rational scalar")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Descriptor for GF(p), p prime and below 2**31."""

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError("modulus must be an integer")
        if not is_prime(p):
            raise ValueError(f"modulus must be prime (got {p})")
        if p >= MAX_MODULUS:
            raise ValueError(f"modulus must be below 2**31 (got {p})")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = GFElement(0, p)
        self.one = GFElement(1, p)

    def coerce(self, x) -> GFElement:
        if isinstance(x, GFElement):
            if x.modulus != self.p:
                raise FieldMismatchError(
                    f"cannot use a GF({x.modulus}) scalar over GF({self.p})"
                )
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not prime-field scalars")
        if isinstance(x, int):
            return GFElement(x, self.p)
        if isinstance(x, Fraction):
            raise FieldMismatchError("cannot use a rational scalar over GF(p)")
        raise TypeError(f"cannot interpret {x!r} as a GF({self.p}) scalar")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()

Field = Union[RationalField, PrimeField]


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """The prime field GF(p); cached so equal moduli share a descriptor."""
    return PrimeField(p)
