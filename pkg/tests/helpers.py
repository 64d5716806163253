"""Shared test machinery: independent oracles and cached heavy computations.

The oracles here deliberately use different algorithms from the library
(cofactor expansion instead of Bareiss, geometric-series convolution
instead of the denominator recurrence, naive fraction tuples instead of
Fraction) so that agreement is evidence, not tautology.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd

from hilbertgrade import (
    AnalysisOptions,
    GroupSpec,
    Matrix,
    QQ,
    RationalSeries,
    UniPoly,
    analyze,
    battery,
    battery_corpus,
    close,
    random_signed_permutation_spec,
)

# ---------------------------------------------------------------------------
# independent oracles


def laplace_det(rows):
    """Determinant by cofactor expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * laplace_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def naive_reduce(num: int, den: int) -> tuple[int, int]:
    if den == 0:
        raise ZeroDivisionError
    if den < 0:
        num, den = -num, -den
    g = gcd(abs(num), den)
    if g:
        num //= g
        den //= g
    return num, den


def naive_add(a, b):
    return naive_reduce(a[0] * b[1] + b[0] * a[1], a[1] * b[1])


def naive_sub(a, b):
    return naive_reduce(a[0] * b[1] - b[0] * a[1], a[1] * b[1])


def naive_mul(a, b):
    return naive_reduce(a[0] * b[0], a[1] * b[1])


def naive_div(a, b):
    if b[0] == 0:
        raise ZeroDivisionError
    return naive_reduce(a[0] * b[1], a[1] * b[0])


def expand_oracle(rs: RationalSeries, n_max: int) -> list[Fraction]:
    """Series coefficients by multiplying truncated geometric series."""
    out = [rs.numerator.coeff(n) for n in range(n_max + 1)]
    for e in rs.denominator_exponents:
        out = [sum((out[n - k * e] for k in range(n // e + 1)), Fraction(0)) for n in range(n_max + 1)]
    return out


def substitute_monomial(exponents, images, d):
    """Image of a monomial under variable -> linear form, as an exponent dict.

    ``images[i]`` is a list of (variable, coefficient) pairs.  Plain
    dict-of-tuples polynomial multiplication; independent of the library's
    induced-action code path.
    """
    acc = {(0,) * d: 1}
    for var, power in enumerate(exponents):
        for _ in range(power):
            nxt = {}
            for exp, c in acc.items():
                for j, fc in images[var]:
                    e2 = exp[:j] + (exp[j] + 1,) + exp[j + 1 :]
                    nxt[e2] = nxt.get(e2, 0) + c * fc
            acc = nxt
    return {k: v for k, v in acc.items() if v != 0}


# ---------------------------------------------------------------------------
# random generators (all explicitly seeded by callers)


def random_fraction(rng: random.Random, lo=-5, hi=5, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_matrix(rng: random.Random, field, n: int, lo=-5, hi=5):
    if field is QQ:
        entries = [random_fraction(rng, lo, hi) for _ in range(n * n)]
    else:
        entries = [rng.randrange(field.p) for _ in range(n * n)]
    return Matrix(field, n, n, entries)


def random_invertible(rng: random.Random, field, n: int):
    while True:
        m = random_matrix(rng, field, n)
        if m.det() != 0:
            return m


def random_series(rng: random.Random) -> RationalSeries:
    """Random series with a dominant pole at z=1 (numerator nonzero at 1)."""
    exps = [rng.randint(1, 6) for _ in range(rng.randint(1, 4))]
    while True:
        coeffs = [rng.randint(-4, 4) for _ in range(rng.randint(1, 9))]
        num = UniPoly(coeffs)
        if not num.is_zero() and num.evaluate(Fraction(1)) != 0:
            return RationalSeries(num, exps)


def theorem32_instance(rng: random.Random):
    """(d, r, series) in the shape Q(z) / [(1-z)^r prod (1-z^{d_i})], Q(1) != 0."""
    d = rng.randint(1, 5)
    r = rng.randint(1, d)
    exps = (1,) * r + tuple(rng.randint(1, 6) for _ in range(d - r))
    while True:
        coeffs = [rng.randint(-4, 4) for _ in range(rng.randint(1, 9))]
        num = UniPoly(coeffs)
        if not num.is_zero() and num.evaluate(Fraction(1)) != 0 and num.is_integral():
            return d, r, RationalSeries(num, exps)


# ---------------------------------------------------------------------------
# cached heavy computations, shared across test modules


@lru_cache(maxsize=None)
def battery_reports():
    return tuple(battery(workers=1))


@lru_cache(maxsize=None)
def corpus_entries():
    return tuple(battery_corpus())


@lru_cache(maxsize=None)
def corpus_group(label: str):
    for entry in corpus_entries():
        if entry.label == label:
            return close(entry.spec)
    raise KeyError(label)


def char0_entries():
    return [e for e in corpus_entries() if e.spec.field.characteristic == 0]


@lru_cache(maxsize=None)
def random_series_batch(count: int = 200, seed: int = 20260810):
    rng = random.Random(seed)
    return tuple(random_series(rng) for _ in range(count))


@lru_cache(maxsize=None)
def theorem32_batch(count: int = 500, seed: int = 715):
    rng = random.Random(seed)
    return tuple(theorem32_instance(rng) for _ in range(count))


@lru_cache(maxsize=None)
def random_group_reports(count: int = 200, seed: int = 424242):
    """Full-pipeline analyses of random signed-permutation groups."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        spec = random_signed_permutation_spec(rng)
        out.append(analyze(spec, AnalysisOptions()))
    return tuple(out)


def swap_spec() -> GroupSpec:
    return GroupSpec(QQ, 2, (Matrix.from_rows(QQ, [[0, 1], [1, 0]]),))
