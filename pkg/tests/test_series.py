"""Series layer: expansion, cyclotomics, pole orders, the hsop form check."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hilbertgrade import (
    FormCheckError,
    RationalSeries,
    UniPoly,
    cyclotomic,
    cyclotomic_multiplicity,
    form_check,
    pole_orders,
    reduce_series,
)
from hilbertgrade.series import cyclotomic_factor_orders
from helpers import battery_reports, expand_oracle, random_series, random_series_batch


def series(num_coeffs, exponents):
    return RationalSeries(UniPoly(num_coeffs), exponents)


def test_expand_binomial_series():
    assert series([1], (1, 1)).expand(4) == [1, 2, 3, 4, 5]


def test_expand_degrees_one_and_two():
    assert series([1], (1, 2)).expand(5) == [1, 1, 2, 2, 3, 3]


def test_expand_plus_minus_identity_series():
    # Matches the invariant dimensions of {I, -I}: even degrees only.
    assert series([1, 0, 1], (2, 2)).expand(4) == [1, 0, 3, 0, 5]


def test_expand_matches_geometric_convolution_oracle():
    rng = random.Random(3)
    for _ in range(30):
        rs = random_series(rng)
        assert rs.expand(25) == expand_oracle(rs, 25)


def test_expand_is_linear_for_equal_denominators():
    rng = random.Random(4)
    for _ in range(20):
        exps = tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 3)))
        a = UniPoly([rng.randint(-4, 4) for _ in range(5)])
        b = UniPoly([rng.randint(-4, 4) for _ in range(5)])
        lhs = RationalSeries(a + b, exps).expand(20)
        ra = RationalSeries(a, exps).expand(20)
        rb = RationalSeries(b, exps).expand(20)
        assert lhs == [x + y for x, y in zip(ra, rb)]


def test_cyclotomic_small_indices():
    assert cyclotomic(1) == UniPoly([-1, 1])
    assert cyclotomic(2) == UniPoly([1, 1])
    assert cyclotomic(3) == UniPoly([1, 1, 1])
    # Phi_6 derived by exact division of z^6 - 1 by Phi_1 * Phi_2 * Phi_3.
    z6 = UniPoly.z_pow(6) - UniPoly.one()
    derived = z6.exact_div(cyclotomic(1) * cyclotomic(2) * cyclotomic(3))
    assert cyclotomic(6) == derived == UniPoly([1, -1, 1])


def test_cyclotomic_product_identity():
    for n in range(1, 31):
        prod = UniPoly.one()
        for m in range(1, n + 1):
            if n % m == 0:
                prod = prod * cyclotomic(m)
        assert prod == UniPoly.z_pow(n) - UniPoly.one()


def test_cyclotomic_factor_orders_roundtrip():
    poly = cyclotomic(1) * cyclotomic(4) * cyclotomic(4) * cyclotomic(6)
    assert cyclotomic_factor_orders(poly) == [1, 4, 4, 6]
    with pytest.raises(ValueError):
        cyclotomic_factor_orders(UniPoly([1, 1, 1, 0, 1]))


def test_pole_orders_examples():
    assert pole_orders(series([1], (1, 1))) == {1: 2}
    assert pole_orders(series([1], (1, 2))) == {1: 2, 2: 1}
    num = UniPoly([1, 0, 1])
    assert num.evaluate(Fraction(-1)) == 2  # Phi_2 does not divide 1 + z^2
    assert pole_orders(RationalSeries(num, (2, 2))) == {1: 2, 2: 2}


def test_pole_orders_degree_bound_and_coprimality():
    seen_equal = seen_less = False
    all_series = [rep.series for rep in battery_reports() if rep.series is not None]
    all_series += list(random_series_batch())
    for rs in all_series:
        orders = pole_orders(rs)
        total = sum(order * cyclotomic(m).degree for m, order in orders.items())
        bound = sum(rs.denominator_exponents)
        coprime = all(
            cyclotomic_multiplicity(rs.numerator, m) == 0
            for e in rs.denominator_exponents
            for m in range(1, e + 1)
            if e % m == 0
        )
        assert total <= bound
        assert (total == bound) == coprime
        seen_equal |= coprime
        seen_less |= not coprime
    assert seen_equal and seen_less


def test_form_check_paper_example():
    q = form_check(series([1], (1, 2)), r=1, d=2, L=2)
    assert q == UniPoly.one()


def test_form_check_trivial_group_shape():
    for d in (1, 2, 3):
        q = form_check(series([1], (1,) * d), r=d, d=d, L=1)
        assert q == UniPoly.one()


def test_form_check_failure_carries_offending_cyclotomic():
    with pytest.raises(FormCheckError) as err:
        form_check(series([1, 0, 1], (2, 2)), r=1, d=2, L=2)
    assert err.value.offending_m == 2
    assert err.value.excess == 1


def test_form_check_rejects_overstated_order_at_one():
    # Claiming d = 3 for a series whose pole at z=1 has order 2 makes the
    # division exact but Q(1) = 0; the failure points at m = 1 with a
    # negative excess (a deficit).
    with pytest.raises(FormCheckError) as err:
        form_check(series([1], (1, 2)), r=1, d=3, L=2)
    assert err.value.offending_m == 1
    assert err.value.excess == -1


def test_form_check_rejects_bad_common_multiple():
    with pytest.raises(ValueError, match="common multiple"):
        form_check(series([1], (2, 3)), r=0, d=2, L=4)


def test_form_check_succeeds_iff_side_poles_fit():
    from math import lcm

    for rep in battery_reports():
        rs = rep.series
        if rs is None:
            continue
        orders = pole_orders(rs)
        d = orders.get(1, 0)
        side = max((o for m, o in orders.items() if m >= 2), default=0)
        cap = lcm(*rs.denominator_exponents)
        for r in range(0, d + 1):
            if side <= d - r:
                q = form_check(rs, r, d, cap)
                assert q.evaluate(Fraction(1)) != 0
            else:
                with pytest.raises(FormCheckError):
                    form_check(rs, r, d, cap)


def test_reduce_series_cancels_to_coprime_form():
    # (1 + z + z^2) / [(1-z^2)(1-z^3)] == 1 / [(1-z)(1-z^2)]
    reduced = reduce_series(series([1, 1, 1], (2, 3)))
    assert reduced == series([1], (1, 2))
    # already reduced input comes back unchanged
    assert reduce_series(series([1], (1, 2))) == series([1], (1, 2))
    # polynomial case: denominator divides numerator
    poly = reduce_series(series([1, -1], (1,)))
    assert poly.denominator_exponents == () and poly.numerator == UniPoly.one()


def test_reduce_falls_back_when_no_exponent_multiset_exists():
    # Poles of order 1 at m = 1, 2, 3 but none at 6: no product of
    # (1 - z^e) factors realizes that pole pattern, so the input is
    # reported unchanged (pole data intact).
    rs = RationalSeries(cyclotomic(6), (6,))
    assert pole_orders(rs) == {1: 1, 2: 1, 3: 1}
    assert reduce_series(rs) == rs


def test_reduce_with_numerator_dominating_a_factor():
    # (1+z)^2 / (1-z^2): the numerator carries more of Phi_2 than the
    # denominator; the surplus stays in the numerator.
    rs = series([1, 2, 1], (2,))
    reduced = reduce_series(rs)
    assert reduced == series([1, 1], (1,))
    assert reduced.expand(8) == rs.expand(8)


def test_reduce_preserves_the_series():
    rng = random.Random(6)
    for _ in range(20):
        rs = random_series(rng)
        reduced = reduce_series(rs)
        assert reduced.expand(25) == rs.expand(25)


def test_display_forms():
    assert series([1], (1, 2)).display() == "1 / [(1-z)(1-z^2)]"
    assert series([1, 0, 1], (2, 2)).display() == "(1 + z^2) / [(1-z^2)(1-z^2)]"
    assert series([1, Fraction(-1, 2)], (3,)).display() == "(1 - 1/2*z) / [(1-z^3)]"
    assert UniPoly([0, 0, 2]).text() == "2*z^2"
    assert UniPoly([]).text() == "0"


def test_unipoly_divmod_and_exact_div():
    a = UniPoly([2, 3, 1])  # (z+1)(z+2)
    q, r = divmod(a, UniPoly([1, 1]))
    assert q == UniPoly([2, 1]) and r.is_zero()
    assert a.exact_div(UniPoly([2, 1])) == UniPoly([1, 1])
    q2, r2 = divmod(a, UniPoly([0, 1]))
    assert q2 == UniPoly([3, 1]) and r2 == UniPoly([2])
