"""Sphere splittings and shift polynomials."""

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import splittable_exprs
from gottlieb.spaces import (
    Atom,
    Bouquet,
    MapSpace,
    Point,
    Product,
    Sphere,
    Susp,
    Torus,
    Wedge,
    desugar,
    parse_space,
)
from gottlieb.splitting import (
    NotSplittableError,
    ShiftPolynomial,
    sphere_splitting,
    shift_polynomial,
)


def test_splitting_examples():
    assert sphere_splitting(Sphere(5)).shifts == (5,)
    assert sphere_splitting(Point()).shifts == ()
    assert sphere_splitting(Torus(3)).shifts == (1, 1, 1, 2, 2, 2, 3)
    assert sphere_splitting(Wedge((Sphere(1), Point(), Sphere(2)))).shifts == (1, 2)
    assert sphere_splitting(Bouquet(3)).shifts == (1, 1, 1)
    assert sphere_splitting(Susp(Sphere(2), 3)).shifts == (5,)
    assert sphere_splitting(parse_space("prod(S2, wedge(S1, S3))")).shifts == (
        1, 2, 3, 3, 5,
    )


def test_product_rule_is_pairwise_sums():
    # prod(S1, S2): each factor alone plus the cross term.
    assert sphere_splitting(Product((Sphere(1), Sphere(2)))).shifts == (1, 2, 3)
    assert sphere_splitting(Torus(2)).shifts == (1, 1, 2)


def test_atom_shifts():
    attached = sphere_splitting(Atom("X"), {"X": (5, 10)})
    assert attached.shifts == (5, 10)
    blocked = sphere_splitting(Atom("X"))
    assert not blocked.splittable
    assert blocked.blocker == Atom("X")
    assert blocked.reason == "atom has no declared suspension shifts"


def test_blocked_cases():
    result = sphere_splitting(MapSpace(Sphere(1), Atom("Y")))
    assert not result.splittable
    assert isinstance(result.blocker, MapSpace)

    # One blocked leaf poisons the whole expression.
    nested = sphere_splitting(Product((Sphere(2), Susp(Atom("B"), 2))))
    assert not nested.splittable
    assert nested.blocker == Atom("B")


def test_splitting_is_a_value_not_an_error():
    result = sphere_splitting(Atom("B"))
    assert result.shifts is None
    assert "not splittable" in str(result)
    assert str(sphere_splitting(Torus(2))) == "{1, 1, 2}"


def test_shift_polynomial_examples():
    poly = shift_polynomial(parse_space("prod(S2, wedge(S1, S3))"))
    assert poly.as_dict() == {0: 1, 1: 1, 2: 1, 3: 2, 5: 1}
    assert poly.coefficient(3) == 2
    assert poly.coefficient(4) == 0
    assert poly.max_shift == 5
    assert poly.total() == 6
    assert str(poly) == "1 + t^1 + t^2 + 2*t^3 + t^5"


def test_shift_polynomial_requires_splitting():
    with pytest.raises(NotSplittableError) as err:
        shift_polynomial(MapSpace(Sphere(1), Atom("Y")))
    assert isinstance(err.value.blocker, MapSpace)
    assert err.value.reason


def test_polynomial_constant_term_is_pinned():
    assert ShiftPolynomial.one().as_dict() == {0: 1}
    with pytest.raises(ValueError):
        ShiftPolynomial(((0, 2),))
    with pytest.raises(ValueError):
        ShiftPolynomial(((1, 1),))  # missing constant term
    with pytest.raises(ValueError):
        ShiftPolynomial.from_shifts([0, 1])  # shifts start at 1


def test_polynomial_algebra():
    p = ShiftPolynomial.from_shifts([1])
    q = ShiftPolynomial.from_shifts([2])
    assert (p * q).as_dict() == {0: 1, 1: 1, 2: 1, 3: 1}
    assert (p**3).as_dict() == {0: 1, 1: 3, 2: 3, 3: 1}
    assert p**0 == ShiftPolynomial.one()


def test_torus_power_matches_binomials():
    for n in range(1, 13):
        poly = shift_polynomial(Torus(n))
        assert poly.as_dict() == {i: comb(n, i) for i in range(n + 1)}


@given(splittable_exprs(), splittable_exprs())
def test_polynomial_is_multiplicative_over_products(a, b):
    product = shift_polynomial(Product((a, b)))
    assert product == shift_polynomial(a) * shift_polynomial(b)


@given(splittable_exprs())
def test_splitting_invariant_under_desugar(expr):
    assert sphere_splitting(expr) == sphere_splitting(desugar(expr))


@given(splittable_exprs())
def test_polynomial_agrees_with_splitting_multiset(expr):
    shifts = sphere_splitting(expr).shifts
    poly = shift_polynomial(expr)
    counted: dict[int, int] = {0: 1}
    for s in shifts:
        counted[s] = counted.get(s, 0) + 1
    assert poly.as_dict() == counted


@given(splittable_exprs(), st.integers(1, 3))
def test_suspension_adds_to_every_shift(expr, k):
    base = sphere_splitting(expr).shifts
    lifted = sphere_splitting(Susp(expr, k)).shifts
    assert lifted == tuple(sorted(s + k for s in base))
