"""The decomposition rewrite engine and its closed bouquet form."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import splittable_exprs
from gottlieb.decompose import DecomposeError, closed_form_bouquet, decompose
from gottlieb.formal import FormalSum, GenGottliebTerm, GottliebTerm
from gottlieb.spaces import (
    Atom,
    MapSpace,
    Point,
    Product,
    Sphere,
    Susp,
    parse_space,
)


def _g(degree, space="Y"):
    return GottliebTerm(space, degree)


def test_free_loop_prototype():
    for n in range(1, 11):
        expected = FormalSum.from_pairs([(_g(n), 1), (_g(n + 1), 1)])
        assert decompose(parse_space("map(S1, Y)"), n) == expected
        assert decompose(parse_space("loop(Y)"), n) == expected


def test_torus_example():
    result = decompose(parse_space("map(T2, Y)"), 1)
    assert str(result) == "G[1](Y) + 2*G[2](Y) + G[3](Y)"


def test_point_rules():
    assert decompose(parse_space("map(pt, Y)"), 3) == FormalSum.single(_g(3))
    assert decompose(Point(), 5) == FormalSum.zero()
    assert decompose(parse_space("map(S1, pt)"), 2) == FormalSum.zero()
    assert decompose(Atom("Y"), 2) == FormalSum.single(_g(2))


def test_atom_shifts_feed_the_splitting():
    result = decompose(parse_space("map(X, Y)"), 1, atom_shifts={"X": (5, 10)})
    assert str(result) == "G[1](Y) + G[6](Y) + G[11](Y)"


def test_residual_terms():
    result = decompose(parse_space("map(susp(B), Y)"), 3)
    assert str(result) == "G[3](Y) + Gen[Σ^4 B -> Y]"
    assert result.multiplicity(GenGottliebTerm(Atom("B"), 4, Atom("Y"))) == 1

    bare = decompose(parse_space("map(B, Y)"), 2)
    assert str(bare) == "G[2](Y) + Gen[Σ^2 B -> Y]"

    # The residual keeps the target verbatim while the target still
    # contributes its own decomposition.
    nested = decompose(parse_space("map(B, map(S1, Y))"), 1)
    assert str(nested) == "G[1](Y) + G[2](Y) + Gen[Σ^1 B -> map(S1, Y)]"


def test_suspension_folds_into_residual_exponent():
    deep = decompose(parse_space("map(susp(susp(B, 2)), Y)"), 1)
    assert deep.multiplicity(GenGottliebTerm(Atom("B"), 4, Atom("Y"))) == 1


def test_degree_validation():
    with pytest.raises(ValueError):
        decompose(Atom("Y"), 0)
    with pytest.raises(ValueError):
        decompose(Atom("Y"), -3)
    with pytest.raises(TypeError):
        decompose(Atom("Y"), 1.5)
    with pytest.raises(TypeError):
        decompose(Atom("Y"), True)


def test_unreducible_targets_are_rejected():
    with pytest.raises(DecomposeError):
        decompose(Sphere(2), 1)
    with pytest.raises(DecomposeError):
        decompose(parse_space("wedge(S1, S2)"), 1)
    with pytest.raises(DecomposeError):
        decompose(parse_space("T2"), 1)
    with pytest.raises(DecomposeError):
        decompose(parse_space("map(S1, prod(S1, S1))"), 1)


def test_output_is_deterministic():
    expr = parse_space("map(prod(T2, wedge(S2, S3)), Y)")
    assert str(decompose(expr, 2)) == str(decompose(expr, 2))
    assert decompose(expr, 2) == decompose(expr, 2)


def test_closed_form_bouquet_examples():
    result = closed_form_bouquet(2, 3, 1, "Y")
    assert [result.multiplicity(_g(1 + j)) for j in range(4)] == [1, 6, 12, 8]
    single = closed_form_bouquet(1, 1, 4, Atom("Y"))
    assert str(single) == "G[4](Y) + G[5](Y)"


def test_closed_form_bouquet_validation():
    with pytest.raises(ValueError):
        closed_form_bouquet(0, 1, 1, "Y")
    with pytest.raises(ValueError):
        closed_form_bouquet(1, 0, 1, "Y")
    with pytest.raises(ValueError):
        closed_form_bouquet(1, 1, 0, "Y")
    with pytest.raises(TypeError):
        closed_form_bouquet(1, 1, 1, Sphere(1))


def test_closed_form_matches_engine_on_deep_towers():
    # The engine must survive a ten-level tower; memoization keeps this fast.
    for m, n in ((1, 1), (2, 3), (4, 5)):
        expr = parse_space(f"bloop(Y, {m}, 10)")
        assert decompose(expr, n) == closed_form_bouquet(m, 10, n, "Y")


@settings(max_examples=60)
@given(splittable_exprs(), splittable_exprs(), st.integers(1, 3))
def test_currying_invariance(a, b, n):
    grouped = decompose(MapSpace(Product((a, b)), Atom("Y")), n)
    curried = decompose(MapSpace(a, MapSpace(b, Atom("Y"))), n)
    assert grouped == curried


@settings(max_examples=60)
@given(splittable_exprs(), st.integers(1, 3))
def test_multiplicities_match_shift_polynomial(expr, n):
    from gottlieb.splitting import shift_polynomial

    poly = shift_polynomial(expr)
    result = decompose(MapSpace(expr, Atom("Y")), n)
    for shift, count in poly.as_dict().items():
        assert result.multiplicity(_g(n + shift)) == count
    assert sum(m for _, m in result) == poly.total()


@settings(max_examples=40)
@given(splittable_exprs(), st.integers(1, 2), st.integers(1, 2))
def test_suspended_source_shifts_every_contribution(expr, k, n):
    from gottlieb.splitting import shift_polynomial

    # map(susp(A, k), Y): each positive shift of A moves up by k.
    lifted = decompose(MapSpace(Susp(expr, k), Atom("Y")), n)
    poly = shift_polynomial(expr)
    for shift, count in poly.as_dict().items():
        if shift == 0:
            assert lifted.multiplicity(_g(n)) == 1
        else:
            assert lifted.multiplicity(_g(n + shift + k)) == count
