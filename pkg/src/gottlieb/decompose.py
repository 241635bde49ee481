"""Rewrite engine turning mapping-space expressions into formal sums.

``decompose(expr, n)`` computes a symbolic direct-sum decomposition of the
degree-n Gottlieb group of ``expr``.  Rules, applied deterministically:

* an atom Y is already a leaf and yields ``G[n](Y)``;
* a point yields the empty sum (all of its Gottlieb groups are trivial);
* ``map(prod(X1, ..., Xk), Y)`` curries into ``map(X1, map(prod(X2, ...), Y))``,
  peeling factors left to right (exponential law);
* ``map(X, Y)`` with X non-product contributes ``decompose(Y, n)`` plus one
  ``decompose(Y, n + i)`` per shift i in the sphere splitting of X; when X
  does not split, the leftover is a single symbolic generalized term
  ``Gen[Σ^n X -> Y]`` whose target is decomposed no further.  A suspension
  source folds its suspension count into the residual's exponent, so
  ``map(susp(B), Y)`` leaves ``Gen[Σ^{n+1} B -> Y]``.

Results are memoized per call on (subexpression, degree), which keeps
deeply iterated loop and bouquet spaces polynomial-time.
"""

from math import comb

from .formal import FormalSum, GenGottliebTerm, GottliebTerm
from .spaces import (
    Atom,
    MapSpace,
    Point,
    Product,
    SpaceExpr,
    Susp,
    desugar,
    format_space,
)
from .splitting import sphere_splitting

__all__ = ["DecomposeError", "closed_form_bouquet", "decompose"]


class DecomposeError(ValueError):
    """The expression has no decomposition rule (e.g. a bare sphere target)."""


def decompose(expr: SpaceExpr, degree: int, atom_shifts=None) -> FormalSum:
    """Canonical formal sum for the degree-``degree`` Gottlieb group of ``expr``.

    ``atom_shifts`` maps atom names to declared suspension shift multisets
    and is consulted when mapping-space sources must be split.
    """
    if isinstance(degree, bool) or not isinstance(degree, int):
        raise TypeError(f"degree must be an integer, got {degree!r}")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    memo: dict[tuple[SpaceExpr, int], FormalSum] = {}

    def go(e: SpaceExpr, n: int) -> FormalSum:
        key = (e, n)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if isinstance(e, Atom):
            out = FormalSum.single(GottliebTerm(e.name, n))
        elif isinstance(e, Point):
            out = FormalSum.zero()
        elif isinstance(e, MapSpace):
            out = _map_rule(e, n)
        else:
            raise DecomposeError(
                f"no decomposition rule for target {format_space(e)!r}; "
                "targets must be atoms, points, or mapping spaces"
            )
        memo[key] = out
        return out

    def _map_rule(e: MapSpace, n: int) -> FormalSum:
        source, target = e.source, e.target
        if isinstance(source, Product):
            factors = source.children
            if len(factors) == 1:
                return go(MapSpace(factors[0], target), n)
            rest = factors[1] if len(factors) == 2 else Product(factors[1:])
            return go(MapSpace(factors[0], MapSpace(rest, target)), n)
        splitting = sphere_splitting(source, atom_shifts)
        if splitting.splittable:
            out = go(target, n)
            for shift in splitting.shifts:
                out = out + go(target, n + shift)
            return out
        # Residual: the target is kept verbatim inside the symbolic term,
        # but still contributes its own unshifted decomposition.
        residual_source, exponent = source, n
        if isinstance(source, Susp):
            residual_source, exponent = source.child, n + source.count
        residual = FormalSum.single(GenGottliebTerm(residual_source, exponent, target))
        return go(target, n) + residual

    return go(desugar(expr), degree)


def closed_form_bouquet(circles: int, iterations: int, degree: int, target) -> FormalSum:
    """Closed form for the iterated bouquet mapping space on an atom target.

    The degree-n group of bloop(Y, m, N) is the direct sum over j = 0..N of
    m^j * C(N, j) copies of G_{n+j}(Y); m = 1 is the iterated free loop
    space.  ``target`` may be an atom name or an Atom node.
    """
    if circles < 1:
        raise ValueError(f"circle count must be >= 1, got {circles}")
    if iterations < 1:
        raise ValueError(f"iteration count must be >= 1, got {iterations}")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if isinstance(target, Atom):
        name = target.name
    elif isinstance(target, str):
        name = target
    else:
        raise TypeError(f"target must be an atom or atom name, got {target!r}")
    pairs = [
        (GottliebTerm(name, degree + j), (circles**j) * comb(iterations, j))
        for j in range(iterations + 1)
    ]
    return FormalSum.from_pairs(pairs)
