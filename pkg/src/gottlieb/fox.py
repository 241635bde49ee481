"""Homotopy of iterated free loop spaces and Fox torus-Gottlieb groups.

For an iterated free loop space, the degree-i homotopy group (i >= 2)
splits as the binomially weighted sum of the target's homotopy groups:
pi_i of loop(Y, N) is the direct sum over r = 0..N of C(N, r) copies of
pi_{i+r}(Y).  Degree 1 is refused: the fundamental group is only a split
extension (a semidirect product of pi_2 by pi_1 data), and extension data
is not computed here.

The degree-n Fox torus-Gottlieb group of Y is the degree-1 Gottlieb group
of loop(Y, n-1).  Decomposing that loop space gives the direct sum over
j = 0..n-1 of C(n-1, j) copies of G_{1+j}(Y); the indexing is forced by
consistency with iterated looping (the degree-1 instance of the bouquet
closed form), which pins the summands at G_{1+j} rather than any shifted
variant.
"""

from math import comb

from .formal import FormalSum, GottliebTerm, PiTerm
from .spaces import Atom

__all__ = ["fox_gottlieb", "iterated_loop_homotopy"]


def _atom_name(target) -> str:
    if isinstance(target, Atom):
        return target.name
    if isinstance(target, str):
        return target
    raise TypeError(f"target must be an atom or atom name, got {target!r}")


def iterated_loop_homotopy(degree: int, iterations: int, target) -> FormalSum:
    """Formal sum for pi_degree of loop(target, iterations), degree >= 2."""
    if degree < 2:
        raise ValueError(
            "degree must be >= 2: the fundamental group of an iterated free "
            "loop space is a split extension and its extension data is not computed"
        )
    if iterations < 1:
        raise ValueError(f"iteration count must be >= 1, got {iterations}")
    name = _atom_name(target)
    return FormalSum.from_pairs(
        (PiTerm(name, degree + r), comb(iterations, r)) for r in range(iterations + 1)
    )


def fox_gottlieb(degree: int, target) -> FormalSum:
    """Formal sum for the degree-n Fox torus-Gottlieb group of the target.

    Degree 1 is the plain Gottlieb group G_1; degree n >= 2 decomposes as
    the direct sum of C(n-1, j) copies of G_{1+j}(target) for j = 0..n-1.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    name = _atom_name(target)
    return FormalSum.from_pairs(
        (GottliebTerm(name, 1 + j), comb(degree - 1, j)) for j in range(degree)
    )
