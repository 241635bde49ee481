"""Formal direct sums of graded group symbols.

A FormalSum is a multiset of terms with positive integer multiplicities,
kept in a canonical order so construction is deterministic and equality
is multiset equality.  Term kinds:

* ``GottliebTerm(space, degree)``      G_degree of a named space
* ``PiTerm(space, degree)``            homotopy group pi_degree of a named space
* ``RelTerm(map_name, degree)``        relative Gottlieb group of a named map
* ``GenGottliebTerm(source, k, target)``  generalized Gottlieb group of maps
  from the k-fold suspension of ``source`` into ``target``, kept symbolic

The text form is golden-tested: multiplicities print as ``2*``, terms as
``G[3](Y)``, ``pi[4](Y)``, ``Grel[4](f)`` and ``Gen[Σ^2 B -> Y]``, joined
by `` + ``; the empty sum prints as ``0``.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .spaces import SpaceExpr, format_space

__all__ = [
    "FormalSum",
    "GenGottliebTerm",
    "GottliebTerm",
    "PiTerm",
    "RelTerm",
    "Term",
    "term_text",
]


def _check_degree(degree: int, what: str) -> None:
    if isinstance(degree, bool) or not isinstance(degree, int):
        raise TypeError(f"{what} must be an integer, got {degree!r}")
    if degree < 1:
        raise ValueError(f"{what} must be >= 1, got {degree}")


@dataclass(frozen=True)
class GottliebTerm:
    space: str
    degree: int

    def __post_init__(self) -> None:
        _check_degree(self.degree, "Gottlieb degree")


@dataclass(frozen=True)
class PiTerm:
    space: str
    degree: int

    def __post_init__(self) -> None:
        _check_degree(self.degree, "homotopy degree")


@dataclass(frozen=True)
class RelTerm:
    map_name: str
    degree: int

    def __post_init__(self) -> None:
        _check_degree(self.degree, "relative degree")


@dataclass(frozen=True)
class GenGottliebTerm:
    source: SpaceExpr
    suspensions: int
    target: SpaceExpr

    def __post_init__(self) -> None:
        _check_degree(self.suspensions, "suspension count")


Term = Union[GottliebTerm, PiTerm, RelTerm, GenGottliebTerm]

_KIND_ORDER = {GottliebTerm: 0, PiTerm: 1, RelTerm: 2, GenGottliebTerm: 3}


def term_text(term: Term) -> str:
    match term:
        case GottliebTerm(space, degree):
            return f"G[{degree}]({space})"
        case PiTerm(space, degree):
            return f"pi[{degree}]({space})"
        case RelTerm(map_name, degree):
            return f"Grel[{degree}]({map_name})"
        case GenGottliebTerm(source, suspensions, target):
            return f"Gen[Σ^{suspensions} {format_space(source)} -> {format_space(target)}]"
    raise TypeError(f"not a term: {term!r}")


def _term_key(term: Term):
    kind = _KIND_ORDER[type(term)]
    match term:
        case GottliebTerm(space, degree) | PiTerm(space, degree):
            return (kind, space, degree)
        case RelTerm(map_name, degree):
            return (kind, map_name, degree)
        case GenGottliebTerm(source, suspensions, target):
            return (kind, format_space(source), suspensions, format_space(target))


@dataclass(frozen=True)
class FormalSum:
    """Canonically ordered multiset of terms with multiplicities >= 1."""

    terms: tuple[tuple[Term, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[Term, int] = {}
        for term, mult in self.terms:
            if type(term) not in _KIND_ORDER:
                raise TypeError(f"not a term: {term!r}")
            if not isinstance(mult, int) or mult < 0:
                raise ValueError(f"multiplicity must be a non-negative integer, got {mult!r}")
            if mult:
                merged[term] = merged.get(term, 0) + mult
        canon = tuple(sorted(merged.items(), key=lambda pair: _term_key(pair[0])))
        object.__setattr__(self, "terms", canon)

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def single(cls, term: Term, multiplicity: int = 1) -> "FormalSum":
        return cls(((term, multiplicity),))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Term, int]]) -> "FormalSum":
        return cls(tuple(pairs))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(self.terms + other.terms)

    def scaled(self, factor: int) -> "FormalSum":
        if not isinstance(factor, int) or factor < 0:
            raise ValueError(f"scale factor must be a non-negative integer, got {factor!r}")
        return FormalSum(tuple((term, mult * factor) for term, mult in self.terms))

    def multiplicity(self, term: Term) -> int:
        return dict(self.terms).get(term, 0)

    def __iter__(self) -> Iterator[tuple[Term, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for term, mult in self.terms:
            text = term_text(term)
            parts.append(text if mult == 1 else f"{mult}*{text}")
        return " + ".join(parts)
