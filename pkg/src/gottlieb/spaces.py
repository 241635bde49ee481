"""Expression language for based spaces and mapping spaces.

Concrete syntax (whitespace-insensitive, ASCII)::

    Space ::= Atom | "S" Nat | "pt" | "T" Nat | "B" Nat
            | "wedge" "(" Space {"," Space} ")"
            | "prod"  "(" Space {"," Space} ")"
            | "susp"  "(" Space ["," Nat] ")"
            | "map"   "(" Space "," Space ")"
            | "loop"  "(" Space ["," Nat] ")"
            | "bloop" "(" Space "," Nat ["," Nat] ")"
    Atom  ::= identifier [A-Za-z][A-Za-z0-9_]*, excluding the reserved forms
    Nat   ::= decimal integer >= 1, no leading zeros

``S5`` is the 5-sphere, ``pt`` the one-point space, ``T3`` the 3-torus,
``B2`` the wedge of two circles.  ``map(X, Y)`` is the null component of
the based mapping space; ``loop(Y, N)`` is the N-fold iterated free loop
space and ``bloop(Y, m, N)`` its m-circle bouquet analogue, both kept as
explicit nodes so closed forms can fire before desugaring.

``parse_space`` and ``format_space`` are mutually inverse on the abstract
syntax: ``parse_space(format_space(e)) == e`` for every well-formed tree,
and formatting normalizes nothing but whitespace.  ``desugar`` removes the
Torus/Bouquet/Loop/BouquetSpace sugar and merges nested suspensions; it is
idempotent.
"""

import re
from dataclasses import dataclass

__all__ = [
    "Atom",
    "Bouquet",
    "BouquetSpace",
    "Loop",
    "MapSpace",
    "Point",
    "Product",
    "SpaceExpr",
    "SpaceParseError",
    "Sphere",
    "Susp",
    "Torus",
    "Wedge",
    "desugar",
    "format_space",
    "is_valid_atom_name",
    "parse_space",
]

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INDEXED_RE = re.compile(r"([STB])([0-9]+)\Z")
_KEYWORDS = ("wedge", "prod", "susp", "map", "loop", "bloop", "pt")


def is_valid_atom_name(name: str) -> bool:
    """True when ``name`` can denote a user atom (identifier, not reserved)."""
    return (
        isinstance(name, str)
        and _IDENT_RE.fullmatch(name) is not None
        and name not in _KEYWORDS
        and _INDEXED_RE.fullmatch(name) is None
    )


class SpaceExpr:
    """Base class for space expression nodes; all nodes are immutable."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_space(self)


def _nat(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{what} must be an integer, got {value!r}")
    if value < 1:
        raise ValueError(f"{what} must be >= 1, got {value}")
    return value


def _children(value, what: str) -> tuple:
    items = tuple(value)
    if not items:
        raise ValueError(f"{what} needs at least one factor")
    for item in items:
        if not isinstance(item, SpaceExpr):
            raise TypeError(f"{what} factor must be a SpaceExpr, got {item!r}")
    return items


@dataclass(frozen=True)
class Atom(SpaceExpr):
    name: str

    def __post_init__(self) -> None:
        if not is_valid_atom_name(self.name):
            raise ValueError(f"invalid or reserved atom name {self.name!r}")


@dataclass(frozen=True)
class Sphere(SpaceExpr):
    dim: int

    def __post_init__(self) -> None:
        _nat(self.dim, "sphere dimension")


@dataclass(frozen=True)
class Point(SpaceExpr):
    pass


@dataclass(frozen=True)
class Wedge(SpaceExpr):
    children: tuple[SpaceExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", _children(self.children, "wedge"))


@dataclass(frozen=True)
class Product(SpaceExpr):
    children: tuple[SpaceExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", _children(self.children, "product"))


@dataclass(frozen=True)
class Susp(SpaceExpr):
    child: SpaceExpr
    count: int = 1

    def __post_init__(self) -> None:
        _nat(self.count, "suspension count")


@dataclass(frozen=True)
class MapSpace(SpaceExpr):
    """Null component of the based mapping space from ``source`` to ``target``."""

    source: SpaceExpr
    target: SpaceExpr


@dataclass(frozen=True)
class Torus(SpaceExpr):
    factors: int

    def __post_init__(self) -> None:
        _nat(self.factors, "torus factor count")


@dataclass(frozen=True)
class Bouquet(SpaceExpr):
    circles: int

    def __post_init__(self) -> None:
        _nat(self.circles, "bouquet circle count")


@dataclass(frozen=True)
class Loop(SpaceExpr):
    target: SpaceExpr
    iterations: int = 1

    def __post_init__(self) -> None:
        _nat(self.iterations, "loop iteration count")


@dataclass(frozen=True)
class BouquetSpace(SpaceExpr):
    target: SpaceExpr
    circles: int
    iterations: int = 1

    def __post_init__(self) -> None:
        _nat(self.circles, "bouquet circle count")
        _nat(self.iterations, "iteration count")


class SpaceParseError(ValueError):
    """Syntax error with the offending position and the expected token set."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += " (expected " + ", ".join(self.expected) + ")"
        super().__init__(detail)


# Token kinds: NAME, INT, LPAREN, RPAREN, COMMA, END.
def _lex(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "(":
            tokens.append(("LPAREN", ch, i))
            i += 1
        elif ch == ")":
            tokens.append(("RPAREN", ch, i))
            i += 1
        elif ch == ",":
            tokens.append(("COMMA", ch, i))
            i += 1
        elif ch.isdigit():
            m = re.match(r"[0-9]+", text[i:])
            digits = m.group(0)
            if digits.startswith("0") and len(digits) > 1:
                raise SpaceParseError(f"number {digits!r} has a leading zero", i)
            tokens.append(("INT", digits, i))
            i += len(digits)
        elif m := _IDENT_RE.match(text, i):
            tokens.append(("NAME", m.group(0), i))
            i = m.end()
        else:
            raise SpaceParseError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self, kind: str, expected: tuple[str, ...]) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            shown = tok[1] if tok[1] else "end of input"
            raise SpaceParseError(f"unexpected {shown!r}", tok[2], expected)
        self.pos += 1
        return tok

    def nat(self, what: str) -> int:
        tok = self.take("INT", ("a positive integer",))
        value = int(tok[1])
        if value < 1:
            raise SpaceParseError(f"{what} must be >= 1", tok[2])
        return value

    def space(self) -> SpaceExpr:
        kind, value, at = self.peek()
        if kind != "NAME":
            shown = value if value else "end of input"
            raise SpaceParseError(f"unexpected {shown!r}", at, ("a space expression",))
        self.pos += 1
        if value == "pt":
            return Point()
        if value in _KEYWORDS:
            return self.call(value, at)
        if m := _INDEXED_RE.fullmatch(value):
            letter, digits = m.groups()
            if digits.startswith("0"):
                raise SpaceParseError(
                    f"reserved name {value!r} has a malformed index", at
                )
            index = int(digits)
            return {"S": Sphere, "T": Torus, "B": Bouquet}[letter](index)
        return Atom(value)

    def call(self, keyword: str, at: int) -> SpaceExpr:
        self.take("LPAREN", ("'('",))
        if keyword in ("wedge", "prod"):
            children = [self.space()]
            while self.peek()[0] == "COMMA":
                self.pos += 1
                children.append(self.space())
            self.take("RPAREN", ("','", "')'"))
            return (Wedge if keyword == "wedge" else Product)(tuple(children))
        if keyword == "susp":
            child = self.space()
            count = 1
            if self.peek()[0] == "COMMA":
                self.pos += 1
                count = self.nat("suspension count")
            self.take("RPAREN", ("','", "')'"))
            return Susp(child, count)
        if keyword == "map":
            source = self.space()
            self.take("COMMA", ("','",))
            target = self.space()
            self.take("RPAREN", ("')'",))
            return MapSpace(source, target)
        if keyword == "loop":
            target = self.space()
            iterations = 1
            if self.peek()[0] == "COMMA":
                self.pos += 1
                iterations = self.nat("loop iteration count")
            self.take("RPAREN", ("','", "')'"))
            return Loop(target, iterations)
        if keyword == "bloop":
            target = self.space()
            self.take("COMMA", ("','",))
            circles = self.nat("bouquet circle count")
            iterations = 1
            if self.peek()[0] == "COMMA":
                self.pos += 1
                iterations = self.nat("iteration count")
            self.take("RPAREN", ("','", "')'"))
            return BouquetSpace(target, circles, iterations)
        raise SpaceParseError(f"{keyword!r} is reserved", at)  # pragma: no cover


def parse_space(text: str) -> SpaceExpr:
    """Parse concrete syntax into a SpaceExpr, rejecting trailing input."""
    parser = _Parser(_lex(text))
    expr = parser.space()
    parser.take("END", ("end of input",))
    return expr


def format_space(expr: SpaceExpr) -> str:
    """Canonical concrete syntax; inverse to ``parse_space`` on valid trees."""
    match expr:
        case Atom(name):
            return name
        case Sphere(dim):
            return f"S{dim}"
        case Point():
            return "pt"
        case Torus(factors):
            return f"T{factors}"
        case Bouquet(circles):
            return f"B{circles}"
        case Wedge(children):
            return "wedge(" + ", ".join(format_space(c) for c in children) + ")"
        case Product(children):
            return "prod(" + ", ".join(format_space(c) for c in children) + ")"
        case Susp(child, count):
            if count == 1:
                return f"susp({format_space(child)})"
            return f"susp({format_space(child)}, {count})"
        case MapSpace(source, target):
            return f"map({format_space(source)}, {format_space(target)})"
        case Loop(target, iterations):
            if iterations == 1:
                return f"loop({format_space(target)})"
            return f"loop({format_space(target)}, {iterations})"
        case BouquetSpace(target, circles, iterations):
            if iterations == 1:
                return f"bloop({format_space(target)}, {circles})"
            return f"bloop({format_space(target)}, {circles}, {iterations})"
    raise TypeError(f"not a space expression: {expr!r}")


def desugar(expr: SpaceExpr) -> SpaceExpr:
    """Expand sugar nodes and merge nested suspensions.

    Torus(N) becomes a product of N circles, Bouquet(m) a wedge of m
    circles, Loop and BouquetSpace become nested MapSpace nodes (outermost
    iteration outermost), and Susp(Susp(x, a), b) becomes Susp(x, a + b).
    The result is a fixed point of ``desugar``.
    """
    match expr:
        case Atom() | Sphere() | Point():
            return expr
        case Wedge(children):
            return Wedge(tuple(desugar(c) for c in children))
        case Product(children):
            return Product(tuple(desugar(c) for c in children))
        case Susp(child, count):
            inner = desugar(child)
            if isinstance(inner, Susp):
                return Susp(inner.child, inner.count + count)
            return Susp(inner, count)
        case MapSpace(source, target):
            return MapSpace(desugar(source), desugar(target))
        case Torus(factors):
            if factors == 1:
                return Sphere(1)
            return Product((Sphere(1),) * factors)
        case Bouquet(circles):
            if circles == 1:
                return Sphere(1)
            return Wedge((Sphere(1),) * circles)
        case Loop(target, iterations):
            out = desugar(target)
            for _ in range(iterations):
                out = MapSpace(Sphere(1), out)
            return out
        case BouquetSpace(target, circles, iterations):
            source = desugar(Bouquet(circles))
            out = desugar(target)
            for _ in range(iterations):
                out = MapSpace(source, out)
            return out
    raise TypeError(f"not a space expression: {expr!r}")
