"""User-supplied group tables and evaluation of formal sums against them.

Nothing here computes a homotopy or Gottlieb group from first principles:
every concrete value is asserted by the user in a profile document, and
evaluation only combines those assertions.  There are deliberately no
built-in tables.

A profile document is a JSON object::

    {
      "spaces": {
        "Y": {
          "betti": [1, 0, 3],
          "flags": {"simply_connected": true, "finite": true,
                    "g_space": false, "t_space": false},
          "suspension_shifts": [5, 10],
          "gottlieb": {"entries": {"3": "Z + Z/2"}, "zero_above": 10},
          "homotopy": {"entries": {"3": {"rank": 1, "torsion": [[2, 1]]}}}
        }
      },
      "maps": {
        "f": {"source": "X", "target": "Y", "is_identity": false,
              "relative_gottlieb": {"entries": {"4": "Z/2"}}}
      }
    }

Entry degrees are decimal strings >= 1.  Groups are written either in the
text codec ("Z^r + Z/d + ...") or structurally as {"rank": r, "torsion":
[[p, k], ...]}; ``save`` always emits the structural form.  Unknown keys
are rejected everywhere.  A graded table maps a degree to a group when an
entry exists, to the trivial group when the degree exceeds ``zero_above``,
and to "unknown" otherwise; evaluation of a formal sum returns either an
AbelianGroup or an ``Incomplete`` report listing what was missing.
"""

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .abelian import TRIVIAL, AbelianGroup
from .formal import (
    FormalSum,
    GenGottliebTerm,
    GottliebTerm,
    PiTerm,
    RelTerm,
    term_text,
)
from .spaces import SpaceExpr, is_valid_atom_name
from .splitting import shift_polynomial

__all__ = [
    "Flags",
    "GradedGroup",
    "Incomplete",
    "MapProfile",
    "ProfileDb",
    "ProfileError",
    "SpaceProfile",
    "evaluate",
    "gottlieb_table_of_map_space",
    "load",
    "save",
]

_DEGREE_KEY_RE = re.compile(r"[1-9][0-9]*\Z")
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ProfileError(ValueError):
    """Schema or invariant violation, with the document path that failed."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class GradedGroup:
    """Partial table degree -> group, with an optional triviality bound.

    Degrees above ``zero_above`` are implicitly the trivial group; absent
    degrees at or below the bound (or any degree, when there is no bound)
    are unknown.  Explicit entries above the bound are rejected.
    """

    entries: Mapping[int, AbelianGroup] = field(default_factory=dict)
    zero_above: int | None = None

    def __post_init__(self) -> None:
        table: dict[int, AbelianGroup] = {}
        for degree, group in dict(self.entries).items():
            if isinstance(degree, bool) or not isinstance(degree, int) or degree < 1:
                raise ProfileError(f"entry degree must be an integer >= 1, got {degree!r}")
            if not isinstance(group, AbelianGroup):
                raise ProfileError(f"entry at degree {degree} is not a group: {group!r}")
            table[degree] = group
        if self.zero_above is not None:
            bound = self.zero_above
            if isinstance(bound, bool) or not isinstance(bound, int) or bound < 0:
                raise ProfileError(f"zero_above must be an integer >= 0, got {bound!r}")
            beyond = sorted(d for d in table if d > bound)
            if beyond:
                raise ProfileError(
                    f"explicit entry at degree {beyond[0]} exceeds zero_above={bound}"
                )
        object.__setattr__(self, "entries", table)

    def lookup(self, degree: int) -> AbelianGroup | None:
        """The group at ``degree``, or None when the table does not know it."""
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        if degree in self.entries:
            return self.entries[degree]
        if self.zero_above is not None and degree > self.zero_above:
            return TRIVIAL
        return None

    def known_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.entries))

    @property
    def is_empty(self) -> bool:
        return not self.entries and self.zero_above is None


@dataclass(frozen=True)
class Flags:
    """Tri-state space properties; None means the user did not say."""

    simply_connected: bool | None = None
    finite: bool | None = None
    g_space: bool | None = None
    t_space: bool | None = None

    def __post_init__(self) -> None:
        for name in ("simply_connected", "finite", "g_space", "t_space"):
            value = getattr(self, name)
            if value is not None and not isinstance(value, bool):
                raise ProfileError(f"flag {name!r} must be true, false, or absent")


@dataclass(frozen=True)
class SpaceProfile:
    """Everything the user asserts about one named space."""

    name: str
    gottlieb: GradedGroup = field(default_factory=GradedGroup)
    homotopy: GradedGroup | None = None
    betti: tuple[int, ...] | None = None
    suspension_shifts: tuple[int, ...] | None = None
    flags: Flags = field(default_factory=Flags)

    def __post_init__(self) -> None:
        if not is_valid_atom_name(self.name):
            raise ProfileError(f"space name {self.name!r} is not a usable atom name")
        if self.betti is not None:
            betti = tuple(self.betti)
            if not betti or betti[0] != 1:
                raise ProfileError(f"betti numbers of {self.name!r} must start with 1")
            if any(isinstance(b, bool) or not isinstance(b, int) or b < 0 for b in betti):
                raise ProfileError(f"betti numbers of {self.name!r} must be integers >= 0")
            object.__setattr__(self, "betti", betti)
        if self.suspension_shifts is not None:
            shifts = tuple(sorted(self.suspension_shifts))
            if any(isinstance(s, bool) or not isinstance(s, int) or s < 1 for s in shifts):
                raise ProfileError(f"suspension shifts of {self.name!r} must be integers >= 1")
            object.__setattr__(self, "suspension_shifts", shifts)
        if self.flags.g_space is True and self.homotopy is not None:
            # A G-space has Gottlieb groups equal to its homotopy groups;
            # check wherever both tables answer.
            degrees = set(self.gottlieb.entries) | set(self.homotopy.entries)
            for degree in sorted(degrees):
                a = self.gottlieb.lookup(degree)
                b = self.homotopy.lookup(degree)
                if a is not None and b is not None and a != b:
                    raise ProfileError(
                        f"{self.name!r} is flagged g_space but G[{degree}] = {a} "
                        f"differs from pi[{degree}] = {b}"
                    )

    @property
    def dim(self) -> int | None:
        """Top degree of the Betti vector, when one was declared."""
        return None if self.betti is None else len(self.betti) - 1


@dataclass(frozen=True)
class MapProfile:
    """A named map together with its asserted relative Gottlieb table."""

    name: str
    source: str
    target: str
    relative_gottlieb: GradedGroup = field(default_factory=GradedGroup)
    is_identity: bool = False

    def __post_init__(self) -> None:
        if not _NAME_RE.fullmatch(self.name or ""):
            raise ProfileError(f"map name {self.name!r} is not an identifier")
        for role, space in (("source", self.source), ("target", self.target)):
            if not is_valid_atom_name(space):
                raise ProfileError(f"map {self.name!r} {role} {space!r} is not an atom name")
        if self.is_identity and self.source != self.target:
            raise ProfileError(
                f"map {self.name!r} is flagged is_identity but source {self.source!r} "
                f"differs from target {self.target!r}"
            )


@dataclass(frozen=True)
class ProfileDb:
    """Validated collection of space and map profiles."""

    spaces: Mapping[str, SpaceProfile] = field(default_factory=dict)
    maps: Mapping[str, MapProfile] = field(default_factory=dict)

    def __post_init__(self) -> None:
        spaces = dict(self.spaces)
        maps = dict(self.maps)
        for name, profile in spaces.items():
            if name != profile.name:
                raise ProfileError(f"space key {name!r} does not match profile name {profile.name!r}")
        for name, profile in maps.items():
            if name != profile.name:
                raise ProfileError(f"map key {name!r} does not match profile name {profile.name!r}")
            for role, space in (("source", profile.source), ("target", profile.target)):
                if space not in spaces:
                    raise ProfileError(
                        f"map {name!r} references undeclared {role} space {space!r}"
                    )
            if profile.is_identity:
                table = spaces[profile.source].gottlieb
                degrees = set(table.entries) | set(profile.relative_gottlieb.entries)
                for degree in sorted(degrees):
                    a = profile.relative_gottlieb.lookup(degree)
                    b = table.lookup(degree)
                    if a is not None and b is not None and a != b:
                        raise ProfileError(
                            f"identity map {name!r} relative table at degree {degree} "
                            f"({a}) disagrees with the Gottlieb table of {profile.source!r} ({b})"
                        )
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "maps", maps)

    @classmethod
    def of(cls, spaces: Iterable[SpaceProfile] = (), maps: Iterable[MapProfile] = ()) -> "ProfileDb":
        return cls({p.name: p for p in spaces}, {m.name: m for m in maps})

    def space(self, name: str) -> SpaceProfile:
        profile = self.spaces.get(name)
        if profile is None:
            raise ProfileError(f"no profile for space {name!r}")
        return profile

    def map(self, name: str) -> MapProfile:
        profile = self.maps.get(name)
        if profile is None:
            raise ProfileError(f"no profile for map {name!r}")
        return profile

    def atom_shifts(self) -> dict[str, tuple[int, ...]]:
        """Declared suspension shifts keyed by atom name, for the splitter."""
        return {
            name: profile.suspension_shifts
            for name, profile in self.spaces.items()
            if profile.suspension_shifts is not None
        }


@dataclass(frozen=True)
class Incomplete:
    """A partial evaluation: what resolved, what did not, and why.

    ``missing`` lists terms whose tables had no answer, ``residuals`` the
    symbolic generalized terms that can never be looked up, and ``partial``
    the direct sum of everything that did resolve (None when the caller's
    partial value is not a group, e.g. for rank computations).
    """

    missing: tuple[str, ...] = ()
    residuals: tuple[str, ...] = ()
    partial: AbelianGroup | None = None


def evaluate(formal_sum: FormalSum, db: ProfileDb) -> AbelianGroup | Incomplete:
    """Resolve every term of ``formal_sum`` against the tables in ``db``.

    Returns the direct sum when everything resolves.  Unknown table values
    and symbolic residuals produce an ``Incomplete`` carrying the partial
    sum; referencing a space or map with no profile at all is an error.
    """
    total = TRIVIAL
    missing: list[str] = []
    residuals: list[str] = []
    for term, multiplicity in formal_sum:
        if isinstance(term, GottliebTerm):
            value = db.space(term.space).gottlieb.lookup(term.degree)
        elif isinstance(term, PiTerm):
            table = db.space(term.space).homotopy
            value = None if table is None else table.lookup(term.degree)
        elif isinstance(term, RelTerm):
            value = db.map(term.map_name).relative_gottlieb.lookup(term.degree)
        elif isinstance(term, GenGottliebTerm):
            residuals.append(term_text(term))
            continue
        else:  # pragma: no cover - FormalSum already rejects foreign terms
            raise TypeError(f"cannot evaluate term {term!r}")
        if value is None:
            missing.append(term_text(term))
        else:
            total = total.direct_sum(value.scaled(multiplicity))
    if missing or residuals:
        return Incomplete(tuple(missing), tuple(residuals), total)
    return total


def gottlieb_table_of_map_space(
    source: SpaceExpr, target: str, degrees: Iterable[int], db: ProfileDb
) -> GradedGroup | Incomplete:
    """Derived Gottlieb table of map(source, target) on the given degrees.

    The source must split into spheres (its shift polynomial drives the
    degree shifts); the entry at degree d is the direct sum of c_i copies
    of G_{d+i}(target).  The triviality bound of the target is inherited,
    since shifting only raises degrees.  Unknown target degrees make the
    result Incomplete.
    """
    profile = db.space(target)
    poly = shift_polynomial(source, db.atom_shifts())
    table = profile.gottlieb
    bound = table.zero_above
    entries: dict[int, AbelianGroup] = {}
    missing: list[str] = []
    for degree in sorted(set(degrees)):
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        if bound is not None and degree > bound:
            continue  # implied trivial by the inherited bound
        value = TRIVIAL
        resolved = True
        for shift, count in poly.coeffs:
            looked_up = table.lookup(degree + shift)
            if looked_up is None:
                missing.append(f"G[{degree + shift}]({target})")
                resolved = False
            elif resolved:
                value = value.direct_sum(looked_up.scaled(count))
        if resolved:
            entries[degree] = value
    if missing:
        return Incomplete(tuple(dict.fromkeys(missing)), ())
    return GradedGroup(entries, zero_above=bound)


# ---------------------------------------------------------------------------
# Document parsing and serialization.

_SPACE_KEYS = {"betti", "flags", "suspension_shifts", "gottlieb", "homotopy"}
_MAP_KEYS = {"source", "target", "is_identity", "relative_gottlieb"}
_GRADED_KEYS = {"entries", "zero_above"}
_FLAG_KEYS = {"simply_connected", "finite", "g_space", "t_space"}
_GROUP_KEYS = {"rank", "torsion"}


def _require_object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ProfileError("expected an object", path)
    return value


def _check_keys(obj: dict, allowed: set, path: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ProfileError(f"unknown key {unknown[0]!r}", path)


def _group_from_json(value, path: str) -> AbelianGroup:
    if isinstance(value, str):
        try:
            return AbelianGroup.from_text(value)
        except (TypeError, ValueError) as exc:
            raise ProfileError(str(exc), path) from exc
    obj = _require_object(value, path)
    _check_keys(obj, _GROUP_KEYS, path)
    rank = obj.get("rank", 0)
    torsion = obj.get("torsion", [])
    if not isinstance(torsion, list):
        raise ProfileError("torsion must be a list of [prime, exponent] pairs", path)
    pairs = []
    for item in torsion:
        if not isinstance(item, list) or len(item) != 2:
            raise ProfileError(f"torsion item {item!r} is not a [prime, exponent] pair", path)
        pairs.append((item[0], item[1]))
    try:
        return AbelianGroup(rank, tuple(pairs))
    except (TypeError, ValueError) as exc:
        raise ProfileError(str(exc), path) from exc


def _graded_from_json(value, path: str) -> GradedGroup:
    obj = _require_object(value, path)
    _check_keys(obj, _GRADED_KEYS, path)
    entries_obj = _require_object(obj.get("entries", {}), f"{path}.entries")
    entries: dict[int, AbelianGroup] = {}
    for key, group_value in entries_obj.items():
        if not isinstance(key, str) or not _DEGREE_KEY_RE.fullmatch(key):
            raise ProfileError(
                f"degree key {key!r} must be a decimal string >= 1", f"{path}.entries"
            )
        entries[int(key)] = _group_from_json(group_value, f"{path}.entries.{key}")
    zero_above = obj.get("zero_above")
    if zero_above is not None and (isinstance(zero_above, bool) or not isinstance(zero_above, int)):
        raise ProfileError("zero_above must be an integer", f"{path}.zero_above")
    try:
        return GradedGroup(entries, zero_above)
    except ProfileError as exc:
        raise ProfileError(str(exc), path) from exc


def _flags_from_json(value, path: str) -> Flags:
    obj = _require_object(value, path)
    _check_keys(obj, _FLAG_KEYS, path)
    cleaned = {}
    for key, flag in obj.items():
        if flag is not None and not isinstance(flag, bool):
            raise ProfileError(f"flag {key!r} must be true, false, or null", path)
        cleaned[key] = flag
    return Flags(**cleaned)


def _space_from_json(name: str, value, path: str) -> SpaceProfile:
    obj = _require_object(value, path)
    _check_keys(obj, _SPACE_KEYS, path)
    betti = obj.get("betti")
    if betti is not None and not isinstance(betti, list):
        raise ProfileError("betti must be a list", f"{path}.betti")
    shifts = obj.get("suspension_shifts")
    if shifts is not None and not isinstance(shifts, list):
        raise ProfileError("suspension_shifts must be a list", f"{path}.suspension_shifts")
    try:
        return SpaceProfile(
            name=name,
            gottlieb=_graded_from_json(obj.get("gottlieb", {}), f"{path}.gottlieb"),
            homotopy=(
                _graded_from_json(obj["homotopy"], f"{path}.homotopy")
                if "homotopy" in obj and obj["homotopy"] is not None
                else None
            ),
            betti=tuple(betti) if betti is not None else None,
            suspension_shifts=tuple(shifts) if shifts is not None else None,
            flags=_flags_from_json(obj.get("flags", {}), f"{path}.flags"),
        )
    except ProfileError as exc:
        if exc.path:
            raise
        raise ProfileError(str(exc), path) from exc


def _map_from_json(name: str, value, path: str) -> MapProfile:
    obj = _require_object(value, path)
    _check_keys(obj, _MAP_KEYS, path)
    for key in ("source", "target"):
        if key not in obj or not isinstance(obj[key], str):
            raise ProfileError(f"map needs a string {key!r}", path)
    is_identity = obj.get("is_identity", False)
    if not isinstance(is_identity, bool):
        raise ProfileError("is_identity must be a boolean", f"{path}.is_identity")
    try:
        return MapProfile(
            name=name,
            source=obj["source"],
            target=obj["target"],
            relative_gottlieb=_graded_from_json(
                obj.get("relative_gottlieb", {}), f"{path}.relative_gottlieb"
            ),
            is_identity=is_identity,
        )
    except ProfileError as exc:
        if exc.path:
            raise
        raise ProfileError(str(exc), path) from exc


def load(document: str) -> ProfileDb:
    """Parse and validate a profile document (JSON text)."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"not valid JSON: {exc}") from exc
    _require_object(doc, "document")
    _check_keys(doc, {"spaces", "maps"}, "document")
    spaces_obj = _require_object(doc.get("spaces", {}), "spaces")
    maps_obj = _require_object(doc.get("maps", {}), "maps")
    spaces = {
        name: _space_from_json(name, value, f"spaces.{name}")
        for name, value in spaces_obj.items()
    }
    maps = {
        name: _map_from_json(name, value, f"maps.{name}")
        for name, value in maps_obj.items()
    }
    try:
        return ProfileDb(spaces, maps)
    except ProfileError as exc:
        if exc.path:
            raise
        raise ProfileError(str(exc), "document") from exc


def _group_to_json(group: AbelianGroup) -> dict:
    return {"rank": group.rank, "torsion": [[p, k] for p, k in group.torsion]}


def _graded_to_json(table: GradedGroup) -> dict:
    out: dict = {"entries": {str(d): _group_to_json(g) for d, g in sorted(table.entries.items())}}
    if table.zero_above is not None:
        out["zero_above"] = table.zero_above
    return out


def save(db: ProfileDb) -> str:
    """Serialize a database; ``load(save(db))`` reproduces ``db`` exactly."""
    spaces = {}
    for name in sorted(db.spaces):
        profile = db.spaces[name]
        obj: dict = {}
        if profile.betti is not None:
            obj["betti"] = list(profile.betti)
        flags = {
            key: getattr(profile.flags, key)
            for key in ("simply_connected", "finite", "g_space", "t_space")
            if getattr(profile.flags, key) is not None
        }
        if flags:
            obj["flags"] = flags
        if profile.suspension_shifts is not None:
            obj["suspension_shifts"] = list(profile.suspension_shifts)
        if not profile.gottlieb.is_empty:
            obj["gottlieb"] = _graded_to_json(profile.gottlieb)
        if profile.homotopy is not None:
            obj["homotopy"] = _graded_to_json(profile.homotopy)
        spaces[name] = obj
    maps = {}
    for name in sorted(db.maps):
        profile = db.maps[name]
        obj = {"source": profile.source, "target": profile.target}
        if profile.is_identity:
            obj["is_identity"] = True
        if not profile.relative_gottlieb.is_empty:
            obj["relative_gottlieb"] = _graded_to_json(profile.relative_gottlieb)
        maps[name] = obj
    return json.dumps({"spaces": spaces, "maps": maps}, indent=2, sort_keys=True)
