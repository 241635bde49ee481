"""Rational ranks of mapping spaces, flag propagation, and the loop test.

The rank (gamma) of the degree-n Gottlieb group of map(X, Y; 0) equals
the Betti-weighted sum of the target's ranks:

    gamma_n(map(X, Y; 0)) = sum over i = 0..dim X of b_i(X) * gamma_{n+i}(Y)

valid for finite X and finite simply connected Y.  Those hypotheses are
enforced through profile flags; passing ``unchecked=True`` skips the
check, and callers are expected to mark such output as unverified.

Because the mapping space retracts onto Y (restrict to the constant maps
and evaluate at the basepoint), "is a T-space" transfers both ways, and
"is a G-space" transfers both ways once the source suspension splits into
spheres; without a splitting only the backward direction survives, so a
G-space target gives an unknown rather than a claim.

``free_loop_necessary_condition`` checks the degreewise test that any
candidate free-loop-space model must pass: G_d(candidate) must equal
G_d(Y) + G_{d+1}(Y) on the requested degree window.
"""

from dataclasses import dataclass

from .abelian import AbelianGroup
from .profiles import GradedGroup, Incomplete, SpaceProfile
from .spaces import SpaceExpr
from .splitting import sphere_splitting

__all__ = [
    "HypothesisError",
    "LoopCheckVerdict",
    "PropagatedFlags",
    "RankProfile",
    "TopDegreeReport",
    "free_loop_necessary_condition",
    "gamma_of_map_space",
    "hypotheses_met",
    "propagate_flags",
    "top_degree_report",
]


class HypothesisError(ValueError):
    """A computation was requested whose validity hypotheses are not verified."""


@dataclass(frozen=True)
class RankProfile:
    """Ranks by degree, with the same bound semantics as a graded table."""

    gamma: dict[int, int]
    zero_above: int | None = None

    @classmethod
    def from_graded(cls, table: GradedGroup) -> "RankProfile":
        return cls({d: g.rank for d, g in table.entries.items()}, table.zero_above)

    def lookup(self, degree: int) -> int | None:
        if degree in self.gamma:
            return self.gamma[degree]
        if self.zero_above is not None and degree > self.zero_above:
            return 0
        return None


def hypotheses_met(x_profile: SpaceProfile, y_profile: SpaceProfile) -> bool:
    """True when the rank formula's hypotheses are affirmatively declared."""
    return (
        x_profile.flags.finite is True
        and y_profile.flags.finite is True
        and y_profile.flags.simply_connected is True
    )


def _require_hypotheses(x_profile: SpaceProfile, y_profile: SpaceProfile, unchecked: bool) -> None:
    if unchecked or hypotheses_met(x_profile, y_profile):
        return
    problems = []
    if x_profile.flags.finite is not True:
        problems.append(f"{x_profile.name!r} is not declared finite")
    if y_profile.flags.finite is not True:
        problems.append(f"{y_profile.name!r} is not declared finite")
    if y_profile.flags.simply_connected is not True:
        problems.append(f"{y_profile.name!r} is not declared simply connected")
    raise HypothesisError(
        "rank formula hypotheses not verified: " + "; ".join(problems)
    )


def gamma_of_map_space(
    x_profile: SpaceProfile,
    y_profile: SpaceProfile,
    degree: int,
    unchecked: bool = False,
) -> int | Incomplete:
    """Rank of the degree-``degree`` Gottlieb group of map(X, Y; 0).

    Needs the Betti vector of X and the ranks of Y on degrees
    ``degree .. degree + dim X``; unknown ranks anywhere in that window
    produce an Incomplete listing them.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    _require_hypotheses(x_profile, y_profile, unchecked)
    if x_profile.betti is None:
        raise HypothesisError(
            f"{x_profile.name!r} declares no Betti numbers; the rank formula needs them"
        )
    gamma = RankProfile.from_graded(y_profile.gottlieb)
    missing = []
    total = 0
    for i, b in enumerate(x_profile.betti):
        value = gamma.lookup(degree + i)
        if value is None:
            missing.append(f"gamma[{degree + i}]({y_profile.name})")
        else:
            total += b * value
    if missing:
        return Incomplete(tuple(missing), ())
    return total


@dataclass(frozen=True)
class TopDegreeReport:
    """Top positive-rank degree of the target and the rank there.

    ``degree`` is None when every rank below the bound is zero.  Whenever a
    top degree N exists, the mapping space has the same rank at N as the
    target does, which the computation asserts internally.
    """

    degree: int | None
    gamma_top: int | None

    @property
    def all_zero(self) -> bool:
        return self.degree is None


def top_degree_report(
    x_profile: SpaceProfile, y_profile: SpaceProfile, unchecked: bool = False
) -> TopDegreeReport | Incomplete:
    """Locate the last positive rank of Y and confirm the mapping space keeps it."""
    _require_hypotheses(x_profile, y_profile, unchecked)
    bound = y_profile.gottlieb.zero_above
    if bound is None:
        raise HypothesisError(
            f"{y_profile.name!r} declares no zero_above bound; the top degree is undefined"
        )
    gamma = RankProfile.from_graded(y_profile.gottlieb)
    missing = [f"gamma[{d}]({y_profile.name})" for d in range(1, bound + 1) if gamma.lookup(d) is None]
    if missing:
        return Incomplete(tuple(missing), ())
    top = None
    for d in range(1, bound + 1):
        if gamma.lookup(d) > 0:
            top = d
    if top is None:
        return TopDegreeReport(None, None)
    value = gamma_of_map_space(x_profile, y_profile, top, unchecked=unchecked)
    assert value == gamma.lookup(top), (
        f"rank at the top degree must survive to the mapping space, "
        f"got {value} != {gamma.lookup(top)}"
    )
    return TopDegreeReport(top, gamma.lookup(top))


@dataclass(frozen=True)
class PropagatedFlags:
    """Tri-state G-space / T-space conclusions for a mapping space."""

    g_space: bool | None
    t_space: bool | None


def propagate_flags(
    source: SpaceExpr, y_profile: SpaceProfile, atom_shifts=None
) -> PropagatedFlags:
    """Transfer T-space and G-space flags from the target to map(source, Y; 0).

    T-space transfers in both directions unconditionally.  G-space
    transfers forward only when the source suspension splits; backward it
    always transfers, so a target that is not a G-space rules the mapping
    space out even without a splitting.
    """
    t_space = y_profile.flags.t_space
    g_target = y_profile.flags.g_space
    if sphere_splitting(source, atom_shifts).splittable:
        g_space = g_target
    elif g_target is False:
        g_space = False
    else:
        g_space = None
    return PropagatedFlags(g_space=g_space, t_space=t_space)


@dataclass(frozen=True)
class LoopCheckVerdict:
    """Outcome of the free-loop necessary condition on a degree window."""

    status: str  # "pass", "fail", or "incomplete"
    failing_degree: int | None = None
    detail: str = ""
    missing: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def free_loop_necessary_condition(
    candidate: GradedGroup, base: GradedGroup, degrees
) -> LoopCheckVerdict:
    """Check G_d(candidate) = G_d(base) + G_{d+1}(base) across ``degrees``.

    Failing any degree disqualifies the candidate as a free loop space of
    the base.  The first definite mismatch wins; if no mismatch is found
    but some degrees could not be checked, the verdict is incomplete.
    """
    missing: list[str] = []
    for d in sorted(set(degrees)):
        if d < 1:
            raise ValueError(f"degree must be >= 1, got {d}")
        left = candidate.lookup(d)
        lower, upper = base.lookup(d), base.lookup(d + 1)
        unknown = []
        if left is None:
            unknown.append(f"candidate G[{d}]")
        if lower is None:
            unknown.append(f"base G[{d}]")
        if upper is None:
            unknown.append(f"base G[{d + 1}]")
        if unknown:
            missing.extend(unknown)
            continue
        expected = lower.direct_sum(upper)
        if left != expected:
            return LoopCheckVerdict(
                "fail",
                failing_degree=d,
                detail=f"degree {d}: candidate has {left}, a free loop space needs {expected}",
            )
    if missing:
        return LoopCheckVerdict("incomplete", missing=tuple(dict.fromkeys(missing)))
    return LoopCheckVerdict("pass")
