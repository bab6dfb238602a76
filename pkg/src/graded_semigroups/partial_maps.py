"""Partial bijections, pointed maps, and the symmetric inverse monoid.

The composition convention matches function composition: the product of f and
g acts as "apply g, then f", restricted to the points where that makes sense.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable

from .groups import GradeGroup, GroupElement
from .semigroups import FiniteSemigroup


class _ZeroPoint:
    """Distinguished zero point adjoined to carriers of pointed maps."""

    def __repr__(self):
        return "0."


ZERO_POINT = _ZeroPoint()


@dataclass(frozen=True)
class PartialBijection:
    """A bijection between two subsets of a set, stored as sorted pairs."""

    pairs: tuple

    @classmethod
    def from_dict(cls, mapping: dict) -> "PartialBijection":
        items = sorted(mapping.items(), key=lambda kv: repr(kv[0]))
        if len({v for _, v in items}) != len(items):
            raise ValueError("mapping is not injective")
        return cls(tuple(items))

    @property
    def mapping(self) -> dict:
        return dict(self.pairs)

    @property
    def domain(self) -> frozenset:
        return frozenset(k for k, _ in self.pairs)

    @property
    def image(self) -> frozenset:
        return frozenset(v for _, v in self.pairs)

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def __call__(self, x):
        return self.mapping[x]

    def compose(self, other: "PartialBijection") -> "PartialBijection":
        """self after other: defined where other lands inside self's domain."""
        mine = self.mapping
        out = {x: mine[y] for x, y in other.pairs if y in mine}
        return PartialBijection.from_dict(out)

    def inverse(self) -> "PartialBijection":
        return PartialBijection.from_dict({v: k for k, v in self.pairs})

    def __repr__(self):
        if self.is_empty:
            return "0"
        return "{" + ", ".join(f"{k!r}->{v!r}" for k, v in self.pairs) + "}"


def all_partial_bijections(points: list) -> list[PartialBijection]:
    """Every partial bijection of a finite set, the empty map included."""
    out = [PartialBijection(())]
    n = len(points)
    for k in range(1, n + 1):
        for dom in itertools.combinations(points, k):
            for img in itertools.combinations(points, k):
                for perm in itertools.permutations(img):
                    out.append(PartialBijection.from_dict(dict(zip(dom, perm))))
    return out


def symmetric_inverse_monoid(points: list) -> FiniteSemigroup:
    """The symmetric inverse monoid I(X) as a finite table backend.

    ``backend.values`` holds the actual partial bijections; the empty map is
    the zero element.
    """
    maps = all_partial_bijections(points)
    return FiniteSemigroup.from_elements(
        maps, lambda a, b: a.compose(b), PartialBijection(()),
        render=_render_partial(points))


def _render_partial(points: list):
    identity = PartialBijection.from_dict({p: p for p in points})

    def render(phi: PartialBijection) -> str:
        if phi.is_empty:
            return "0"
        if phi == identity:
            return "1"
        return "".join(f"[{k}>{v}]" for k, v in phi.pairs)

    return render


@dataclass(frozen=True)
class PointedMap:
    """A total map on a pointed set that fixes the zero point.

    Stored on the nonzero carrier only; values may be ``ZERO_POINT``.
    """

    pairs: tuple

    @classmethod
    def from_dict(cls, mapping: dict) -> "PointedMap":
        items = sorted(mapping.items(), key=lambda kv: repr(kv[0]))
        return cls(tuple(items))

    @property
    def mapping(self) -> dict:
        return dict(self.pairs)

    def __call__(self, x):
        if isinstance(x, _ZeroPoint):
            return ZERO_POINT
        return self.mapping[x]

    def compose(self, other: "PointedMap") -> "PointedMap":
        return PointedMap.from_dict({x: self(other(x)) for x, _ in other.pairs})

    @property
    def is_zero_map(self) -> bool:
        return all(isinstance(v, _ZeroPoint) for _, v in self.pairs)

    def __repr__(self):
        return "[" + ", ".join(f"{k!r}>{v!r}" for k, v in self.pairs) + "]"


class GradedSet:
    """A finite set with a degree map into a grade group (no zero point)."""

    def __init__(self, group: GradeGroup, degrees: dict):
        self.group = group
        self.degrees = {p: (d if isinstance(d, GroupElement) else group.element(d))
                        for p, d in degrees.items()}
        self.points = sorted(self.degrees, key=repr)

    def degree(self, p) -> GroupElement:
        return self.degrees[p]

    def component(self, alpha: GroupElement) -> list:
        return [p for p in self.points if self.degrees[p] == alpha]

    def component_sizes(self, bound: int = 0) -> dict:
        return {a: len(self.component(a)) for a in self.group.elements(bound)}


def homogeneous_degree(phi: PartialBijection, X: GradedSet) -> GroupElement | None:
    """The degree alpha with phi(dom_beta) inside X_{alpha beta}, if one exists.

    The empty map belongs to every component and gets no degree; a nonempty
    map is homogeneous iff deg(phi(x)) deg(x)^-1 is constant on its domain.
    """
    alpha: GroupElement | None = None
    for x, y in phi.pairs:
        cand = X.degree(y) * X.degree(x).inverse()
        if alpha is None:
            alpha = cand
        elif alpha != cand:
            return None
    return alpha


def graded_symmetric_inverse(X: GradedSet) -> FiniteSemigroup:
    """The inverse semigroup of degree-homogeneous partial bijections of X."""
    maps = [phi for phi in all_partial_bijections(X.points)
            if phi.is_empty or homogeneous_degree(phi, X) is not None]
    return FiniteSemigroup.from_elements(
        maps, lambda a, b: a.compose(b), PartialBijection(()),
        render=_render_partial(X.points))


def pointed_homogeneous_degree(psi: PointedMap, X: GradedSet) -> GroupElement | None:
    alpha: GroupElement | None = None
    for x, y in psi.pairs:
        if isinstance(y, _ZeroPoint):
            continue
        cand = X.degree(y) * X.degree(x).inverse()
        if alpha is None:
            alpha = cand
        elif alpha != cand:
            return None
    return alpha


def graded_pointed_maps(X: GradedSet) -> FiniteSemigroup:
    """Degree-homogeneous pointed total maps on X with a zero point adjoined."""
    targets = list(X.points) + [ZERO_POINT]
    maps = []
    for values in itertools.product(targets, repeat=len(X.points)):
        psi = PointedMap.from_dict(dict(zip(X.points, values)))
        if psi.is_zero_map or pointed_homogeneous_degree(psi, X) is not None:
            maps.append(psi)
    zero = PointedMap.from_dict({p: ZERO_POINT for p in X.points})
    return FiniteSemigroup.from_elements(
        maps, lambda a, b: a.compose(b), zero)
