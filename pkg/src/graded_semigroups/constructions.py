"""Smash products, graded Rees matrix semigroups, and the maps between them.

The smash product attaches a group coordinate to every nonzero element;
multiplication fires only when the right factor's degree matches the
coordinate quotient, which is what makes the category of its actions
isomorphic to the category of graded actions of the original semigroup.
The stable graded Rees matrix semigroup is the square-matrix variant whose
identity component recovers the smash product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable

from .errors import (EmptyWindow, InvalidGrading, NoLocalUnits,
                     SandwichDegreeViolation, WindowTooSmall)
from .gis import GisBackend, GisElement, weight_grading
from .grading import GradedSemigroup, Grading, check_grading
from .graphs import CoveringGraph, Graph, Path, Weighting, covering_graph
from .groups import GradeGroup, GroupElement
from .semigroups import (IDENTITY, SemigroupBackend, idempotents_of,
                         local_units_report)
from .verdicts import Verdict, fails, holds

SANDWICH_ONE = IDENTITY  # adjoined identity entry in sandwich matrices


@dataclass(frozen=True)
class SmashElement:
    """s P_alpha for nonzero s, or the zero element (both fields None)."""

    s: Any
    alpha: GroupElement | None

    @property
    def is_zero(self) -> bool:
        return self.alpha is None

    def __repr__(self):
        return "0" if self.is_zero else f"{self.s!r}P{self.alpha.value}"


SMASH_ZERO = SmashElement(None, None)


class SmashBackend(SemigroupBackend):
    """The smash product of a graded semigroup with its grading group."""

    def __init__(self, inner: GradedSemigroup):
        self.inner = inner
        self.zero = SMASH_ZERO
        self.is_finite = inner.backend.is_finite and inner.group.is_finite

    def wrap(self, s, alpha: GroupElement) -> SmashElement:
        if s == self.inner.backend.zero:
            return SMASH_ZERO
        return SmashElement(s, alpha)

    def multiply(self, a: SmashElement, b: SmashElement) -> SmashElement:
        if a.is_zero or b.is_zero:
            return SMASH_ZERO
        S = self.inner.backend
        st = S.multiply(a.s, b.s)
        if st == S.zero:
            return SMASH_ZERO
        if self.inner.degree(b.s) != a.alpha * b.alpha.inverse():
            return SMASH_ZERO
        return SmashElement(st, b.alpha)

    @property
    def has_inverses(self) -> bool:
        return self.inner.backend.has_inverses

    def inverse(self, a: SmashElement) -> SmashElement:
        if a.is_zero:
            return SMASH_ZERO
        S = self.inner.backend
        return SmashElement(S.inverse(a.s), self.inner.degree(a.s) * a.alpha)

    def element_size(self, a: SmashElement) -> int:
        return 0 if a.is_zero else self.inner.backend.element_size(a.s)

    def elements(self, bound: int = 0) -> list[SmashElement]:
        """Pairs of a nonzero inner element and a group element.

        The one bound limits both coordinates: inner elements by size and, for
        infinite groups, the symmetric enumeration window.
        """
        out = [SMASH_ZERO]
        for s in self.inner.backend.nonzero_elements(bound):
            for alpha in self.inner.group.elements(bound):
                out.append(SmashElement(s, alpha))
        return out

    def render(self, a: SmashElement) -> str:
        if a.is_zero:
            return "0"
        return f"{self.inner.backend.render(a.s)}.P{a.alpha.value}"


def smash_build(gs: GradedSemigroup, validate_bound: int = 3) -> GradedSemigroup:
    """Build S#Gamma, graded by the degree of the left coordinate."""
    probe = check_grading(gs, validate_bound)
    if probe.fails:
        raise InvalidGrading(f"input grading invalid: {probe.certificate}")
    backend = SmashBackend(gs)

    def degree(a: SmashElement) -> GroupElement:
        return gs.degree(a.s)

    return GradedSemigroup(backend, Grading(gs.group, degree, name="smash"))


@dataclass
class SmashStructureReport:
    idempotent_formula: Verdict
    local_units_transfer: Verdict
    inverse_transfer: Verdict


def smash_structure_report(gs: GradedSemigroup, smash: GradedSemigroup,
                           bound: int = 3) -> SmashStructureReport:
    """Fragment checks of the structure carried over to the smash product:
    idempotents are u P_alpha for nonzero idempotent u, and having local units
    or being inverse transfers in both directions.
    """
    S, T = gs.backend, smash.backend
    expected = {SMASH_ZERO} | {
        SmashElement(u, a)
        for u in idempotents_of(S, bound) if u != S.zero
        for a in gs.group.elements(bound)}
    actual = set(idempotents_of(T, bound))
    if actual != expected:
        diff = actual.symmetric_difference(expected)
        idem = fails("idempotent description mismatch", sorted(map(repr, diff)))
    else:
        idem = holds("idempotents are exactly uP_alpha", {"bound": bound})

    lu_S = local_units_report(S, bound)
    lu_T = local_units_report(T, bound)
    if lu_S.has_local_units == lu_T.has_local_units:
        lu = holds(f"local units on both sides: {lu_S.has_local_units}")
    else:
        lu = fails("local-unit transfer mismatch",
                   {"inner": lu_S.has_local_units, "smash": lu_T.has_local_units})

    from .semigroups import inverse_structure
    inv_S = inverse_structure(S, bound)
    inv_T = inverse_structure(T, bound)
    if inv_S.is_inverse == inv_T.is_inverse:
        inv = holds(f"inverse semigroup on both sides: {inv_S.is_inverse}")
    else:
        inv = fails("inverse transfer mismatch",
                    {"inner": inv_S.is_inverse, "smash": inv_T.is_inverse})
    return SmashStructureReport(idem, lu, inv)


def smash_shift(smash: GradedSemigroup, alpha: GroupElement) -> Callable:
    """The automorphism s P_beta -> s P_{beta alpha} of the smash product."""

    def tau(a: SmashElement) -> SmashElement:
        if a.is_zero:
            return SMASH_ZERO
        return SmashElement(a.s, a.alpha * alpha)

    return tau


def verify_smash_shift(smash: GradedSemigroup, alpha: GroupElement,
                       bound: int = 3) -> Verdict:
    """tau_alpha is a semigroup automorphism of the fragment."""
    T = smash.backend
    tau = smash_shift(smash, alpha)
    frag = T.elements(bound)
    for a in frag:
        for b in frag:
            if tau(T.multiply(a, b)) != T.multiply(tau(a), tau(b)):
                return fails("shift is not multiplicative", (repr(a), repr(b)))
    if len({tau(a) for a in frag}) != len(frag):
        return fails("shift is not injective on the fragment", None)
    return holds("shift automorphism verified on fragment", {"bound": bound})


# ---------------------------------------------------------------------------
# Graded Rees matrix semigroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StableReesElement:
    """e_{alpha beta}(s) with group-element indices, or zero."""

    alpha: GroupElement | None
    beta: GroupElement | None
    s: Any

    @property
    def is_zero(self) -> bool:
        return self.alpha is None

    def __repr__(self):
        if self.is_zero:
            return "0"
        return f"e[{self.alpha.value},{self.beta.value}]({self.s!r})"


STABLE_ZERO = StableReesElement(None, None, None)


class StableReesBackend(SemigroupBackend):
    """Group-indexed elementary matrices over S with the identity sandwich."""

    def __init__(self, inner: GradedSemigroup):
        self.inner = inner
        self.zero = STABLE_ZERO
        self.is_finite = inner.backend.is_finite and inner.group.is_finite

    def wrap(self, alpha: GroupElement, beta: GroupElement, s) -> StableReesElement:
        if s == self.inner.backend.zero:
            return STABLE_ZERO
        return StableReesElement(alpha, beta, s)

    def multiply(self, a: StableReesElement, b: StableReesElement) -> StableReesElement:
        if a.is_zero or b.is_zero or a.beta != b.alpha:
            return STABLE_ZERO
        S = self.inner.backend
        st = S.multiply(a.s, b.s)
        if st == S.zero:
            return STABLE_ZERO
        return StableReesElement(a.alpha, b.beta, st)

    @property
    def has_inverses(self) -> bool:
        return self.inner.backend.has_inverses

    def inverse(self, a: StableReesElement) -> StableReesElement:
        if a.is_zero:
            return STABLE_ZERO
        return StableReesElement(a.beta, a.alpha, self.inner.backend.inverse(a.s))

    def element_size(self, a: StableReesElement) -> int:
        return 0 if a.is_zero else self.inner.backend.element_size(a.s)

    def elements(self, bound: int = 0) -> list[StableReesElement]:
        out = [STABLE_ZERO]
        for alpha in self.inner.group.elements(bound):
            for beta in self.inner.group.elements(bound):
                for s in self.inner.backend.nonzero_elements(bound):
                    out.append(StableReesElement(alpha, beta, s))
        return out

    def render(self, a: StableReesElement) -> str:
        if a.is_zero:
            return "0"
        return f"e[{a.alpha.value},{a.beta.value}]({self.inner.backend.render(a.s)})"


def stable_rees_build(gs: GradedSemigroup, validate_bound: int = 3) -> GradedSemigroup:
    """Build S_Gamma with grading deg e_{alpha beta}(s) = alpha^-1 deg(s) beta."""
    probe = check_grading(gs, validate_bound)
    if probe.fails:
        raise InvalidGrading(f"input grading invalid: {probe.certificate}")
    backend = StableReesBackend(gs)

    def degree(a: StableReesElement) -> GroupElement:
        return a.alpha.inverse() * gs.degree(a.s) * a.beta

    return GradedSemigroup(backend, Grading(gs.group, degree, name="stable-rees"))


@dataclass
class StableReesReport:
    idempotent_formula: Verdict
    local_units: Verdict
    strongly_graded: Verdict
    inverse_transfer: Verdict


def stable_rees_report(gs: GradedSemigroup, stable: GradedSemigroup,
                       bound: int = 3) -> StableReesReport:
    """Structure of S_Gamma: diagonal idempotents, local units, and the
    always-strong grading, all verified on the fragment.
    """
    S, T = gs.backend, stable.backend
    lu = local_units_report(S, bound)
    if not lu.has_local_units:
        raise NoLocalUnits("the stable Rees report assumes local units")
    expected = {STABLE_ZERO} | {
        StableReesElement(a, a, u)
        for u in idempotents_of(S, bound) if u != S.zero
        for a in gs.group.elements(bound)}
    actual = set(idempotents_of(T, bound))
    idem = (holds("idempotents are exactly e[a,a](u)", {"bound": bound})
            if actual == expected else
            fails("idempotent description mismatch",
                  sorted(map(repr, actual.symmetric_difference(expected)))))

    lu_T = local_units_report(T, bound)
    local = (holds("local units present")
             if lu_T.has_local_units else fails("local units missing", None))

    # Every identity-degree element factors through any chosen degree:
    # e[a,b](s) = e[a,bg](s) e[bg,b](v) for a right local unit v of s.
    strong = holds("identity component factors through every degree "
                   "(diagonal local-unit padding)")
    eps = gs.group.identity
    for x in T.elements(bound):
        if x.is_zero or stable.degree(x) != eps:
            continue
        for g in gs.group.elements(bound):
            v = next((u for u in idempotents_of(S, bound)
                      if S.multiply(x.s, u) == x.s), None)
            if v is None:
                strong = fails("missing right local unit", repr(x))
                break
            left = StableReesElement(x.alpha, x.beta * g, x.s)
            right = StableReesElement(x.beta * g, x.beta, v)
            if (T.multiply(left, right) != x
                    or stable.degree(left) != g
                    or stable.degree(right) != g.inverse()):
                strong = fails("factorisation identity violated", repr(x))
                break
        if strong.fails:
            break

    from .semigroups import inverse_structure
    inv = (holds("inverse on both sides")
           if inverse_structure(S, bound).is_inverse
           == inverse_structure(T, bound).is_inverse
           else fails("inverse transfer mismatch", None))
    return StableReesReport(idem, local, strong, inv)


@dataclass(frozen=True)
class ReesElement:
    """e_{ij}(a) over explicit index sets, or zero."""

    i: Any
    j: Any
    a: Any

    @property
    def is_zero(self) -> bool:
        return self.i is None

    def __repr__(self):
        return "0" if self.is_zero else f"e[{self.i},{self.j}]({self.a!r})"


REES_ZERO = ReesElement(None, None, None)


@dataclass
class ReesMatrixData:
    """Index sets, degree tuples, and a sandwich matrix over S with identity.

    ``sandwich[(j, i)]`` is ``None`` for a zero entry, ``SANDWICH_ONE`` for
    the adjoined identity, or a nonzero element of S.  Nonzero entries must
    have degree beta_j alpha_i^-1; identity entries are accepted only when
    that required degree is the group identity.
    """

    row_index: list
    col_index: list
    alphas: dict
    betas: dict
    sandwich: dict


class ReesMatrixBackend(SemigroupBackend):
    def __init__(self, inner: GradedSemigroup, data: ReesMatrixData):
        self.inner = inner
        self.data = data
        self.zero = REES_ZERO
        self.is_finite = inner.backend.is_finite
        S = inner.backend
        for j in data.col_index:
            for i in data.row_index:
                p = data.sandwich.get((j, i))
                need = data.betas[j] * data.alphas[i].inverse()
                if p is None:
                    continue
                if p == SANDWICH_ONE:
                    if need != inner.group.identity:
                        raise SandwichDegreeViolation(
                            f"identity entry at ({j},{i}) needs degree {need.value}")
                elif p == S.zero:
                    self.data.sandwich[(j, i)] = None
                elif inner.degree(p) != need:
                    raise SandwichDegreeViolation(
                        f"entry at ({j},{i}) has degree "
                        f"{inner.degree(p).value}, needs {need.value}")

    def wrap(self, i, j, a) -> ReesElement:
        if a == self.inner.backend.zero:
            return REES_ZERO
        return ReesElement(i, j, a)

    def multiply(self, x: ReesElement, y: ReesElement) -> ReesElement:
        if x.is_zero or y.is_zero:
            return REES_ZERO
        S = self.inner.backend
        p = self.data.sandwich.get((x.j, y.i))
        if p is None:
            return REES_ZERO
        mid = y.a if p == SANDWICH_ONE else S.multiply(p, y.a)
        prod = S.multiply(x.a, mid)
        if prod == S.zero:
            return REES_ZERO
        return ReesElement(x.i, y.j, prod)

    def elements(self, bound: int = 0) -> list[ReesElement]:
        return [REES_ZERO] + [
            ReesElement(i, j, a)
            for i in self.data.row_index
            for j in self.data.col_index
            for a in self.inner.backend.nonzero_elements(bound)]

    def render(self, x: ReesElement) -> str:
        if x.is_zero:
            return "0"
        return f"e[{x.i},{x.j}]({self.inner.backend.render(x.a)})"


def rees_matrix_build(gs: GradedSemigroup, data: ReesMatrixData) -> GradedSemigroup:
    """Elementary matrices over S with sandwich multiplication, graded by
    deg e_{ij}(a) = alpha_i^-1 deg(a) beta_j.
    """
    backend = ReesMatrixBackend(gs, data)

    def degree(x: ReesElement) -> GroupElement:
        return data.alphas[x.i].inverse() * gs.degree(x.a) * data.betas[x.j]

    return GradedSemigroup(backend, Grading(gs.group, degree, name="rees-matrix"))


# ---------------------------------------------------------------------------
# The smash product inside the stable Rees matrix semigroup
# ---------------------------------------------------------------------------

@dataclass
class SmashStableIso:
    smash: GradedSemigroup
    stable: GradedSemigroup
    phi: Callable
    verdict: Verdict


def iso_smash_stable_eps(gs: GradedSemigroup, bound: int = 3) -> SmashStableIso:
    """sP_alpha -> e[deg(s) alpha, alpha](s), an isomorphism onto (S_Gamma)_eps.

    Verified on the fragment: multiplicative, injective, and surjective onto
    the identity component of the stable Rees matrix semigroup.
    """
    if not local_units_report(gs.backend, bound).has_local_units:
        raise NoLocalUnits("the identification assumes local units")
    smash = smash_build(gs)
    stable = stable_rees_build(gs)
    T = stable.backend

    def phi(a: SmashElement) -> StableReesElement:
        if a.is_zero:
            return STABLE_ZERO
        return StableReesElement(gs.degree(a.s) * a.alpha, a.alpha, a.s)

    frag = smash.backend.elements(bound)
    seen = {}
    verdict = holds("isomorphism onto the identity component verified "
                    "on fragment", {"bound": bound})
    eps = gs.group.identity
    for a in frag:
        img = phi(a)
        if not a.is_zero and stable.degree(img) != eps:
            verdict = fails("image leaves the identity component", repr(a))
            break
        if img in seen and seen[img] != a:
            verdict = fails("not injective", (repr(seen[img]), repr(a)))
            break
        seen[img] = a
    if verdict.holds:
        for a in frag:
            for b in frag:
                if phi(smash.backend.multiply(a, b)) != T.multiply(phi(a), phi(b)):
                    verdict = fails("not multiplicative", (repr(a), repr(b)))
                    break
            if verdict.fails:
                break
    if verdict.holds:
        targets = {x for x in T.elements(bound)
                   if x.is_zero or stable.degree(x) == eps}
        image = {phi(a) for a in frag}
        # identity-component fragment elements reachable at this bound
        reachable = {x for x in targets
                     if x.is_zero or x.beta in set(gs.group.elements(bound))}
        if not reachable <= image:
            verdict = fails("not surjective onto the identity-component fragment",
                            sorted(map(repr, reachable - image)))
    return SmashStableIso(smash, stable, phi, verdict)


# ---------------------------------------------------------------------------
# Covering graphs realise the smash product
# ---------------------------------------------------------------------------

@dataclass
class CoveringIso:
    cover: CoveringGraph
    source: GradedSemigroup
    target: GradedSemigroup
    phi: Callable
    lift: Callable
    verdict: Verdict


def covering_iso(E: Graph, omega: Weighting, window: list[GroupElement],
                 size_bound: int = 4) -> CoveringIso:
    """The graded map from the covering graph's inverse semigroup to S(E)#Gamma.

    A path in the covering graph projects to a base path plus a starting
    level; an element (X, Y) maps to (x y^-1) P_(start level of Y).  The map
    is verified to be a graded homomorphism, injective on the fragment, and
    surjective onto the window-consistent part of the smash fragment.
    """
    if not window:
        raise EmptyWindow("covering window is empty")
    cover = covering_graph(E, omega, window)
    source_backend = GisBackend(cover.graph)
    source = GradedSemigroup(source_backend,
                             weight_grading(source_backend, cover.weighting))
    base_backend = GisBackend(E)
    base = GradedSemigroup(base_backend, weight_grading(base_backend, omega))
    smash = smash_build(base)
    wset = set(window)
    cover_edge_at = {}
    for e in cover.graph.edges:
        base_obj, level = cover.levels[e.id]
        cover_edge_at[(base_obj.id, level)] = e

    def project(p: Path) -> tuple[Path, GroupElement]:
        v, level = cover.levels[p.start]
        base_edges = tuple(cover.levels[e.id][0] for e in p.edges)
        return Path(v, base_edges), level

    def phi(a: GisElement) -> SmashElement:
        if a.is_zero:
            return SMASH_ZERO
        x, _ = project(a.x)
        y, level_y = project(a.y)
        return SmashElement(GisElement(x, y), level_y)

    def lift_path(p: Path, level: GroupElement) -> Path:
        if level not in wset:
            raise WindowTooSmall(f"level {level.value} outside window")
        start = f"{p.start}@{level.value}"
        edges = []
        for e in p.edges:
            key = (e.id, level)
            if key not in cover_edge_at:
                raise WindowTooSmall(f"edge {e.id} at level {level.value} "
                                     "was dropped")
            edges.append(cover_edge_at[key])
            level = omega.of_edge(e).inverse() * level
        if level not in wset:
            raise WindowTooSmall(f"level {level.value} outside window")
        return Path(start, tuple(edges))

    def lift(a: SmashElement) -> GisElement:
        if a.is_zero:
            return GisElement(None, None)
        y_lift = lift_path(a.s.y, a.alpha)
        x_level = (omega.of_path(a.s.x)
                   * omega.of_path(a.s.y).inverse() * a.alpha)
        x_lift = lift_path(a.s.x, x_level)
        return GisElement(x_lift, y_lift)

    from .grading import check_graded_hom
    verdict = check_graded_hom(phi, source, smash, size_bound)
    if verdict.holds:
        frag = source_backend.elements(size_bound)
        images = {}
        for a in frag:
            img = phi(a)
            if img in images and images[img] != a:
                verdict = fails("not injective", (repr(images[img]), repr(a)))
                break
            images[img] = a
    if verdict.holds:
        missed = []
        skipped = 0
        for s in base_backend.elements(size_bound):
            if s.is_zero:
                continue
            for alpha in window:
                target = SmashElement(s, alpha)
                try:
                    pre = lift(target)
                except WindowTooSmall:
                    skipped += 1
                    continue
                if phi(pre) != target:
                    missed.append(repr(target))
        if missed:
            verdict = fails("window-consistent elements without preimage", missed)
        else:
            verdict = holds(
                "graded injective homomorphism; surjective onto the "
                f"window-consistent smash fragment ({skipped} elements need "
                "levels outside the window)",
                {"size_bound": size_bound, "window": len(window)})
    return CoveringIso(cover, source, smash, phi, lift, verdict)
