"""Gradings on semigroup backends and the grading-property deciders.

A grading assigns a group element to every nonzero semigroup element so that
degrees multiply along nonzero products.  The deciders below are exact for
finite backends (even over the integers, where a finite support forces the
answer), and tri-state on symbolic backends: a bounded search never certifies
failure of a universally quantified property, so such verdicts are either
theorem-backed (see :mod:`.gis`) or ``Unknown``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .errors import GroupNotTorsionFreeAbelian, InfiniteBackend, NotInverse
from .groups import (CyclicGroup, GradeGroup, GroupElement, IntegerGroup,
                     ProductGroup, TableGroup)
from .semigroups import (SemigroupBackend, SubSemigroup, green_classes,
                         ideals, idempotents_of, inverse_structure,
                         local_units_report, natural_leq)
from .verdicts import Verdict, fails, holds, unknown


class Grading:
    """A degree map on the nonzero elements of a backend."""

    def __init__(self, group: GradeGroup, degree: Callable, name: str = ""):
        self.group = group
        self._degree = degree
        self.name = name

    @classmethod
    def from_table(cls, group: GradeGroup, degrees: dict, name: str = "table"):
        table = {s: (d if isinstance(d, GroupElement) else group.element(d))
                 for s, d in degrees.items()}
        return cls(group, table.__getitem__, name)

    @classmethod
    def trivial(cls, group: GradeGroup):
        return cls(group, lambda s: group.identity, name="trivial")

    def degree(self, s) -> GroupElement:
        return self._degree(s)


class GradedSemigroup:
    """A backend together with a grading; the pair most operations act on."""

    def __init__(self, backend: SemigroupBackend, grading: Grading):
        self.backend = backend
        self.grading = grading

    @property
    def group(self) -> GradeGroup:
        return self.grading.group

    def degree(self, s) -> GroupElement:
        return self.grading.degree(s)

    def component(self, alpha: GroupElement, bound: int = 0) -> frozenset:
        """The degree-alpha component, always containing zero."""
        part = {s for s in self.backend.nonzero_elements(bound)
                if self.degree(s) == alpha}
        part.add(self.backend.zero)
        return frozenset(part)

    def support(self, bound: int = 0) -> set[GroupElement]:
        return {self.degree(s) for s in self.backend.nonzero_elements(bound)}

    def epsilon_part(self) -> SubSemigroup:
        """The identity component as a sub-backend (closed: degrees multiply)."""
        if not self.backend.is_finite:
            raise InfiniteBackend("epsilon component needs a finite backend")
        return SubSemigroup(self.backend, self.component(self.group.identity))


def trivially_graded(backend: SemigroupBackend, group: GradeGroup) -> GradedSemigroup:
    return GradedSemigroup(backend, Grading.trivial(group))


# ---------------------------------------------------------------------------
# Grading validity
# ---------------------------------------------------------------------------

def check_grading(gs: GradedSemigroup, bound: int = 0) -> Verdict:
    """Degrees multiply along nonzero products on the enumerated fragment.

    Also checks that idempotents sit in the identity component and, when the
    backend has inverses, that inversion inverts degrees.
    """
    S = gs.backend
    elems = S.nonzero_elements(bound)
    bounds = {"element_bound": bound}
    for s in elems:
        for t in elems:
            st = S.multiply(s, t)
            if st == S.zero:
                continue
            if gs.degree(st) != gs.degree(s) * gs.degree(t):
                return fails("degree not multiplicative",
                             (S.render(s), S.render(t)), bounds)
    for e in elems:
        if S.multiply(e, e) == e and gs.degree(e) != gs.group.identity:
            return fails("idempotent of nonidentity degree", S.render(e), bounds)
    if S.has_inverses:
        for s in elems:
            if gs.degree(S.inverse(s)) != gs.degree(s).inverse():
                return fails("inverse degree mismatch", S.render(s), bounds)
    return holds("grading law verified on fragment" if not S.is_finite
                 else "grading law verified exhaustively", bounds)


@dataclass
class ComponentReport:
    components: dict
    support: list


def components_and_support(gs: GradedSemigroup, bound: int = 0,
                           group_bound: int = 8) -> ComponentReport:
    support = gs.support(bound)
    degrees = {a for a in gs.group.elements(group_bound)} | support
    comps = {a: gs.component(a, bound) for a in sorted(degrees, key=repr)}
    return ComponentReport(comps, sorted(support, key=repr))


# ---------------------------------------------------------------------------
# Strongly graded
# ---------------------------------------------------------------------------

def _escape_degree(group: GradeGroup, support: set[GroupElement]) -> GroupElement:
    """Some group element outside the (finite) support of an infinite group."""
    if isinstance(group, IntegerGroup):
        m = max((abs(a.value) for a in support), default=0)
        return group.element(m + 1)
    if isinstance(group, ProductGroup):
        for i, f in enumerate(group.factors):
            if not f.is_finite:
                m = max((abs(a.value[i]) for a in support), default=0)
                value = list(group.identity.value)
                value[i] = m + 1
                return group.element(tuple(value))
    raise InfiniteBackend(f"no escape degree for {group}")


def is_strongly_graded(gs: GradedSemigroup, element_bound: int = 0,
                       witness_bound: int = 0, group_bound: int = 4) -> Verdict:
    """Decide S_alpha S_beta = S_{alpha beta} for all alpha, beta.

    Exact for finite backends: over a finite group by exhausting all pairs of
    components, over an infinite group by the support argument (a nonzero
    finite semigroup always has a product pair landing in an empty component).
    Symbolic backends get a bounded factorisation probe and ``Unknown``.
    """
    S = gs.backend
    G = gs.group
    if S.is_finite:
        supp = gs.support()
        if not supp:
            return holds("degenerate semigroup {0}: strongly graded vacuously")
        if G.is_finite:
            comps = {a: gs.component(a) for a in G.elements()}
            for a, b in itertools.product(G.elements(), repeat=2):
                prods = {S.zero}
                for x in comps[a] - {S.zero}:
                    for y in comps[b] - {S.zero}:
                        prods.add(S.multiply(x, y))
                if prods != comps[a * b]:
                    missing = next(iter(comps[a * b] - prods))
                    return fails(
                        "component product mismatch",
                        {"alpha": a.value, "beta": b.value,
                         "missing": S.render(missing)})
            return holds("all component products verified exhaustively")
        # Infinite group, finite nonzero semigroup: scan a window around the
        # support for a natural witness, else exhibit an empty component pair.
        window = set(supp)
        window |= {a * b for a in supp for b in supp}
        window |= {a * b.inverse() for a in supp for b in supp}
        window.add(G.identity)
        for a, b in itertools.product(sorted(window, key=repr), repeat=2):
            ca, cb, cab = gs.component(a), gs.component(b), gs.component(a * b)
            prods = {S.zero}
            for x in ca - {S.zero}:
                for y in cb - {S.zero}:
                    prods.add(S.multiply(x, y))
            if prods != cab:
                missing = next(iter(cab - prods))
                return fails("component product mismatch",
                             {"alpha": a.value, "beta": b.value,
                              "missing": S.render(missing)})
        gamma = next(iter(supp))
        a = _escape_degree(G, supp)
        b = a.inverse() * gamma
        s = next(iter(gs.component(gamma) - {S.zero}))
        return fails(
            "infinite grading group, finite support: empty component pair",
            {"alpha": a.value, "beta": b.value, "missing": S.render(s)})
    # Symbolic backend: bounded probe only.
    bounds = {"element_bound": element_bound, "witness_bound": witness_bound,
              "group_bound": group_bound}
    frag = S.nonzero_elements(element_bound)
    pool = S.nonzero_elements(witness_bound)
    unmatched = []
    for s in frag:
        a = gs.degree(s)
        factored = any(
            S.multiply(x, y) == s
            for x in pool for y in pool
            if gs.degree(x) * gs.degree(y) == a)
        if not factored:
            unmatched.append(S.render(s))
    note = ("no obstruction found within bounds" if not unmatched
            else f"{len(unmatched)} fragment elements without factorisations in bounds")
    return unknown(note, bounds)


def strongly_graded_characterizations(gs: GradedSemigroup) -> dict[str, bool]:
    """All equivalent forms of "strongly graded" for a finite inverse backend.

    Returns one boolean per characterisation: the component-product
    definition, identity-component factorisation, local-unit coverage, the
    two idempotent-factorisation forms, and the two Green's-relation forms.
    """
    S = gs.backend
    G = gs.group
    if not (S.is_finite and G.is_finite):
        raise InfiniteBackend("characterisation report is exact only")
    comps = {a: gs.component(a) for a in G.elements()}
    zero = S.zero

    def prods(a, b):
        out = {zero}
        for x in comps[a] - {zero}:
            for y in comps[b] - {zero}:
                out.add(S.multiply(x, y))
        return out

    direct = all(prods(a, b) == comps[a * b]
                 for a in G.elements() for b in G.elements())
    eps = G.identity
    identity_factor = all(prods(a, a.inverse()) == comps[eps] for a in G.elements())
    idems = idempotents_of(S)
    local_units = all(idems <= prods(a, a.inverse()) for a in G.elements())
    out = {"definition": direct, "identity_component": identity_factor,
           "local_unit_coverage": local_units}
    if S.has_inverses:
        nonzero_idems = idems - {zero}
        for tag, pick in (("range_idempotents", lambda s: S.multiply(s, S.inverse(s))),
                          ("domain_idempotents", lambda s: S.multiply(S.inverse(s), s))):
            out[tag] = all(
                {pick(s) for s in comps[a] - {zero}} | {zero} == idems | {zero}
                for a in G.elements())
        green = green_classes(S)

        def same_class(partition, s, t):
            return any(s in block and t in block for block in partition)

        out["L_reachability"] = all(
            any(same_class(green.L, u, s) for s in comps[a] - {zero})
            for u in nonzero_idems for a in G.elements())
        out["R_reachability"] = all(
            any(same_class(green.R, u, s) for s in comps[a] - {zero})
            for u in nonzero_idems for a in G.elements())
    return out


# ---------------------------------------------------------------------------
# Locally strongly / saturated strongly graded
# ---------------------------------------------------------------------------

def range_idempotents(gs: GradedSemigroup, alpha: GroupElement,
                      bound: int = 0) -> set:
    """E(S)_alpha: range idempotents s s^-1 of degree-alpha elements."""
    S = gs.backend
    return {S.multiply(s, S.inverse(s))
            for s in gs.component(alpha, bound) - {S.zero}}


def is_locally_strongly_graded(gs: GradedSemigroup, element_bound: int = 0,
                               witness_bound: int = 0,
                               group_bound: int = 4) -> Verdict:
    """Every nonzero idempotent dominates a nonzero range idempotent of each degree.

    Exact for finite backends; bounded and tri-state otherwise.  Graph inverse
    semigroups have a dedicated exact decider in :mod:`.gis`.
    """
    S = gs.backend
    if not S.has_inverses:
        raise NotInverse("locally strongly graded is defined for inverse backends")
    G = gs.group
    if S.is_finite:
        nonzero_idems = idempotents_of(S) - {S.zero}
        if not nonzero_idems:
            return holds("degenerate semigroup {0}: locally strongly graded vacuously")
        if G.is_finite:
            for u in sorted(nonzero_idems, key=repr):
                for a in G.elements():
                    if not any(v != S.zero and natural_leq(S, v, u)
                               for v in range_idempotents(gs, a)):
                        return fails("idempotent with no minorant of required degree",
                                     {"u": S.render(u), "alpha": a.value})
            return holds("all idempotent/degree pairs verified exhaustively")
        supp = gs.support()
        a = _escape_degree(G, supp)
        u = next(iter(sorted(nonzero_idems, key=repr)))
        return fails("infinite grading group, finite support: empty component",
                     {"u": S.render(u), "alpha": a.value})
    bounds = {"element_bound": element_bound, "witness_bound": witness_bound,
              "group_bound": group_bound}
    frag_idems = [e for e in idempotents_of(S, element_bound) if e != S.zero]
    missing = 0
    for u in frag_idems:
        for a in G.elements(group_bound):
            found = any(
                v != S.zero and natural_leq(S, v, u)
                for v in range_idempotents(gs, a, witness_bound))
            if not found:
                missing += 1
    note = ("no obstruction found within bounds" if missing == 0
            else f"{missing} idempotent/degree pairs unmatched within bounds")
    return unknown(note, bounds)


def maximal_idempotents(S: SemigroupBackend, bound: int = 0) -> list:
    idems = [e for e in idempotents_of(S, bound) if e != S.zero]
    return [u for u in idems
            if not any(v != u and natural_leq(S, u, v) for v in idems)]


def is_saturated_strongly_graded(gs: GradedSemigroup, chain_bound: int = 6) -> Verdict:
    """Saturation along infinite descending idempotent chains.

    Finite backends hold vacuously (no infinite strictly descending chains).
    Graph inverse semigroups under the natural integer grading delegate to the
    exact path-condition decider; other symbolic backends stay ``Unknown``.
    """
    S = gs.backend
    if not S.has_inverses:
        raise NotInverse("saturated strongly graded is defined for inverse backends")
    if S.is_finite:
        return holds("finite backend: no infinite strictly descending chains")
    if gs.grading.name == "natural-Z" and hasattr(S, "graph"):
        from .graphs import condition_y
        v = condition_y(S.graph, "exact")
        v.certificate = f"via path-length condition on the graph: {v.certificate}"
        return v
    return unknown("bounded chain exploration is inconclusive on this backend",
                   {"chain_bound": chain_bound})


# ---------------------------------------------------------------------------
# Veronese subsemigroups
# ---------------------------------------------------------------------------

class _FilteredBackend(SemigroupBackend):
    """Restriction of a backend to a degree-defined, product-closed subset."""

    def __init__(self, parent: SemigroupBackend, keep: Callable):
        self.parent = parent
        self.keep = keep
        self.zero = parent.zero
        self.is_finite = parent.is_finite

    def multiply(self, a, b):
        return self.parent.multiply(a, b)

    def elements(self, bound: int = 0):
        return [s for s in self.parent.elements(bound)
                if s == self.zero or self.keep(s)]

    @property
    def has_inverses(self):
        return self.parent.has_inverses

    def inverse(self, a):
        return self.parent.inverse(a)

    def element_size(self, a):
        return self.parent.element_size(a)

    def render(self, a):
        return self.parent.render(a)


def _divisible(group: GradeGroup, value, n: int) -> bool:
    if isinstance(group, IntegerGroup):
        return value % abs(n) == 0
    if isinstance(group, ProductGroup):
        return all(_divisible(f, v, n) for f, v in zip(group.factors, value))
    return True  # trivial factor


def _divide(group: GradeGroup, value, n: int):
    if isinstance(group, IntegerGroup):
        return value // n
    if isinstance(group, ProductGroup):
        return tuple(_divide(f, v, n) for f, v in zip(group.factors, value))
    return value


def veronese(gs: GradedSemigroup, n: int) -> GradedSemigroup:
    """The n-th Veronese subsemigroup: keep degrees in n*Gamma and divide by n.

    Negative n flips the components; n = 0 is rejected since all components
    would coincide.  Requires a torsion-free abelian grading group.
    """
    G = gs.group
    if not G.is_torsion_free_abelian:
        raise GroupNotTorsionFreeAbelian(f"{G} is not torsion-free abelian")
    if n == 0:
        raise ValueError("the 0-th Veronese semigroup is not graded")
    ok = (isinstance(G, IntegerGroup)
          or isinstance(G, (CyclicGroup, TableGroup))
          or (isinstance(G, ProductGroup)
              and all(isinstance(f, IntegerGroup) or f.is_finite
                      for f in G.factors)))
    if not ok:
        raise GroupNotTorsionFreeAbelian(f"unsupported group shape {G}")

    def keep(s):
        return _divisible(G, gs.degree(s).value, n)

    backend = _FilteredBackend(gs.backend, keep)

    def degree(s):
        return G.element(_divide(G, gs.degree(s).value, n))

    return GradedSemigroup(backend, Grading(G, degree, name=f"veronese({n})"))


# ---------------------------------------------------------------------------
# Identity-component transfer
# ---------------------------------------------------------------------------

def is_zero_e_unitary(S: SemigroupBackend) -> tuple[bool, tuple | None]:
    """Nonzero idempotents below an element force it to be idempotent."""
    if not S.has_inverses:
        raise NotInverse("0-E-unitary is defined for inverse backends")
    idems = idempotents_of(S)
    for s in S.nonzero_elements():
        if s in idems:
            continue
        for u in idems:
            if u != S.zero and natural_leq(S, u, s):
                return False, (u, s)
    return True, None


@dataclass
class EpsilonTransferReport:
    epsilon_part: SubSemigroup
    zero_e_unitary_S: bool | None
    zero_e_unitary_eps: bool | None
    zero_e_unitary_agree: bool | None
    strongly_graded: Verdict
    regular_transfer: bool | None
    inverse_transfer: bool | None
    left_ideal_bijection: bool | None
    right_ideal_bijection: bool | None
    two_sided_counts: tuple[int, int] | None


def epsilon_transfer_report(gs: GradedSemigroup, group_bound: int = 4) -> EpsilonTransferReport:
    """How much of the structure of S is visible in its identity component.

    Checks 0-E-unitarity agreement, regular/inverse transfer for strongly
    graded backends with local units, and the one-sided ideal bijection
    I -> I intersect S_eps for regular backends.  Exact; finite backends only.
    """
    S = gs.backend
    if not S.is_finite:
        raise InfiniteBackend("exact transfer report needs a finite backend")
    eps = gs.epsilon_part()
    strong = is_strongly_graded(gs, group_bound=group_bound)
    structure = inverse_structure(S)
    structure_eps = inverse_structure(eps)

    zeu_S = zeu_eps = agree = None
    if S.has_inverses:
        zeu_S, _ = is_zero_e_unitary(S)
        zeu_eps, _ = is_zero_e_unitary(SubFiniteView(eps))
        agree = zeu_S == zeu_eps

    regular_transfer = inverse_transfer = None
    if strong.holds and local_units_report(S).has_local_units:
        regular_transfer = structure.is_regular == structure_eps.is_regular
        inverse_transfer = structure.is_inverse == structure_eps.is_inverse

    left_bij = right_bij = None
    counts = None
    if structure.is_regular:
        left_bij = _ideal_bijection(S, eps, "left")
        right_bij = _ideal_bijection(S, eps, "right")
        n_S = len([i for i in ideals(S, "two_sided")
                   if i != frozenset({S.zero}) and len(i) < len(S.elements())])
        n_eps = len([i for i in ideals(eps, "two_sided")
                     if i != frozenset({S.zero}) and len(i) < len(eps.elements())])
        counts = (n_S, n_eps)
    return EpsilonTransferReport(eps, zeu_S, zeu_eps, agree, strong,
                                 regular_transfer, inverse_transfer,
                                 left_bij, right_bij, counts)


class SubFiniteView(SemigroupBackend):
    """Finite view of a sub-backend so inverse-based checks stay inside it."""

    def __init__(self, sub: SubSemigroup):
        self.sub = sub
        self.zero = sub.zero
        self.is_finite = True

    def multiply(self, a, b):
        return self.sub.multiply(a, b)

    def elements(self, bound: int = 0):
        return self.sub.elements(bound)

    @property
    def has_inverses(self):
        # inverses inside the subset: s in S_eps has s^-1 in S_eps
        return self.sub.has_inverses

    def inverse(self, a):
        out = self.sub.inverse(a)
        if out not in self.sub.allowed:
            raise NotInverse("inverse leaves the sub-backend")
        return out

    def render(self, a):
        return self.sub.render(a)


def _ideal_bijection(S: SemigroupBackend, eps: SubSemigroup, kind: str) -> bool:
    whole = ideals(S, kind)
    part = ideals(SubFiniteView(eps), kind)
    images = [frozenset(i & eps.allowed) for i in whole]
    return (len(set(images)) == len(whole)
            and set(images) == set(part))


# ---------------------------------------------------------------------------
# Graded Green's relations
# ---------------------------------------------------------------------------

@dataclass
class GradedGreenClasses:
    L: list[frozenset]
    R: list[frozenset]
    H: list[frozenset]
    D: list[frozenset]
    J: list[frozenset]
    lemma_check: Verdict


def graded_green(gs: GradedSemigroup) -> GradedGreenClasses:
    """Green's partitions refined by degree, plus the graded Green's lemma.

    The lemma check: whenever s R t via su = t and tu' = s, right translation
    by u maps the degree-alpha slice of L_s onto the slice of L_t of degree
    alpha * deg(s)^-1 deg(t), bijectively.
    """
    S = gs.backend
    if not S.is_finite:
        raise InfiniteBackend("graded Green's relations need a finite backend")
    green = green_classes(S)
    zero = S.zero

    def refine(partition):
        out = []
        for block in partition:
            slices: dict = {}
            for s in block:
                key = None if s == zero else gs.degree(s)
                slices.setdefault(key, set()).add(s)
            out.extend(frozenset(v) for v in slices.values())
        return out

    lemma = _graded_green_lemma(gs, green)
    return GradedGreenClasses(refine(green.L), refine(green.R), refine(green.H),
                              refine(green.D), refine(green.J), lemma)


def _graded_green_lemma(gs: GradedSemigroup, green) -> Verdict:
    S = gs.backend
    zero = S.zero
    elems = S.elements()
    lclass = {s: block for block in green.L for s in block}
    for block in green.R:
        pairs = [(s, t) for s in block for t in block
                 if s != t and s != zero and t != zero]
        for s, t in pairs:
            u = next((x for x in elems if S.multiply(s, x) == t), None)
            u_back = next((x for x in elems if S.multiply(t, x) == s), None)
            if u is None or u_back is None:
                continue  # translation realised by the adjoined identity only
            gamma = gs.degree(s).inverse() * gs.degree(t)
            ls, lt = lclass[s] - {zero}, lclass[t] - {zero}
            image = {S.multiply(x, u) for x in ls}
            if image != lt:
                return fails("right translation is not onto the target L-class",
                             (S.render(s), S.render(t)))
            for x in ls:
                if gs.degree(S.multiply(x, u)) != gs.degree(x) * gamma:
                    return fails("translation does not shift degrees uniformly",
                                 (S.render(x), S.render(u)))
    return holds("graded Green's lemma verified on all R-related pairs")


# ---------------------------------------------------------------------------
# Graded homomorphisms
# ---------------------------------------------------------------------------

def check_graded_hom(f: Callable, source: GradedSemigroup,
                     target: GradedSemigroup, bound: int = 0) -> Verdict:
    """f respects products, zero, and degrees on the enumerated fragment."""
    S, T = source.backend, target.backend
    bounds = {"element_bound": bound}
    if f(S.zero) != T.zero:
        return fails("zero is not preserved", None, bounds)
    elems = S.nonzero_elements(bound)
    for s in elems:
        for t in elems:
            if f(S.multiply(s, t)) != T.multiply(f(s), f(t)):
                return fails("products are not preserved",
                             (S.render(s), S.render(t)), bounds)
    for s in elems:
        if f(s) != T.zero and target.degree(f(s)) != source.degree(s):
            return fails("degrees are not preserved", S.render(s), bounds)
    return holds("graded homomorphism verified on fragment", bounds)
