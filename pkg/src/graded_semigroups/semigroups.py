"""Semigroup backends and the classical structure theory used everywhere else.

Backends come in two kinds.  Finite backends store a full operation table and
answer every structural question exactly.  Symbolic backends (free semigroups
here, graph inverse semigroups in :mod:`.gis`, smash products in
:mod:`.constructions`) are infinite: they expose ``elements(size_bound)`` and
every global predicate computed from such a fragment is flagged as such.

All semigroups have a zero element.  Elements are backend-specific canonical
values with structural equality and hashing: table indices for finite
backends, words for free semigroups, path pairs for graph inverse semigroups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable

from .errors import InfiniteBackend, InputError, NotInverse


class SemigroupBackend:
    """Interface shared by all semigroup implementations.

    Backends are immutable after construction; cached derived data is computed
    before first concurrent use or is safe to recompute.
    """

    is_finite: bool = False
    zero: Any = None

    def multiply(self, a, b):
        raise NotImplementedError

    def elements(self, bound: int = 0) -> list:
        """Enumerated fragment; the full carrier whenever the backend is finite."""
        raise NotImplementedError

    @property
    def has_inverses(self) -> bool:
        return False

    def inverse(self, a):
        raise NotInverse(f"{type(self).__name__} has no inverse map")

    def element_size(self, a) -> int:
        return 1

    def render(self, a) -> str:
        return repr(a)

    def nonzero_elements(self, bound: int = 0) -> list:
        return [s for s in self.elements(bound) if s != self.zero]

    def product_chain(self, items: Iterable):
        out = None
        for x in items:
            out = x if out is None else self.multiply(out, x)
        if out is None:
            raise ValueError("empty product")
        return out


class FiniteSemigroup(SemigroupBackend):
    """A finite semigroup with zero, stored as an explicit operation table.

    The table is checked exhaustively at construction: closure, associativity,
    and absorption by the zero element.
    """

    is_finite = True

    def __init__(self, table: list[list[int]], zero_index: int,
                 labels: list[str] | None = None):
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise InputError("table: must be square and nonempty")
        for row in table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise InputError(f"table: entry {v!r} outside range 0..{n - 1}")
        if not 0 <= zero_index < n:
            raise InputError(f"zero: index {zero_index} outside range 0..{n - 1}")
        for x in range(n):
            if table[zero_index][x] != zero_index or table[x][zero_index] != zero_index:
                raise InputError(f"zero: element {x} is not absorbed")
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                for c in range(n):
                    if table[ab][c] != table[a][table[b][c]]:
                        raise InputError(f"table: associativity fails at ({a},{b},{c})")
        self.table = tuple(tuple(row) for row in table)
        self.order = n
        self.zero = zero_index
        self.labels = list(labels) if labels else [str(i) for i in range(n)]
        self._inverses: dict[int, int] | None = None

    @classmethod
    def from_elements(cls, values: list, mul: Callable, zero_value,
                      render: Callable[[Any], str] = str) -> "FiniteSemigroup":
        """Close ``values`` under ``mul`` and build the table.

        Returns a backend whose elements are indices into the closed carrier;
        the original values are kept as ``self.values`` and as labels.
        """
        carrier: list = []
        index: dict = {}

        def intern(v):
            if v not in index:
                index[v] = len(carrier)
                carrier.append(v)
            return index[v]

        intern(zero_value)
        for v in values:
            intern(v)
        frontier = list(carrier)
        while frontier:
            fresh = []
            for a in list(carrier):
                for b in frontier:
                    for prod in (mul(a, b), mul(b, a)):
                        if prod not in index:
                            intern(prod)
                            fresh.append(prod)
            frontier = fresh
        table = [[index[mul(a, b)] for b in carrier] for a in carrier]
        out = cls(table, index[zero_value], [render(v) for v in carrier])
        out.values = list(carrier)
        out.index = dict(index)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FiniteSemigroup":
        for key in ("order", "zero", "table"):
            if key not in data:
                raise InputError(f"{key}: missing")
        if len(data["table"]) != data["order"]:
            raise InputError("order: does not match table size")
        return cls(data["table"], data["zero"], data.get("labels"))

    def multiply(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self, bound: int = 0) -> list[int]:
        return list(range(self.order))

    def _inverse_map(self) -> dict[int, int]:
        if self._inverses is None:
            inv: dict[int, int] = {}
            for s in range(self.order):
                mates = [t for t in range(self.order)
                         if self.table[self.table[s][t]][s] == s
                         and self.table[self.table[t][s]][t] == t]
                if len(mates) == 1:
                    inv[s] = mates[0]
            self._inverses = inv
        return self._inverses

    @property
    def has_inverses(self) -> bool:
        return len(self._inverse_map()) == self.order

    def inverse(self, a: int) -> int:
        inv = self._inverse_map()
        if a not in inv:
            raise NotInverse(f"element {self.render(a)} has no unique inner inverse")
        return inv[a]

    def render(self, a: int) -> str:
        return self.labels[a]

    def to_json(self) -> dict:
        return {"order": self.order, "zero": self.zero,
                "table": [list(row) for row in self.table], "labels": self.labels}


class SubSemigroup(SemigroupBackend):
    """Restriction of a backend to a multiplicatively closed subset containing 0."""

    def __init__(self, parent: SemigroupBackend, allowed: Iterable[Hashable],
                 check_closure: bool = True):
        self.parent = parent
        self.allowed = frozenset(allowed) | {parent.zero}
        self.zero = parent.zero
        self.is_finite = parent.is_finite
        if check_closure and parent.is_finite:
            for a in self.allowed:
                for b in self.allowed:
                    if parent.multiply(a, b) not in self.allowed:
                        raise InputError("subset not closed under multiplication")

    def multiply(self, a, b):
        return self.parent.multiply(a, b)

    def elements(self, bound: int = 0) -> list:
        return [s for s in self.parent.elements(bound) if s in self.allowed]

    @property
    def has_inverses(self) -> bool:
        return self.parent.has_inverses

    def inverse(self, a):
        return self.parent.inverse(a)

    def element_size(self, a) -> int:
        return self.parent.element_size(a)

    def render(self, a) -> str:
        return self.parent.render(a)


IDENTITY = "1*"  # adjoined identity sentinel; distinct from any table index


class WithIdentity(SemigroupBackend):
    """The monoid obtained by adjoining a fresh identity element to a backend."""

    def __init__(self, parent: SemigroupBackend):
        self.parent = parent
        self.zero = parent.zero
        self.is_finite = parent.is_finite

    def multiply(self, a, b):
        if a == IDENTITY:
            return b
        if b == IDENTITY:
            return a
        return self.parent.multiply(a, b)

    def elements(self, bound: int = 0) -> list:
        return self.parent.elements(bound) + [IDENTITY]

    @property
    def has_inverses(self) -> bool:
        return self.parent.has_inverses

    def inverse(self, a):
        if a == IDENTITY:
            return IDENTITY
        return self.parent.inverse(a)

    def element_size(self, a) -> int:
        return 0 if a == IDENTITY else self.parent.element_size(a)

    def render(self, a) -> str:
        return "1" if a == IDENTITY else self.parent.render(a)


def adjoin_identity(backend: SemigroupBackend) -> WithIdentity:
    """Return the monoid S^1 with a fresh identity; existing products unchanged."""
    return WithIdentity(backend)


class FreeSemigroup(SemigroupBackend):
    """The free semigroup on a finite alphabet, with a zero adjoined.

    Elements are nonempty words (tuples of generator names); the zero is never
    produced by multiplication.  Element size is word length.
    """

    def __init__(self, generators: list[str]):
        self.generators = tuple(generators)
        self.zero = None

    def multiply(self, a, b):
        if a is None or b is None:
            return None
        return a + b

    def elements(self, bound: int = 0) -> list:
        words: list = [None]
        for n in range(1, bound + 1):
            words.extend(itertools.product(self.generators, repeat=n))
        return words

    def element_size(self, a) -> int:
        return 0 if a is None else len(a)

    def render(self, a) -> str:
        return "0" if a is None else "".join(a)


# ---------------------------------------------------------------------------
# Structure reports
# ---------------------------------------------------------------------------

@dataclass
class InverseStructure:
    is_regular: bool
    is_inverse: bool
    inverses: dict
    idempotents: frozenset
    fragment: bool


def idempotents_of(S: SemigroupBackend, bound: int = 0) -> frozenset:
    return frozenset(e for e in S.elements(bound) if S.multiply(e, e) == e)


def inverse_structure(S: SemigroupBackend, bound: int = 0) -> InverseStructure:
    """Regularity and inverse-uniqueness report over the enumerated fragment.

    For finite backends the report is exact; for symbolic backends it applies
    to the fragment only and is flagged accordingly.
    """
    elems = S.elements(bound)
    inverses: dict = {}
    regular = True
    inverse = True
    for s in elems:
        if s == S.zero:
            inverses[s] = s
            continue
        mates = [t for t in elems
                 if S.multiply(S.multiply(s, t), s) == s
                 and S.multiply(S.multiply(t, s), t) == t]
        if not mates:
            regular = inverse = False
        elif len(mates) == 1:
            inverses[s] = mates[0]
        else:
            inverse = False
    return InverseStructure(regular, inverse, inverses,
                            idempotents_of(S, bound), not S.is_finite)


def natural_leq(S: SemigroupBackend, s, t) -> bool:
    """Natural partial order of an inverse semigroup: s <= t iff s = t(s^-1 s)."""
    if not S.has_inverses:
        raise NotInverse("natural partial order needs an inverse backend")
    if s == S.zero:
        return True
    return s == S.multiply(t, S.multiply(S.inverse(s), s))


@dataclass
class LocalUnitsReport:
    has_local_units: bool
    has_common_local_units: bool
    witnesses: dict
    fragment: bool


def local_units_report(S: SemigroupBackend, bound: int = 0) -> LocalUnitsReport:
    """Local units: per element u s = s = s v; common: one pair serves both of any two."""
    elems = S.elements(bound)
    idems = sorted(idempotents_of(S, bound), key=repr)
    witnesses: dict = {}
    has_local = True
    for s in elems:
        u = next((e for e in idems if S.multiply(e, s) == s), None)
        v = next((e for e in idems if S.multiply(s, e) == s), None)
        if u is None or v is None:
            has_local = False
            witnesses["missing"] = s
            break
        witnesses[s] = (u, v)
    has_common = has_local
    if has_local:
        for s, t in itertools.combinations_with_replacement(elems, 2):
            ok = any(
                S.multiply(u, s) == s and S.multiply(u, t) == t
                and S.multiply(s, v) == s and S.multiply(t, v) == t
                for u in idems for v in idems
            )
            if not ok:
                has_common = False
                witnesses["missing_common"] = (s, t)
                break
    return LocalUnitsReport(has_local, has_common, witnesses, not S.is_finite)


@dataclass
class GreenClasses:
    L: list[frozenset]
    R: list[frozenset]
    H: list[frozenset]
    D: list[frozenset]
    J: list[frozenset]


def _partition_by(elems: list, key: Callable) -> list[frozenset]:
    groups: dict = {}
    for s in elems:
        groups.setdefault(key(s), []).append(s)
    return [frozenset(g) for g in groups.values()]


def green_classes(S: SemigroupBackend) -> GreenClasses:
    """Green's relations of a finite backend, from principal (one- and two-sided) ideals."""
    if not S.is_finite:
        raise InfiniteBackend("Green's relations need a finite backend")
    elems = S.elements()

    def left_ideal(s):
        return frozenset([s] + [S.multiply(x, s) for x in elems])

    def right_ideal(s):
        return frozenset([s] + [S.multiply(s, x) for x in elems])

    def two_sided(s):
        out = {s}
        out.update(S.multiply(x, s) for x in elems)
        out.update(S.multiply(s, x) for x in elems)
        out.update(S.multiply(S.multiply(x, s), y) for x in elems for y in elems)
        return frozenset(out)

    L = _partition_by(elems, left_ideal)
    R = _partition_by(elems, right_ideal)
    H = _partition_by(elems, lambda s: (left_ideal(s), right_ideal(s)))

    # D = L join R, computed by merging classes that share elements.
    cls_of: dict = {}
    parent: dict = {s: s for s in elems}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for block in L + R:
        block = sorted(block, key=repr)
        for other in block[1:]:
            union(block[0], other)
    dgroups: dict = {}
    for s in elems:
        dgroups.setdefault(find(s), []).append(s)
    D = [frozenset(g) for g in dgroups.values()]
    J = _partition_by(elems, two_sided)
    return GreenClasses(L, R, H, D, J)


def ideals(S: SemigroupBackend, kind: str = "two_sided") -> list[frozenset]:
    """All left/right/two-sided ideals of a finite backend.

    Every ideal is a union of principal ideals, so the family is the closure
    of the principal ideals under pairwise union.  Each ideal contains 0.
    """
    if not S.is_finite:
        raise InfiniteBackend("ideal enumeration needs a finite backend")
    if kind not in ("left", "right", "two_sided"):
        raise ValueError(f"kind must be left|right|two_sided, got {kind!r}")
    elems = S.elements()

    def principal(s):
        out = {s, S.zero}
        if kind in ("left", "two_sided"):
            out.update(S.multiply(x, s) for x in elems)
        if kind in ("right", "two_sided"):
            out.update(S.multiply(s, x) for x in elems)
        if kind == "two_sided":
            out.update(S.multiply(S.multiply(x, s), y) for x in elems for y in elems)
        return frozenset(out)

    family = {principal(s) for s in elems}
    while True:
        fresh = {a | b for a in family for b in family} - family
        if not fresh:
            break
        family |= fresh
    return sorted(family, key=lambda f: (len(f), sorted(map(repr, f))))


# ---------------------------------------------------------------------------
# Stock finite semigroups
# ---------------------------------------------------------------------------

def group_with_zero(order: int) -> FiniteSemigroup:
    """The cyclic group of the given order with a zero adjoined.

    Element 0 is the semigroup zero; element i+1 is the group element i.
    """
    n = order

    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        return ((a - 1 + b - 1) % n) + 1

    table = [[mul(a, b) for b in range(n + 1)] for a in range(n + 1)]
    labels = ["0"] + [f"g{i}" for i in range(n)]
    return FiniteSemigroup(table, 0, labels)


def matrix_units_semigroup(n: int) -> FiniteSemigroup:
    """Pairs (p, q) over {0..n-1} with (p,q)(s,t) = (p,t) when q = s, else 0.

    This is the semigroup of n-by-n matrix units with zero; it also realises
    the interval semigroup of index pairs over a finite interval, graded by
    (p, q) -> p - q.
    """
    pairs = [(p, q) for p in range(n) for q in range(n)]

    def mul(a, b):
        if a is None or b is None:
            return None
        (p, q), (s, t) = a, b
        return (p, t) if q == s else None

    return FiniteSemigroup.from_elements(
        pairs, mul, None, render=lambda v: "0" if v is None else f"e{v[0]}{v[1]}")
