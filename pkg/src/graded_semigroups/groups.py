"""Grading groups: the integers, cyclic groups, explicit tables, and products.

Every other module quantifies over these groups, so the contract is small and
strict: elements are immutable, equality is structural, and finite groups
enumerate their full carrier regardless of the requested bound.  The integers
enumerate symmetrically around 0 because degree supports of graph inverse
semigroups are symmetric under inversion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .errors import InvalidGroupTable, MixedParents


@dataclass(frozen=True)
class GroupElement:
    """An element of a :class:`GradeGroup`, wrapping a canonical value."""

    group: "GradeGroup"
    value: Any

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise MixedParents(f"elements of {self.group} and {other.group}")
        return self.group.op(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.inv(self)

    @property
    def is_identity(self) -> bool:
        return self == self.group.identity

    def __repr__(self) -> str:
        return f"<{self.value}>"


class GradeGroup:
    """Common interface for grading groups.

    Subclasses define ``op``, ``inv``, ``identity``, enumeration, and JSON
    encoding of element values.  Instances are immutable and hashable.
    """

    is_finite: bool = True

    @property
    def identity(self) -> GroupElement:
        raise NotImplementedError

    def op(self, a: GroupElement, b: GroupElement) -> GroupElement:
        raise NotImplementedError

    def inv(self, a: GroupElement) -> GroupElement:
        raise NotImplementedError

    def elements(self, bound: int = 0) -> list[GroupElement]:
        """All elements of a finite group; a symmetric window for the integers."""
        raise NotImplementedError

    def element(self, value: Any) -> GroupElement:
        """Wrap a raw value, validating that it lies in the carrier."""
        raise NotImplementedError

    @property
    def is_torsion_free_abelian(self) -> bool:
        return False

    def encode(self, a: GroupElement) -> Any:
        return a.value

    def to_json(self) -> dict:
        raise NotImplementedError

    def power(self, a: GroupElement, n: int) -> GroupElement:
        out = self.identity
        step = a if n >= 0 else self.inv(a)
        for _ in range(abs(n)):
            out = self.op(out, step)
        return out


class IntegerGroup(GradeGroup):
    """The additive group of integers."""

    is_finite = False

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, 0)

    def op(self, a, b):
        return GroupElement(self, a.value + b.value)

    def inv(self, a):
        return GroupElement(self, -a.value)

    def elements(self, bound: int = 0) -> list[GroupElement]:
        return [GroupElement(self, k) for k in range(-bound, bound + 1)]

    def element(self, value):
        if not isinstance(value, int):
            raise InvalidGroupTable(f"integer group got value {value!r}")
        return GroupElement(self, value)

    @property
    def is_torsion_free_abelian(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"type": "Z"}

    def __eq__(self, other):
        return isinstance(other, IntegerGroup)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "Z"


class CyclicGroup(GradeGroup):
    """The integers modulo n, for n >= 1."""

    def __init__(self, n: int):
        if n < 1:
            raise InvalidGroupTable(f"cyclic group needs n >= 1, got {n}")
        self.n = n

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, 0)

    def op(self, a, b):
        return GroupElement(self, (a.value + b.value) % self.n)

    def inv(self, a):
        return GroupElement(self, (-a.value) % self.n)

    def elements(self, bound: int = 0) -> list[GroupElement]:
        return [GroupElement(self, k) for k in range(self.n)]

    def element(self, value):
        if not isinstance(value, int):
            raise InvalidGroupTable(f"cyclic group got value {value!r}")
        return GroupElement(self, value % self.n)

    @property
    def is_torsion_free_abelian(self) -> bool:
        return self.n == 1

    def to_json(self) -> dict:
        return {"type": "Zn", "n": self.n}

    def __eq__(self, other):
        return isinstance(other, CyclicGroup) and other.n == self.n

    def __hash__(self):
        return hash(("Zn", self.n))

    def __repr__(self):
        return f"Z/{self.n}"


class TableGroup(GradeGroup):
    """A finite group given by an explicit operation table.

    The table is validated eagerly: closure, associativity, identity, and
    inverses are all checked at construction, and invalid tables are rejected
    rather than repaired.
    """

    def __init__(self, table: list[list[int]]):
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise InvalidGroupTable("operation table must be square and nonempty")
        for row in table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise InvalidGroupTable(f"table entry {v!r} outside carrier")
        ident = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise InvalidGroupTable("table has no identity element")
        for a in range(n):
            if not any(table[a][b] == ident and table[b][a] == ident for b in range(n)):
                raise InvalidGroupTable(f"element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise InvalidGroupTable(f"associativity fails at ({a},{b},{c})")
        self.table = tuple(tuple(row) for row in table)
        self.order = n
        self._identity = ident
        self._inverse = [
            next(b for b in range(n) if table[a][b] == ident) for a in range(n)
        ]

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity)

    def op(self, a, b):
        return GroupElement(self, self.table[a.value][b.value])

    def inv(self, a):
        return GroupElement(self, self._inverse[a.value])

    def elements(self, bound: int = 0) -> list[GroupElement]:
        return [GroupElement(self, k) for k in range(self.order)]

    def element(self, value):
        if not isinstance(value, int) or not 0 <= value < self.order:
            raise InvalidGroupTable(f"table group got value {value!r}")
        return GroupElement(self, value)

    @property
    def is_torsion_free_abelian(self) -> bool:
        return self.order == 1

    def to_json(self) -> dict:
        return {"type": "table", "table": [list(row) for row in self.table]}

    def __eq__(self, other):
        return isinstance(other, TableGroup) and other.table == self.table

    def __hash__(self):
        return hash(("table", self.table))

    def __repr__(self):
        return f"TableGroup(order={self.order})"


class ProductGroup(GradeGroup):
    """A finite direct product of grade groups; element values are tuples."""

    def __init__(self, factors: list[GradeGroup]):
        if not factors:
            raise InvalidGroupTable("product group needs at least one factor")
        self.factors = tuple(factors)

    @property
    def is_finite(self) -> bool:  # type: ignore[override]
        return all(f.is_finite for f in self.factors)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, tuple(f.identity.value for f in self.factors))

    def op(self, a, b):
        return GroupElement(
            self,
            tuple(
                f.op(f.element(x), f.element(y)).value
                for f, x, y in zip(self.factors, a.value, b.value)
            ),
        )

    def inv(self, a):
        return GroupElement(
            self,
            tuple(f.inv(f.element(x)).value for f, x in zip(self.factors, a.value)),
        )

    def elements(self, bound: int = 0) -> list[GroupElement]:
        pools = [[e.value for e in f.elements(bound)] for f in self.factors]
        return [GroupElement(self, combo) for combo in itertools.product(*pools)]

    def element(self, value):
        if not isinstance(value, (tuple, list)) or len(value) != len(self.factors):
            raise InvalidGroupTable(f"product group got value {value!r}")
        return GroupElement(
            self, tuple(f.element(v).value for f, v in zip(self.factors, value))
        )

    @property
    def is_torsion_free_abelian(self) -> bool:
        return all(f.is_torsion_free_abelian for f in self.factors)

    def to_json(self) -> dict:
        return {"type": "product", "factors": [f.to_json() for f in self.factors]}

    def __eq__(self, other):
        return isinstance(other, ProductGroup) and other.factors == self.factors

    def __hash__(self):
        return hash(("product", self.factors))

    def __repr__(self):
        return " x ".join(repr(f) for f in self.factors)


def group_from_json(data: dict) -> GradeGroup:
    """Build a grade group from its JSON description."""
    kind = data.get("type")
    if kind == "Z":
        return IntegerGroup()
    if kind == "Zn":
        return CyclicGroup(int(data["n"]))
    if kind == "table":
        return TableGroup(data["table"])
    if kind == "product":
        return ProductGroup([group_from_json(f) for f in data["factors"]])
    raise InvalidGroupTable(f"unknown group type {kind!r}")
