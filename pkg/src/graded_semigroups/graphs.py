"""Directed graphs, path combinatorics, and the path-length condition decider.

Path-length sets of a finite graph are eventually periodic: iterating the
(reversed) edge relation on vertex subsets must revisit a state within 2^|V|
steps.  That observation powers two exact deciders used by the graph inverse
semigroup layer: the "every shift is realised" condition behind locally strong
gradings, and condition (Y), decided by searching for a bad lasso in a product
of the graph with a clamped length counter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyWindow, InputError, InvalidGraph
from .groups import GradeGroup, GroupElement, IntegerGroup, group_from_json
from .verdicts import Verdict, fails, holds, unknown


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    rng: str


class Graph:
    """A finite directed graph with named vertices and edges."""

    def __init__(self, vertices: Iterable[str], edges: Iterable):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidGraph("duplicate vertex ids")
        parsed = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            parsed.append(e)
        self.edges = tuple(parsed)
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise InvalidGraph("duplicate edge ids")
        vs = set(self.vertices)
        for e in self.edges:
            if e.src not in vs or e.rng not in vs:
                raise InvalidGraph(f"edge {e.id} has a dangling endpoint")
        self._out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        self._in: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e.src].append(e)
            self._in[e.rng].append(e)

    def out_edges(self, v: str) -> list[Edge]:
        return self._out[v]

    def in_edges(self, v: str) -> list[Edge]:
        return self._in[v]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class Path:
    """A vertex (length 0) or a composable edge sequence."""

    start: str
    edges: tuple = ()

    @classmethod
    def vertex(cls, v: str) -> "Path":
        return cls(v, ())

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def end(self) -> str:
        return self.edges[-1].rng if self.edges else self.start

    def concat(self, other: "Path") -> "Path":
        if self.end != other.start:
            raise InvalidGraph("paths are not composable")
        return Path(self.start, self.edges + other.edges)

    def extend(self, e: Edge) -> "Path":
        if self.end != e.src:
            raise InvalidGraph("edge does not continue the path")
        return Path(self.start, self.edges + (e,))

    def is_initial_subpath_of(self, other: "Path") -> bool:
        return (self.start == other.start
                and other.edges[:len(self.edges)] == self.edges)

    def strip_prefix(self, prefix: "Path") -> "Path | None":
        """The path z with self = prefix . z, if prefix is initial in self."""
        if not prefix.is_initial_subpath_of(self):
            return None
        rest = self.edges[len(prefix.edges):]
        return Path(prefix.end, rest)

    def __repr__(self):
        if not self.edges:
            return self.start
        return "".join(e.id for e in self.edges)


@dataclass
class StructuralReport:
    sinks: list[str]
    sources: list[str]
    regular_vertices: list[str]
    is_row_finite: bool
    has_cycles: bool
    is_empty: bool


def structural_report(E: Graph) -> StructuralReport:
    """Sinks emit no edges, sources receive none; finite graphs are row-finite."""
    sinks = [v for v in E.vertices if not E.out_edges(v)]
    sources = [v for v in E.vertices if not E.in_edges(v)]
    regular = [v for v in E.vertices if E.out_edges(v)]
    return StructuralReport(sinks, sources, regular, True,
                            _has_cycle(E), E.is_empty)


def _has_cycle(E: Graph) -> bool:
    color = {v: 0 for v in E.vertices}  # 0 new, 1 active, 2 done
    for root in E.vertices:
        if color[root]:
            continue
        stack = [(root, iter(E.out_edges(root)))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for e in it:
                w = e.rng
                if color[w] == 1:
                    return True
                if color[w] == 0:
                    color[w] = 1
                    stack.append((w, iter(E.out_edges(w))))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return False


def enumerate_paths(E: Graph, start: str | None = None,
                    max_length: int = 0) -> list[Path]:
    """All paths of length up to ``max_length``; vertices count as length 0."""
    if start is None:
        frontier = [Path.vertex(v) for v in E.vertices]
    else:
        if start not in set(E.vertices):
            raise InvalidGraph(f"unknown vertex {start!r}")
        frontier = [Path.vertex(start)]
    out = list(frontier)
    for _ in range(max_length):
        frontier = [p.extend(e) for p in frontier for e in E.out_edges(p.end)]
        out.extend(frontier)
    return out


# ---------------------------------------------------------------------------
# Eventually periodic sets of path lengths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EventuallyPeriodicSet:
    """A subset of the naturals: explicit below a threshold, periodic above.

    Membership of k >= threshold depends on k mod period only.  Instances are
    canonical: minimal eventual period first, then minimal threshold.
    """

    threshold: int
    period: int
    explicit: frozenset
    residues: frozenset

    @classmethod
    def from_prefix(cls, member: list[bool], threshold: int,
                    period: int) -> "EventuallyPeriodicSet":
        """Canonicalise a membership prefix of length threshold + period."""
        tail = member[threshold:threshold + period]
        best = period
        for d in range(1, period):
            if period % d == 0 and all(tail[r] == tail[r % d] for r in range(period)):
                best = d
                break
        t = threshold
        while t > 0 and member[t - 1] == tail[(t - 1 - threshold) % best]:
            t -= 1
        residues = frozenset(k % best for k in range(t, t + best)
                             if (member[k] if k < threshold else tail[(k - threshold) % best]))
        explicit = frozenset(k for k in range(t) if member[k])
        return cls(t, best, explicit, residues)

    def contains(self, k: int) -> bool:
        if k < 0:
            return False
        if k < self.threshold:
            return k in self.explicit
        return (k % self.period) in self.residues

    @property
    def is_finite(self) -> bool:
        return not self.residues

    def sample(self, upto: int) -> list[int]:
        return [k for k in range(upto + 1) if self.contains(k)]

    def __repr__(self):
        return (f"EPSet(T={self.threshold}, P={self.period}, "
                f"explicit={sorted(self.explicit)}, residues={sorted(self.residues)})")


def _subset_sequence(start: frozenset, step) -> tuple[list[frozenset], int, int]:
    states = []
    seen: dict[frozenset, int] = {}
    cur = start
    while cur not in seen:
        seen[cur] = len(states)
        states.append(cur)
        cur = step(cur)
    t = seen[cur]
    p = len(states) - t
    return states, t, p


def in_length_set(E: Graph, v: str) -> EventuallyPeriodicSet:
    """The set of lengths of paths ending at v (from anywhere).

    Computed from the reversed-reachability vectors R_0 = {v},
    R_{k+1} = sources of edges into R_k; k is in the set iff R_k is nonempty.
    """
    def step(state: frozenset) -> frozenset:
        return frozenset(e.src for w in state for e in E.in_edges(w))

    states, t, p = _subset_sequence(frozenset([v]), step)
    member = [bool(states[k]) for k in range(t + p)]
    return EventuallyPeriodicSet.from_prefix(member, t, p)


def path_length_set(E: Graph, src: str, dst: str) -> EventuallyPeriodicSet:
    """The set of lengths of paths from src to dst."""
    def step(state: frozenset) -> frozenset:
        return frozenset(e.rng for w in state for e in E.out_edges(w))

    states, t, p = _subset_sequence(frozenset([src]), step)
    member = [dst in states[k] for k in range(t + p)]
    return EventuallyPeriodicSet.from_prefix(member, t, p)


def difference_contains(A: EventuallyPeriodicSet, B: EventuallyPeriodicSet,
                        n: int) -> bool:
    """Whether n = a - b for some a in A, b in B.  Exact."""
    limit = max(B.threshold, A.threshold - n, 0) + math.lcm(A.period, B.period)
    return any(B.contains(b) and A.contains(b + n) for b in range(limit + 1))


def difference_cover_window(pairs: list[tuple[EventuallyPeriodicSet,
                                              EventuallyPeriodicSet]]) -> int:
    """A window W so that the union of differences is all of Z iff it covers [-W, W]."""
    if not pairs:
        return 0
    t = max(max(a.threshold, b.threshold) for a, b in pairs)
    lcm = 1
    for a, b in pairs:
        lcm = math.lcm(lcm, a.period, b.period)
    return t + lcm


def differences_cover_all_integers(
        pairs: list[tuple[EventuallyPeriodicSet, EventuallyPeriodicSet]]
) -> tuple[bool, int | None]:
    """Whether the union of {a - b} over the pairs is all of Z; else a missing n.

    Beyond the returned window, membership on the positive side is periodic in
    the periods of the A-sets and on the negative side in those of the B-sets,
    so checking the window is exact.
    """
    w = difference_cover_window(pairs)
    for n in range(-w, w + 1):
        if not any(difference_contains(a, b, n) for a, b in pairs):
            return False, n
    return True, None


# ---------------------------------------------------------------------------
# Condition (Y)
# ---------------------------------------------------------------------------

def _brute_has_inpath(E: Graph, v: str, m: int) -> bool:
    """Plain m-step reverse reachability; the oracle for the bounded verifier."""
    state = {v}
    for _ in range(m):
        state = {e.src for w in state for e in E.in_edges(w)}
        if not state:
            return False
    return bool(state)


def condition_y(E: Graph, mode: str = "exact", n_max: int = 6,
                k_max: int = 12) -> Verdict:
    """For every n, every infinite path has a prefix x with some y ending at
    the same vertex and |y| - |x| = n.

    Exact mode: with L(v) the in-length set of v, a counterexample for n is an
    infinite path all of whose positions k satisfy (k + n) not in L(v_k).
    Clamping the counter k + n to threshold + period turns this into lasso
    search in a finite product graph, and n itself only matters modulo the
    common period once it clears the threshold, so n < threshold + period
    suffices.  Bounded mode verifies the quantifiers directly for n <= n_max
    over prefixes of length <= k_max and never certifies failure.
    """
    if mode == "exact":
        return _condition_y_exact(E)
    if mode == "bounded":
        return _condition_y_bounded(E, n_max, k_max)
    raise ValueError(f"mode must be exact|bounded, got {mode!r}")


def _condition_y_exact(E: Graph) -> Verdict:
    if E.is_empty:
        return holds("empty graph: no infinite paths")
    lsets = {v: in_length_set(E, v) for v in E.vertices}
    t = max(s.threshold for s in lsets.values())
    p = 1
    for s in lsets.values():
        p = math.lcm(p, s.period)
    span = t + p
    bounds = {"threshold": t, "period": p}

    def clamp(m: int) -> int:
        return m if m < span else t + (m - t) % p

    def bad(v: str, c: int) -> bool:
        return not lsets[v].contains(c)

    for n in range(span):
        # nodes (v, c) with c the clamped value of k + n; only bad nodes kept
        starts = [(v, clamp(n)) for v in E.vertices if bad(v, clamp(n))]
        if not starts:
            continue
        succs: dict[tuple, list[tuple]] = {}

        def nodes_from(node):
            if node not in succs:
                v, c = node
                nxt = clamp(c + 1)
                succs[node] = [(e.rng, nxt) for e in E.out_edges(v)
                               if bad(e.rng, nxt)]
            return succs[node]

        # lasso = a cycle of bad nodes reachable from a bad start
        color: dict[tuple, int] = {}
        for root in starts:
            if color.get(root):
                continue
            stack = [(root, iter(nodes_from(root)))]
            color[root] = 1
            cycle_node = None
            while stack:
                node, it = stack[-1]
                advanced = False
                for nxt in it:
                    if color.get(nxt) == 1:
                        cycle_node = nxt
                        break
                    if not color.get(nxt):
                        color[nxt] = 1
                        stack.append((nxt, iter(nodes_from(nxt))))
                        advanced = True
                        break
                if cycle_node is not None:
                    witness = {
                        "n": n,
                        "lasso_vertices": [v for (v, _), _ in stack] + [cycle_node[0]],
                    }
                    return fails("bad lasso: an infinite path avoids every "
                                 "required length offset", witness, bounds)
                if not advanced:
                    color[node] = 2
                    stack.pop()
        # no lasso for this n
    return holds(f"no bad lasso for any n < {span}", bounds)


def _condition_y_bounded(E: Graph, n_max: int, k_max: int) -> Verdict:
    bounds = {"n_max": n_max, "k_max": k_max}
    if E.is_empty:
        return holds("empty graph: no infinite paths", bounds)
    for n in range(n_max + 1):
        bad_cache: dict[tuple[str, int], bool] = {}

        def bad(v: str, k: int) -> bool:
            if (v, k) not in bad_cache:
                bad_cache[(v, k)] = not _brute_has_inpath(E, v, k + n)
            return bad_cache[(v, k)]

        reach: dict[tuple[str, int], bool] = {}

        def survives(v: str, k: int) -> bool:
            # True when a length-(k_max - k) continuation stays bad throughout
            if k == k_max:
                return True
            if (v, k) not in reach:
                reach[(v, k)] = any(bad(e.rng, k + 1) and survives(e.rng, k + 1)
                                    for e in E.out_edges(v))
            return reach[(v, k)]

        for v in E.vertices:
            if bad(v, 0) and survives(v, 0):
                return unknown(
                    f"a prefix of length {k_max} avoids every offset for n={n}; "
                    "bounded search cannot certify failure", bounds)
    return holds(f"verified for all n <= {n_max} (prefixes of length <= {k_max} "
                 "decide each n)", bounds)


# ---------------------------------------------------------------------------
# Weights and covering graphs
# ---------------------------------------------------------------------------

class Weighting:
    """A group element attached to every edge; extended to paths by products."""

    def __init__(self, group: GradeGroup, by_edge: dict):
        self.group = group
        self.by_edge = {k: (v if isinstance(v, GroupElement) else group.element(v))
                        for k, v in by_edge.items()}

    @classmethod
    def constant_one(cls, E: Graph) -> "Weighting":
        z = IntegerGroup()
        return cls(z, {e.id: z.element(1) for e in E.edges})

    def of_edge(self, e: Edge) -> GroupElement:
        return self.by_edge[e.id]

    def of_path(self, p: Path) -> GroupElement:
        out = self.group.identity
        for e in p.edges:
            out = out * self.by_edge[e.id]
        return out


@dataclass
class CoveringGraph:
    graph: Graph
    weighting: Weighting
    levels: dict
    dropped: list


def _level_tag(alpha: GroupElement) -> str:
    return str(alpha.value)


def covering_graph(E: Graph, omega: Weighting,
                   window: list[GroupElement]) -> CoveringGraph:
    """The covering graph over a window of levels.

    Vertices are v@alpha for alpha in the window; the edge e@alpha starts at
    s(e)@alpha and ends at r(e)@(omega(e)^-1 alpha).  Edges whose target level
    leaves the window are dropped and reported, never silently ignored.
    """
    if not window:
        raise EmptyWindow("covering window is empty")
    window = list(window)
    levels: dict = {}
    vertices = []
    for v in E.vertices:
        for a in window:
            name = f"{v}@{_level_tag(a)}"
            vertices.append(name)
            levels[name] = (v, a)
    edges = []
    weights = {}
    dropped = []
    wset = set(window)
    for e in E.edges:
        for a in window:
            target_level = omega.of_edge(e).inverse() * a
            name = f"{e.id}@{_level_tag(a)}"
            if target_level not in wset:
                dropped.append(name)
                continue
            edges.append(Edge(name, f"{e.src}@{_level_tag(a)}",
                              f"{e.rng}@{_level_tag(target_level)}"))
            weights[name] = omega.of_edge(e)
            levels[name] = (e, a)
    cover = Graph(vertices, edges)
    return CoveringGraph(cover, Weighting(omega.group, weights), levels, dropped)


def lpa_strongly_graded_verdict(E: Graph) -> Verdict:
    """Nonempty, no sinks, row-finite, and condition (Y): the three-part gate.

    Certifies whether the associated path-algebra quotient is strongly graded
    in its natural integer grading, purely from graph data.
    """
    if E.is_empty:
        return fails("empty graph: the criterion requires a nonempty graph",
                     "empty")
    report = structural_report(E)
    if report.sinks:
        return fails("graph has a sink", {"sink": report.sinks[0]})
    # finite input graphs are always row-finite
    y = condition_y(E, "exact")
    if y.fails:
        return fails(f"condition (Y) fails: {y.certificate}", y.witness, y.bounds)
    return holds("nonempty, no sinks, row-finite, condition (Y) holds", y.bounds)


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------

def graph_from_json(data: dict) -> tuple[Graph, Weighting | None]:
    """Parse {"vertices": [...], "edges": [{"id","src","rng"}...], "weights": {...}}.

    Missing weights leave the natural choice (constant 1 into the integers) to
    the caller; present weights default into the integers unless a group is
    supplied under "group".
    """
    if "vertices" not in data:
        raise InputError("vertices: missing")
    if "edges" not in data:
        raise InputError("edges: missing")
    edges = []
    for raw in data["edges"]:
        try:
            edges.append(Edge(raw["id"], raw["src"], raw["rng"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"edges: malformed entry {raw!r}") from exc
    try:
        graph = Graph(data["vertices"], edges)
    except InvalidGraph as exc:
        raise InputError(f"graph: {exc}") from exc
    weighting = None
    if "weights" in data:
        group = group_from_json(data["group"]) if "group" in data else IntegerGroup()
        table = {}
        for e in graph.edges:
            if e.id not in data["weights"]:
                raise InputError(f"weights: missing weight for edge {e.id}")
            table[e.id] = group.element(data["weights"][e.id])
        weighting = Weighting(group, table)
    return graph, weighting
