"""Directed acyclic hypergraph (DAH) structures and vertex relations.

A hyperedge is an ordered pair of disjoint vertex sets (tail, head).  Two
vertices are co-head when some edge carries both in its head; the chain
components are the equivalence classes of the transitive closure of that
relation.  Acyclicity means no partially directed cycle: no closed walk of
neighbor-or-parent steps that uses at least one strict parent step.

Values are immutable after construction; every query below is pure and safe
to call concurrently.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleDetected,
    DuplicateEdge,
    DuplicateVertex,
    EmptyHyperedge,
    TailHeadOverlap,
    UnknownVertex,
    UnknownVertexInEdge,
)

VertexId = str


def _sorted(vs: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(vs))


@dataclass(frozen=True)
class Hyperedge:
    """Directed hyperedge with disjoint tail and head vertex sets."""

    tail: frozenset[str]
    head: frozenset[str]

    def __init__(self, tail: Iterable[str], head: Iterable[str]):
        object.__setattr__(self, "tail", frozenset(tail))
        object.__setattr__(self, "head", frozenset(head))
        overlap = self.tail & self.head
        if overlap:
            raise TailHeadOverlap(
                "tail and head share vertices: " + " ".join(sorted(overlap))
            )
        if not self.tail and not self.head:
            raise EmptyHyperedge("hyperedge with empty tail and empty head")

    @property
    def vertices(self) -> frozenset[str]:
        return self.tail | self.head

    @property
    def fully_directed(self) -> bool:
        return bool(self.tail) and bool(self.head)

    def sort_key(self):
        # canonical order: by head first, then tail
        return (_sorted(self.head), _sorted(self.tail))

    def __repr__(self):
        return "Hyperedge({%s} -> {%s})" % (
            " ".join(_sorted(self.tail)),
            " ".join(_sorted(self.head)),
        )


@dataclass(frozen=True)
class ComponentPartition:
    """Partition of the vertex set into chain components.

    Components are sorted lexicographically by their smallest member, and
    each component is itself sorted.
    """

    components: tuple[tuple[str, ...], ...]

    @cached_property
    def component_of(self) -> Mapping[str, int]:
        out: dict[str, int] = {}
        for i, comp in enumerate(self.components):
            for v in comp:
                out[v] = i
        return out

    def index_of(self, v: str) -> int:
        return self.component_of[v]

    def as_sets(self) -> list[frozenset[str]]:
        return [frozenset(c) for c in self.components]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True)
class CanonicalDag:
    """Quotient of a DAH by its chain components.

    ``arcs`` holds ordered pairs of component indices into ``components``.
    """

    components: tuple[tuple[str, ...], ...]
    arcs: frozenset[tuple[int, int]]

    @property
    def nodes(self) -> range:
        return range(len(self.components))


@dataclass(frozen=True)
class VertexRelations:
    pa: frozenset[str]
    nb: frozenset[str]
    bd: frozenset[str]
    cl: frozenset[str]
    an: frozenset[str]
    ant: frozenset[str]
    de: frozenset[str]
    nd: frozenset[str]


@dataclass(frozen=True, eq=False)
class DAH:
    """Validated directed hypergraph; build via :func:`build_dah`.

    Edge order is preserved as given.  Equality compares vertex sets and
    edge sets, ignoring edge order.
    """

    vertices: frozenset[str]
    edges: tuple[Hyperedge, ...]

    def __eq__(self, other):
        if not isinstance(other, DAH):
            return NotImplemented
        return self.vertices == other.vertices and frozenset(self.edges) == frozenset(
            other.edges
        )

    def __hash__(self):
        return hash((self.vertices, frozenset(self.edges)))

    def __repr__(self):
        return "DAH(%d vertices, %d edges)" % (len(self.vertices), len(self.edges))

    @cached_property
    def edge_set(self) -> frozenset[Hyperedge]:
        return frozenset(self.edges)

    @cached_property
    def _parents(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            for v in e.head:
                acc[v] |= e.tail
        return {v: frozenset(s) for v, s in acc.items()}

    @cached_property
    def _neighbors(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            if len(e.head) > 1:
                for v in e.head:
                    acc[v] |= e.head - {v}
        return {v: frozenset(s) for v, s in acc.items()}

    @cached_property
    def _children(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            for v in e.tail:
                acc[v] |= e.head
        return {v: frozenset(s) for v, s in acc.items()}

    @cached_property
    def _mask_form(self):
        """Bitmask encoding used by the separation kernel."""
        order = _sorted(self.vertices)
        index = {v: i for i, v in enumerate(order)}
        tails = []
        heads = []
        for e in self.edges:
            t = 0
            for v in e.tail:
                t |= 1 << index[v]
            h = 0
            for v in e.head:
                h |= 1 << index[v]
            tails.append(t)
            heads.append(h)
        if len(order) <= 63:
            tails = array("Q", tails)
            heads = array("Q", heads)
        return order, index, tails, heads


def _check_vertices(vertices: Iterable[str]) -> frozenset[str]:
    seen: set[str] = set()
    for v in vertices:
        if not isinstance(v, str) or not v:
            raise UnknownVertex(f"invalid vertex label: {v!r}")
        if v in seen:
            raise DuplicateVertex(f"duplicate vertex: {v}")
        seen.add(v)
    return frozenset(seen)


def build_dah(
    vertices: Iterable[str],
    edges: Iterable[Hyperedge | tuple],
    require_acyclic: bool = True,
) -> DAH:
    """Validate and construct a DAH.

    ``edges`` accepts ``Hyperedge`` values or plain ``(tail, head)`` pairs.
    With ``require_acyclic`` (the default) a partially directed cycle raises
    :class:`CycleDetected` carrying one witnessing cycle.  Edges with an
    empty head are accepted; they contribute no parent or co-head relations.
    """
    vset = _check_vertices(vertices)
    normalized: list[Hyperedge] = []
    seen_pairs: set[tuple[frozenset, frozenset]] = set()
    for e in edges:
        if not isinstance(e, Hyperedge):
            e = Hyperedge(*e)
        missing = e.vertices - vset
        if missing:
            raise UnknownVertexInEdge(
                "edge %r uses undeclared vertices: %s" % (e, " ".join(sorted(missing)))
            )
        key = (e.tail, e.head)
        if key in seen_pairs:
            raise DuplicateEdge(f"duplicate edge: {e!r}")
        seen_pairs.add(key)
        normalized.append(e)
    h = DAH(vset, tuple(normalized))
    if require_acyclic:
        cycle = find_partially_directed_cycle(h)
        if cycle is not None:
            raise CycleDetected(cycle, _render_cycle(h, cycle))
    return h


def _cohead_adjacency(h: DAH) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in h.vertices}
    for e in h.edges:
        if len(e.head) > 1:
            for v in e.head:
                adj[v] |= e.head - {v}
    return adj


def chain_components(h: DAH) -> ComponentPartition:
    """Chain components: transitive closure of the co-head relation."""
    adj = _cohead_adjacency(h)
    seen: set[str] = set()
    comps: list[tuple[str, ...]] = []
    for start in _sorted(h.vertices):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(_sorted(comp))
    comps.sort(key=lambda c: c[0])
    return ComponentPartition(tuple(comps))


def _quotient_arcs(h: DAH, part: ComponentPartition):
    """Component-level arcs, each with one witnessing (edge, tail vertex, head vertex)."""
    cindex = part.component_of
    arcs: dict[tuple[int, int], tuple[Hyperedge, str, str]] = {}
    for e in h.edges:
        for t in e.tail:
            for hd in e.head:
                key = (cindex[t], cindex[hd])
                if key not in arcs:
                    arcs[key] = (e, t, hd)
    return arcs


def find_partially_directed_cycle(h: DAH) -> list[str] | None:
    """Return one partially directed cycle as a vertex list, or None.

    Works on the component quotient: a self-loop or a directed cycle there
    lifts to a vertex-level cycle through co-head chains.
    """
    part = chain_components(h)
    arcs = _quotient_arcs(h, part)
    self_loops = [k for k in arcs if k[0] == k[1]]
    if self_loops:
        i = self_loops[0][0]
        e, t, hd = arcs[self_loops[0]]
        path = _cohead_path(h, hd, t)
        return path  # hd .. t, closed by the t -> hd parent step
    # directed cycle search on the quotient
    n = len(part)
    succ: dict[int, list[int]] = {i: [] for i in range(n)}
    for (i, j) in arcs:
        succ[i].append(j)
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    stack: list[int] = []

    def dfs(i: int) -> list[int] | None:
        state[i] = 1
        stack.append(i)
        for j in sorted(succ[i]):
            if state[j] == 1:
                return stack[stack.index(j):] + [j]
            if state[j] == 0:
                found = dfs(j)
                if found is not None:
                    return found
        stack.pop()
        state[i] = 2
        return None

    comp_cycle = None
    for i in range(n):
        if state[i] == 0:
            comp_cycle = dfs(i)
            if comp_cycle is not None:
                break
    if comp_cycle is None:
        return None
    # lift: for consecutive components use a witnessing edge, connect within
    # each component by co-head steps
    verts: list[str] = []
    k = len(comp_cycle) - 1  # closed list
    entries: list[str] = []
    exits: list[str] = []
    for idx in range(k):
        e, t, hd = arcs[(comp_cycle[idx], comp_cycle[(idx + 1) % k])]
        exits.append(t)
        entries.append(hd)
    for idx in range(k):
        enter = entries[idx - 1]  # vertex where the walk enters component idx
        leave = exits[idx]
        verts.extend(_cohead_path(h, enter, leave))
    return verts


def _cohead_path(h: DAH, src: str, dst: str) -> list[str]:
    """Shortest neighbor-step path src..dst inside one chain component."""
    if src == dst:
        return [src]
    adj = _cohead_adjacency(h)
    prev: dict[str, str] = {src: src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in prev:
                prev[w] = v
                if w == dst:
                    path = [w]
                    while path[-1] != src:
                        path.append(prev[path[-1]])
                    return path[::-1]
                queue.append(w)
    raise AssertionError("vertices not co-head connected")


def _render_cycle(h: DAH, cycle: Sequence[str]) -> str:
    """Human-readable rendering with -> for parent steps and - for neighbor steps."""
    parents = h._parents
    parts = [cycle[0]]
    closed = list(cycle) + [cycle[0]]
    for a, b in zip(closed, closed[1:]):
        step = "->" if a in parents.get(b, frozenset()) else "-"
        parts.append(step)
        parts.append(b)
    return "partially directed cycle: " + " ".join(parts)


def is_acyclic(h: DAH) -> bool:
    """True iff the structure has no partially directed cycle."""
    return find_partially_directed_cycle(h) is None


def canonical_dag(h: DAH) -> CanonicalDag:
    """Contract chain components; arcs follow tail/head incidence."""
    part = chain_components(h)
    arcs = _quotient_arcs(h, part)
    pairs = frozenset(k for k in arcs if k[0] != k[1])
    return CanonicalDag(part.components, pairs)


def _require_known(h: DAH, vs: Iterable[str]) -> None:
    missing = set(vs) - h.vertices
    if missing:
        raise UnknownVertex("unknown vertices: " + " ".join(sorted(missing)))


def _closure(start: set[str], step: Mapping[str, frozenset[str]]) -> frozenset[str]:
    out = set(start)
    queue = deque(start)
    while queue:
        v = queue.popleft()
        for w in step[v]:
            if w not in out:
                out.add(w)
                queue.append(w)
    return frozenset(out)


def relations(h: DAH, v: str) -> VertexRelations:
    """All standard single-vertex relation sets.

    ant is the backward closure of neighbor-or-parent steps.  de holds the
    vertex itself plus everything reachable by a descending path (child or
    neighbor steps) outside the vertex's own chain component; component
    mates are mutually reachable, so they do not descend from each other.
    an mirrors de upward.  This is the convention under which the local
    and pairwise statement families are consequences of the global one.
    nd is the complement of de.
    """
    _require_known(h, [v])
    pa = h._parents[v]
    nb = h._neighbors[v]
    bd = pa | nb
    cl = bd | {v}
    comp = _closure({v}, h._neighbors)
    boundary = {u: h._parents[u] | h._neighbors[u] for u in h.vertices}
    ant = _closure({v}, boundary)
    an = frozenset((ant - comp) | {v})
    descending = {u: h._children[u] | h._neighbors[u] for u in h.vertices}
    de = frozenset((_closure({v}, descending) - comp) | {v})
    nd = h.vertices - de
    return VertexRelations(
        pa=pa,
        nb=nb,
        bd=frozenset(bd),
        cl=frozenset(cl),
        an=an,
        ant=ant,
        de=de,
        nd=frozenset(nd),
    )


def boundary_of_set(h: DAH, s: Iterable[str]) -> frozenset[str]:
    ss = frozenset(s)
    out: set[str] = set()
    for v in ss:
        out |= h._parents[v] | h._neighbors[v]
    return frozenset(out - ss)


def anterior_set(h: DAH, s: Iterable[str]) -> frozenset[str]:
    """Smallest ancestral superset of ``s`` (fixed point of boundary growth)."""
    ss = set(s)
    _require_known(h, ss)
    while True:
        bd = boundary_of_set(h, ss)
        if not bd:
            return frozenset(ss)
        ss |= bd


def induced_subhypergraph(h: DAH, s: Iterable[str]) -> DAH:
    """Sub-hypergraph on ``s`` keeping exactly the edges fully inside ``s``."""
    ss = frozenset(s)
    _require_known(h, ss)
    kept = tuple(e for e in h.edges if e.vertices <= ss)
    return DAH(ss, kept)
