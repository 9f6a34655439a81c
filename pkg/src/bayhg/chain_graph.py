"""Chain graphs, moralization, clique enumeration, complexes, separation.

A chain graph mixes directed and undirected edges with no partially
directed cycle.  The moral graph completes the boundary of every chain
component on top of the undirected skeleton.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .dah import DAH, ComponentPartition, Hyperedge, find_partially_directed_cycle, _sorted
from .errors import (
    ComplexSearchTooLarge,
    ConflictingEdge,
    CycleDetected,
    OverlappingSets,
    SelfLoop,
    UnknownVertex,
)


@dataclass(frozen=True)
class UndirectedGraph:
    vertices: frozenset[str]
    edges: frozenset[frozenset[str]]

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, w = tuple(e)
            acc[u].add(w)
            acc[w].add(u)
        return {v: frozenset(s) for v, s in acc.items()}

    def has_edge(self, u: str, w: str) -> bool:
        return frozenset((u, w)) in self.edges


@dataclass(frozen=True)
class ChainGraph:
    """Validated chain graph; build via :func:`build_chain_graph`."""

    vertices: frozenset[str]
    directed: frozenset[tuple[str, str]]
    undirected: frozenset[frozenset[str]]

    @cached_property
    def parents(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {v: set() for v in self.vertices}
        for (u, w) in self.directed:
            acc[w].add(u)
        return {v: frozenset(s) for v, s in acc.items()}

    @cached_property
    def children(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {v: set() for v in self.vertices}
        for (u, w) in self.directed:
            acc[u].add(w)
        return {v: frozenset(s) for v, s in acc.items()}

    @cached_property
    def neighbors(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.undirected:
            u, w = tuple(e)
            acc[u].add(w)
            acc[w].add(u)
        return {v: frozenset(s) for v, s in acc.items()}

    def adjacent(self, u: str, w: str) -> bool:
        return (
            (u, w) in self.directed
            or (w, u) in self.directed
            or frozenset((u, w)) in self.undirected
        )

    @cached_property
    def skeleton(self) -> frozenset[frozenset[str]]:
        pairs = set(self.undirected)
        for (u, w) in self.directed:
            pairs.add(frozenset((u, w)))
        return frozenset(pairs)

    def as_dah_edges(self) -> list[Hyperedge]:
        """(1,1)/(0,2)-uniform hyperedge encoding of this graph."""
        out = [Hyperedge({u}, {w}) for (u, w) in sorted(self.directed)]
        out.extend(
            Hyperedge((), pair) for pair in sorted(self.undirected, key=_sorted)
        )
        return out

    @cached_property
    def _mask_form(self):
        order = _sorted(self.vertices)
        index = {v: i for i, v in enumerate(order)}
        tails: list[int] = []
        heads: list[int] = []
        for (u, w) in sorted(self.directed):
            tails.append(1 << index[u])
            heads.append(1 << index[w])
        for pair in sorted(self.undirected, key=_sorted):
            u, w = _sorted(pair)
            tails.append(0)
            heads.append((1 << index[u]) | (1 << index[w]))
        if len(order) <= 63:
            from array import array

            tails = array("Q", tails)
            heads = array("Q", heads)
        return order, index, tails, heads


@dataclass(frozen=True)
class Complex:
    """A triple (alpha, b, beta): b connected inside one chain component,
    alpha and beta non-adjacent boundary vertices of both the component
    and b."""

    alpha: str
    b: frozenset[str]
    beta: str

    def key(self):
        return (self.alpha, _sorted(self.b), self.beta)


def build_chain_graph(
    vertices: Iterable[str],
    directed: Iterable[tuple[str, str]],
    undirected: Iterable[Iterable[str]],
) -> ChainGraph:
    vset = frozenset(vertices)
    for v in vset:
        if not isinstance(v, str) or not v:
            raise UnknownVertex(f"invalid vertex label: {v!r}")
    dset: set[tuple[str, str]] = set()
    for (u, w) in directed:
        if u == w:
            raise SelfLoop(f"self-loop on {u}")
        if u not in vset or w not in vset:
            raise UnknownVertex(f"arc {u} -> {w} uses an undeclared vertex")
        dset.add((u, w))
    uset: set[frozenset[str]] = set()
    for pair in undirected:
        pair = tuple(pair)
        if len(pair) != 2 or pair[0] == pair[1]:
            raise SelfLoop(f"undirected edge must join two distinct vertices: {pair}")
        u, w = pair
        if u not in vset or w not in vset:
            raise UnknownVertex(f"line {u} - {w} uses an undeclared vertex")
        uset.add(frozenset((u, w)))
    for (u, w) in dset:
        if (w, u) in dset:
            raise ConflictingEdge(f"both orientations present between {u} and {w}")
        if frozenset((u, w)) in uset:
            raise ConflictingEdge(f"{u}, {w} joined by both an arc and a line")
    g = ChainGraph(vset, frozenset(dset), frozenset(uset))
    probe = DAH(vset, tuple(g.as_dah_edges()))
    cycle = find_partially_directed_cycle(probe)
    if cycle is not None:
        from .dah import _render_cycle

        raise CycleDetected(cycle, _render_cycle(probe, cycle))
    return g


def cg_chain_components(g: ChainGraph) -> ComponentPartition:
    """Connected components of the undirected subgraph."""
    adj = g.neighbors
    seen: set[str] = set()
    comps: list[tuple[str, ...]] = []
    for start in _sorted(g.vertices):
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


def cg_boundary_of_set(g: ChainGraph, s: Iterable[str]) -> frozenset[str]:
    ss = frozenset(s)
    out: set[str] = set()
    for v in ss:
        out |= g.parents[v] | g.neighbors[v]
    return frozenset(out - ss)


def cg_anterior_set(g: ChainGraph, s: Iterable[str]) -> frozenset[str]:
    ss = set(s)
    missing = ss - g.vertices
    if missing:
        raise UnknownVertex("unknown vertices: " + " ".join(sorted(missing)))
    while True:
        bd = cg_boundary_of_set(g, ss)
        if not bd:
            return frozenset(ss)
        ss |= bd


def induced_chain_graph(g: ChainGraph, s: Iterable[str]) -> ChainGraph:
    ss = frozenset(s)
    missing = ss - g.vertices
    if missing:
        raise UnknownVertex("unknown vertices: " + " ".join(sorted(missing)))
    return ChainGraph(
        ss,
        frozenset((u, w) for (u, w) in g.directed if u in ss and w in ss),
        frozenset(p for p in g.undirected if p <= ss),
    )


def moral_graph(g: ChainGraph) -> UndirectedGraph:
    """Undirected skeleton plus a complete graph on bd(tau) per component."""
    edges = set(g.skeleton)
    for comp in cg_chain_components(g):
        bd = sorted(cg_boundary_of_set(g, comp))
        for u, w in combinations(bd, 2):
            edges.add(frozenset((u, w)))
    return UndirectedGraph(g.vertices, frozenset(edges))


def maximal_cliques(u: UndirectedGraph) -> list[tuple[str, ...]]:
    """All inclusion-maximal cliques (isolated vertices count as singletons).

    Bron-Kerbosch with pivoting; exact enumeration, exponential worst case.
    Output: each clique sorted, list sorted lexicographically.
    """
    if not u.vertices:
        return []
    adj = u.adjacency
    out: list[tuple[str, ...]] = []

    def expand(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            out.append(_sorted(r))
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & set(adj[v]), x & set(adj[v]))
            p.remove(v)
            x.add(v)

    expand(set(), set(u.vertices), set())
    return sorted(out)


def _connected_subsets(vertices: tuple[str, ...], adj) -> list[frozenset[str]]:
    """All nonempty connected subsets, in increasing size order."""
    out: list[frozenset[str]] = []
    for size in range(1, len(vertices) + 1):
        for combo in combinations(vertices, size):
            cset = set(combo)
            seen = {combo[0]}
            queue = deque([combo[0]])
            while queue:
                v = queue.popleft()
                for w in adj[v]:
                    if w in cset and w not in seen:
                        seen.add(w)
                        queue.append(w)
            if len(seen) == size:
                out.append(frozenset(cset))
    return out


def minimal_complexes(g: ChainGraph) -> list[Complex]:
    """Enumerate all minimal complexes by exhaustive subset search.

    Components larger than 15 vertices raise ComplexSearchTooLarge.
    """
    results: list[Complex] = []
    by_pair: dict[tuple[str, str], list[frozenset[str]]] = {}
    for comp in cg_chain_components(g):
        if len(comp) > 15:
            raise ComplexSearchTooLarge(
                f"chain component with {len(comp)} vertices exceeds the search bound"
            )
        bd_tau = cg_boundary_of_set(g, comp)
        if len(bd_tau) < 2:
            continue
        adj = g.neighbors
        for b in _connected_subsets(comp, adj):
            cand = bd_tau & cg_boundary_of_set(g, b)
            for alpha, beta in combinations(sorted(cand), 2):
                if not g.adjacent(alpha, beta):
                    by_pair.setdefault((alpha, beta), []).append(b)
    for (alpha, beta), bs in by_pair.items():
        for b in bs:
            if not any(other < b for other in bs):
                results.append(Complex(alpha, b, beta))
    results.sort(key=lambda c: c.key())
    return results


def ug_separates(
    u: UndirectedGraph,
    a: Iterable[str],
    b: Iterable[str],
    c: Iterable[str],
) -> bool:
    """True iff c blocks every path between a and b (BFS on the rest)."""
    aset, bset, cset = frozenset(a), frozenset(b), frozenset(c)
    for name, s in (("a", aset), ("b", bset), ("c", cset)):
        missing = s - u.vertices
        if missing:
            raise UnknownVertex(
                f"set {name} uses unknown vertices: " + " ".join(sorted(missing))
            )
    if aset & bset or aset & cset or bset & cset:
        raise OverlappingSets("a, b, c must be pairwise disjoint")
    if not aset or not bset:
        return True
    adj = u.adjacency
    reached = set(aset)
    queue = deque(aset)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w in cset or w in reached:
                continue
            if w in bset:
                return False
            reached.add(w)
            queue.append(w)
    return True
