"""Bridges between hypergraphs and chain graphs.

``shadow`` flattens every hyperedge into arrows plus a head clique.
``hypermoralize`` builds the canonical chain-graph lift: per-vertex child
cliques first, then one edge per nonempty intersection of heads within each
chain component, with tails merged across the contributing edges.  The two
maps are mutually inverse on chain graphs: shadow(hypermoralize(g)) == g.
"""

from __future__ import annotations

from .chain_graph import (
    ChainGraph,
    UndirectedGraph,
    build_chain_graph,
    cg_chain_components,
    maximal_cliques,
)
from .dah import DAH, Hyperedge, build_dah


def shadow(h: DAH) -> ChainGraph:
    """Chain-graph projection: head cliques become lines, tail-to-head
    pairs become arcs.  Preserves every vertex's parents and neighbors."""
    directed: set[tuple[str, str]] = set()
    undirected: set[frozenset[str]] = set()
    for e in h.edges:
        for y in e.head:
            for x in e.tail:
                directed.add((x, y))
            for y2 in e.head:
                if y2 != y:
                    undirected.add(frozenset((y, y2)))
    return build_chain_graph(h.vertices, directed, undirected)


def _undirected_cliques_within(g: ChainGraph, vertices: set[str]) -> list[tuple[str, ...]]:
    edges = frozenset(p for p in g.undirected if p <= vertices)
    return maximal_cliques(UndirectedGraph(frozenset(vertices), edges))


def hypermoralize(g: ChainGraph) -> DAH:
    """Canonical hypergraph lift of a chain graph.

    Stage one collects, for every vertex v, one edge ({v}, K) per maximal
    clique K of the undirected subgraph induced on v's children, plus
    (empty, K) for each maximal undirected clique of g (two or more
    vertices) not already inside a collected head.  Stage two replaces
    these, per chain component, with one edge per nonempty intersection B
    of collected heads, its tail being the union of tails of every
    collected edge whose head contains B.
    """
    staged: list[Hyperedge] = []
    for v in sorted(g.vertices):
        kids = set(g.children[v])
        if kids:
            for k in _undirected_cliques_within(g, kids):
                staged.append(Hyperedge({v}, k))
    covered = [e.head for e in staged]
    linked = {v for pair in g.undirected for v in pair}
    for k in _undirected_cliques_within(g, linked):
        kset = frozenset(k)
        if not any(kset <= head for head in covered):
            staged.append(Hyperedge((), kset))

    out: dict[tuple[frozenset, frozenset], Hyperedge] = {}
    for comp in cg_chain_components(g):
        cset = frozenset(comp)
        relevant = [e for e in staged if e.head & cset]
        heads = {e.head for e in relevant}
        closure = set(heads)
        frontier = set(heads)
        while frontier:
            fresh: set[frozenset[str]] = set()
            for b in frontier:
                for head in heads:
                    cut = b & head
                    if cut and cut not in closure:
                        fresh.add(cut)
            closure |= fresh
            frontier = fresh
        for b in closure:
            tail: set[str] = set()
            for e in relevant:
                if b <= e.head:
                    tail |= e.tail
            edge = Hyperedge(tail, b)
            out[(edge.tail, edge.head)] = edge
    ordered = sorted(out.values(), key=Hyperedge.sort_key)
    return build_dah(g.vertices, ordered)


def is_lwf_dah(h: DAH) -> bool:
    """True iff h is the hypermoralization of its own shadow."""
    return hypermoralize(shadow(h)) == h
