"""Markov-property queries: separation tests, statement enumeration,
Markov equivalence.

Separation for both structures goes through the moralization route: close
the query sets into the smallest ancestral set, take the induced structure,
moralize its (shadow) skeleton and test undirected separation.  The hot
path is delegated to the bitmask kernel in :mod:`bayhg.separation`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chain_graph import ChainGraph, minimal_complexes
from .dah import DAH, _sorted, relations
from .errors import OverlappingSets, UnknownVertex, VertexSetMismatch
from .projection import shadow
from .separation import moral_separates


@dataclass(frozen=True)
class CIStatement:
    """a independent of b given c; canonical form keeps a before b."""

    a: frozenset[str]
    b: frozenset[str]
    c: frozenset[str]

    def __init__(self, a: Iterable[str], b: Iterable[str], c: Iterable[str] = ()):
        aa, bb, cc = frozenset(a), frozenset(b), frozenset(c)
        if not aa or not bb:
            raise OverlappingSets("a and b must be nonempty")
        if aa & bb or aa & cc or bb & cc:
            raise OverlappingSets("a, b, c must be pairwise disjoint")
        if _sorted(bb) < _sorted(aa):
            aa, bb = bb, aa
        object.__setattr__(self, "a", aa)
        object.__setattr__(self, "b", bb)
        object.__setattr__(self, "c", cc)

    def key(self):
        return (_sorted(self.a), _sorted(self.b), _sorted(self.c))

    def render(self) -> str:
        left = " ".join(_sorted(self.a))
        right = " ".join(_sorted(self.b))
        if self.c:
            return f"{left} _|_ {right} | {' '.join(_sorted(self.c))}"
        return f"{left} _|_ {right}"

    def __repr__(self):
        return f"CIStatement({self.render()})"


def _validate_query(vertices, a, b, c):
    aset, bset, cset = frozenset(a), frozenset(b), frozenset(c)
    missing = (aset | bset | cset) - vertices
    if missing:
        raise UnknownVertex("unknown vertices: " + " ".join(sorted(missing)))
    if aset & bset or aset & cset or bset & cset:
        raise OverlappingSets("a, b, c must be pairwise disjoint")
    return aset, bset, cset


def _masks(index, *sets):
    out = []
    for s in sets:
        m = 0
        for v in s:
            m |= 1 << index[v]
        out.append(m)
    return out


def hg_separates(h: DAH, a: Iterable[str], b: Iterable[str], c: Iterable[str]) -> bool:
    """Global separation test on a DAH.

    True iff c separates a and b in the moral graph of the shadow of the
    sub-hypergraph induced on the smallest ancestral set containing all
    three.  Vacuously true when a or b is empty.
    """
    aset, bset, cset = _validate_query(h.vertices, a, b, c)
    order, index, tails, heads = h._mask_form
    am, bm, cm = _masks(index, aset, bset, cset)
    return moral_separates(len(order), tails, heads, am, bm, cm)


def cg_global_separates(
    g: ChainGraph, a: Iterable[str], b: Iterable[str], c: Iterable[str]
) -> bool:
    """Chain-graph global separation via the same moralization route."""
    aset, bset, cset = _validate_query(g.vertices, a, b, c)
    order, index, tails, heads = g._mask_form
    am, bm, cm = _masks(index, aset, bset, cset)
    return moral_separates(len(order), tails, heads, am, bm, cm)


def pairwise_statements(h: DAH) -> list[CIStatement]:
    """One statement per non-adjacent pair (v, u) with u a non-descendant
    of v: v independent of u given nd(v) minus the pair.  Canonicalized
    and deduplicated."""
    out: set[CIStatement] = set()
    rel = {v: relations(h, v) for v in h.vertices}
    for v in _sorted(h.vertices):
        rv = rel[v]
        adjacent = rv.pa | rv.nb | {u for u in h.vertices if v in rel[u].pa}
        for u in _sorted(rv.nd):
            if u == v or u in adjacent:
                continue
            out.add(CIStatement({v}, {u}, rv.nd - {v, u}))
    return sorted(out, key=CIStatement.key)


def local_statements(h: DAH) -> list[CIStatement]:
    """Per vertex v with nd(v) beyond its closure: v independent of
    nd(v) \\ cl(v) given bd(v)."""
    out: set[CIStatement] = set()
    for v in _sorted(h.vertices):
        rv = relations(h, v)
        rest = rv.nd - rv.cl
        if rest:
            out.add(CIStatement({v}, rest, rv.bd))
    return sorted(out, key=CIStatement.key)


def markov_equivalent(h1: DAH, h2: DAH) -> bool:
    """True iff the shadows share skeleton and minimal complexes."""
    if h1.vertices != h2.vertices:
        raise VertexSetMismatch("structures are defined on different vertex sets")
    g1, g2 = shadow(h1), shadow(h2)
    if g1.skeleton != g2.skeleton:
        return False
    c1 = {c.key() for c in minimal_complexes(g1)}
    c2 = {c.key() for c in minimal_complexes(g2)}
    return c1 == c2
