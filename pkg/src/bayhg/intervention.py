"""Causal intervention: graph surgery, factorization equivalence, and
intervened joint assembly.

Clamping a target set A reshapes each structure without touching the
attached tables: undirected edges at intervened chain-graph vertices turn
into outgoing arcs (and arcs into A are dropped), while hyperedge heads
transfer their intervened vertices to the tail.  Intervened joints
renormalize each component only over its free variables, with the clamped
variables carrying point mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .chain_graph import ChainGraph, build_chain_graph
from .dah import DAH, Hyperedge, _sorted, build_dah
from .errors import InvalidState, UnknownVertex
from .factorization import (
    Domains,
    Factor,
    FactorAssignment,
    JointTable,
    _assemble,
    _broadcast,
    _cg_groups,
    _dah_groups,
    _joint_axes,
    _normalize_assignment,
    assemble_joint,
    cg_assemble_joint,
    cg_factor_scopes,
    factor_scopes,
    make_factor,
)


@dataclass(frozen=True)
class InterventionSpec:
    """Forced values for a set of target variables."""

    values: Mapping[str, str]

    def __init__(self, values: Mapping[str, str]):
        object.__setattr__(self, "values", dict(values))

    @property
    def targets(self) -> frozenset[str]:
        return frozenset(self.values)

    def validate(self, vertices: frozenset[str], domains: Domains) -> None:
        missing = self.targets - vertices
        if missing:
            raise UnknownVertex(
                "intervention targets unknown vertices: " + " ".join(sorted(missing))
            )
        for var, state in self.values.items():
            if state not in domains[var].states:
                raise InvalidState(f"{state!r} is not a state of {var}")


def _check_targets(vertices: frozenset[str], a: Iterable[str]) -> frozenset[str]:
    aset = frozenset(a)
    missing = aset - vertices
    if missing:
        raise UnknownVertex("unknown vertices: " + " ".join(sorted(missing)))
    return aset


def cg_redirect(g: ChainGraph, a: Iterable[str]) -> ChainGraph:
    """Turn undirected edges at intervened vertices into outgoing arcs,
    then drop every arc pointing into the target set.

    An undirected edge with both endpoints intervened is deleted outright:
    both replacement arcs would point into the target set anyway.
    """
    aset = _check_targets(g.vertices, a)
    directed = set(g.directed)
    undirected = set()
    for pair in g.undirected:
        hit = pair & aset
        if not hit:
            undirected.add(pair)
        elif len(hit) == 1:
            (u,) = hit
            (w,) = pair - aset
            directed.add((u, w))
        # both endpoints intervened: edge disappears
    directed = {(u, w) for (u, w) in directed if w not in aset}
    return build_chain_graph(g.vertices, directed, undirected)


def cg_delete(g: ChainGraph, a: Iterable[str]) -> ChainGraph:
    """Remove the target vertices together with all incident edges."""
    aset = _check_targets(g.vertices, a)
    keep = g.vertices - aset
    return ChainGraph(
        keep,
        frozenset((u, w) for (u, w) in g.directed if u in keep and w in keep),
        frozenset(p for p in g.undirected if p <= keep),
    )


def dah_redirect(h: DAH, a: Iterable[str]) -> DAH:
    """Transfer intervened head vertices into the tail of each hyperedge;
    edges whose head empties are removed."""
    aset = _check_targets(h.vertices, a)
    edges: dict[tuple[frozenset, frozenset], Hyperedge] = {}
    for e in h.edges:
        hit = e.head & aset
        if hit:
            head = e.head - hit
            if not head:
                continue
            e = Hyperedge(e.tail | hit, head)
        edges.setdefault((e.tail, e.head), e)
    return build_dah(h.vertices, list(edges.values()))


def dah_normalize(h: DAH, a: Iterable[str]) -> DAH:
    """Shrinking normal form: repeatedly shrink edges past the target set,
    drop empty-headed edges, and drop edges dominated tail-and-head by
    another, until stable."""
    aset = _check_targets(h.vertices, a)
    current: list[tuple[frozenset, frozenset]] = [(e.tail, e.head) for e in h.edges]
    while True:
        shrunk = [(t - aset, hd - aset) for (t, hd) in current]
        shrunk = [(t, hd) for (t, hd) in shrunk if hd]
        unique = list(dict.fromkeys(shrunk))
        pruned = [
            (t, hd)
            for (t, hd) in unique
            if not any(
                t <= t2 and hd <= h2 and (t, hd) != (t2, h2) for (t2, h2) in unique
            )
        ]
        if pruned == current:
            break
        current = pruned
    edges = sorted((Hyperedge(t, hd) for (t, hd) in current), key=Hyperedge.sort_key)
    return build_dah(h.vertices, edges)


def factorization_equivalent_cg(
    g1: ChainGraph, a1: Iterable[str], g2: ChainGraph, a2: Iterable[str]
) -> bool:
    """True iff deleting each target set leaves the same labeled graph."""
    return cg_delete(g1, a1) == cg_delete(g2, a2)


def factorization_equivalent_dah(
    h1: DAH, a1: Iterable[str], h2: DAH, a2: Iterable[str]
) -> bool:
    """True iff the shrinking normal forms coincide as edge sets."""
    n1 = dah_normalize(h1, a1)
    n2 = dah_normalize(h2, a2)
    return n1.edge_set == n2.edge_set and n1.vertices == n2.vertices


def intervened_joint(
    h: DAH, domains: Domains, fa: FactorAssignment, spec: InterventionSpec
) -> JointTable:
    """Joint after clamping: each component renormalizes only over its
    free variables; configurations inconsistent with the forced values get
    probability zero.  With an empty spec this is plain assembly."""
    spec.validate(h.vertices, domains)
    axes = _joint_axes(h.vertices, domains)
    return _assemble(axes, domains, _dah_groups(h, fa, domains), spec.values)


def cg_intervened_joint(
    g: ChainGraph, domains: Domains, fa: FactorAssignment, spec: InterventionSpec
) -> JointTable:
    """Chain-graph analogue of :func:`intervened_joint`."""
    spec.validate(g.vertices, domains)
    axes = _joint_axes(g.vertices, domains)
    return _assemble(axes, domains, _cg_groups(g, fa, domains), spec.values)


def _indicator(var: str, state: str, domains: Domains) -> Factor:
    table = [0.0] * domains[var].size
    table[domains[var].index(state)] = 1.0
    return make_factor((var,), table, domains)


def _clamp_factor(factor: Factor, values: Mapping[str, str], domains: Domains) -> Factor:
    """Restrict a factor to the slice consistent with the forced values."""
    keep = tuple(v for v in factor.scope if v not in values)
    slicer = tuple(
        slice(None) if v not in values else domains[v].index(values[v])
        for v in factor.scope
    )
    return Factor(keep, factor.values[slicer])


def _reassign(
    old_scopes: Mapping[tuple[str, ...], list[tuple[str, ...]]],
    fa: Mapping,
    new_scopes: Mapping[tuple[str, ...], list[tuple[str, ...]]],
    spec: InterventionSpec,
    domains: Domains,
    clamp_tables: bool,
) -> dict[frozenset[str], Factor]:
    """Re-key a factor assignment onto a surgered structure's scopes.

    A factor lands in a scope of the new component that hosts the free
    part of its old component; factors constant over every owning
    component's free part cancel against the normalizer and are dropped.
    New scopes left without factors receive ones tables, and intervened
    singleton scopes receive point-mass indicators.
    """
    targets = spec.targets
    provided = _normalize_assignment(old_scopes, fa, domains)
    owners: dict[frozenset[str], list[frozenset[str]]] = {}
    for comp, scopes in old_scopes.items():
        for s in scopes:
            owners.setdefault(frozenset(s), []).append(frozenset(comp))

    new_flat = [frozenset(s) for scopes in new_scopes.values() for s in scopes]
    new_comps = [frozenset(c) for c in new_scopes]
    acc: dict[frozenset[str], list[Factor]] = {s: [] for s in new_flat}

    for fkey, factor in provided.items():
        if clamp_tables:
            factor = _clamp_factor(factor, spec.values, domains)
        free = frozenset(factor.scope)
        fpart = frozenset()
        for comp in owners[fkey]:
            fpart = free & (comp - targets)
            if fpart:
                break
        if not fpart:
            continue  # constant over every owner's free part: cancels
        host = next(c for c in new_comps if fpart <= c)
        slot = next(
            (frozenset(s) for s in new_scopes[_sorted(host)] if free <= frozenset(s)),
            None,
        )
        if slot is None:
            raise AssertionError(f"no scope hosts factor over {sorted(free)}")
        acc[slot].append(factor)

    out: dict[frozenset[str], Factor] = {}
    for s in new_flat:
        scope = _sorted(s)
        sizes = {v: domains[v].size for v in scope}
        prod = np.ones(tuple(sizes[v] for v in scope))
        for f in acc[s]:
            prod = prod * _broadcast(f, scope, sizes)
        out[s] = Factor(scope, prod)
    for s in new_flat:
        if len(s) == 1:
            (v,) = s
            if v in spec.values:
                out[s] = _indicator(v, spec.values[v], domains)
    return out


def intervened_joint_via_redirect(
    h: DAH, domains: Domains, fa: FactorAssignment, spec: InterventionSpec
) -> JointTable:
    """Intervened joint computed on the redirected hypergraph.

    Redirection preserves surviving edge vertex sets, so the original
    factors re-key onto the redirected scopes unchanged; the clamped
    variables, now isolated, receive indicator priors.
    """
    spec.validate(h.vertices, domains)
    hr = dah_redirect(h, spec.targets)
    fa2 = _reassign(
        factor_scopes(h), fa, factor_scopes(hr), spec, domains, clamp_tables=False
    )
    return assemble_joint(hr, domains, fa2)


def cg_intervened_joint_via_redirect(
    g: ChainGraph, domains: Domains, fa: FactorAssignment, spec: InterventionSpec
) -> JointTable:
    """Intervened joint computed on the redirected chain graph, with the
    original clique tables clamped and re-absorbed into the new cliques."""
    spec.validate(g.vertices, domains)
    gr = cg_redirect(g, spec.targets)
    fa2 = _reassign(
        cg_factor_scopes(g), fa, cg_factor_scopes(gr), spec, domains, clamp_tables=True
    )
    return cg_assemble_joint(gr, domains, fa2)


def intervened_joint_via_normal_form(
    h: DAH, domains: Domains, fa: FactorAssignment, spec: InterventionSpec
) -> JointTable:
    """Intervened joint computed on the shrinking normal form, with the
    original tables clamped and re-absorbed into the surviving scopes."""
    spec.validate(h.vertices, domains)
    nf = dah_normalize(h, spec.targets)
    fa2 = _reassign(
        factor_scopes(h), fa, factor_scopes(nf), spec, domains, clamp_tables=True
    )
    return assemble_joint(nf, domains, fa2)
