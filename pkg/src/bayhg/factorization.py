"""Discrete factor systems and joint assembly.

A joint distribution is assembled per chain component: the factors whose
scopes are the maximal edges over that component are multiplied and
normalized over the component's variables for every configuration of its
parents, and the per-component conditionals multiply to the joint.  The
chain-graph variant does the same with the maximal cliques of each
moralized component graph.

Configuration order is row-major with the last scope variable varying
fastest; state order is as declared.  Products drop to log space when a
factor carries entries below 1e-300.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .chain_graph import (
    ChainGraph,
    cg_chain_components,
    induced_chain_graph,
    maximal_cliques,
    moral_graph,
)
from .dah import DAH, Hyperedge, _sorted, chain_components
from .errors import (
    InvalidFactor,
    InvalidProbability,
    NotAComponent,
    ScopeMismatch,
    ZeroNormalizer,
)

TINY = 1e-300


@dataclass(frozen=True)
class DiscreteDomain:
    """Finite ordered state space of one variable."""

    variable: str
    states: tuple[str, ...]

    def __init__(self, variable: str, states: Sequence[str]):
        states = tuple(states)
        if not states:
            raise InvalidFactor(f"variable {variable} has an empty domain")
        if len(set(states)) != len(states):
            raise InvalidFactor(f"variable {variable} has duplicate state labels")
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "states", states)

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise InvalidFactor(
                f"state {state!r} not in domain of {self.variable}"
            ) from None


Domains = Mapping[str, DiscreteDomain]


def make_domains(spec: Mapping[str, Sequence[str] | DiscreteDomain]) -> dict[str, DiscreteDomain]:
    out: dict[str, DiscreteDomain] = {}
    for var, states in spec.items():
        if isinstance(states, DiscreteDomain):
            out[var] = states
        else:
            out[var] = DiscreteDomain(var, states)
    return out


@dataclass(frozen=True, eq=False)
class Factor:
    """Non-negative table over an ordered variable scope."""

    scope: tuple[str, ...]
    values: np.ndarray

    def value_at(self, assignment: Mapping[str, str], domains: Domains) -> float:
        idx = tuple(domains[v].index(assignment[v]) for v in self.scope)
        return float(self.values[idx])

    def flat(self) -> list[float]:
        return [float(x) for x in self.values.reshape(-1)]


def make_factor(scope: Sequence[str], table, domains: Domains) -> Factor:
    """Build a validated factor; flat tables are row-major in scope order."""
    scope = tuple(scope)
    if len(set(scope)) != len(scope):
        raise InvalidFactor(f"repeated variable in scope {scope}")
    for v in scope:
        if v not in domains:
            raise InvalidFactor(f"no domain declared for {v}")
    shape = tuple(domains[v].size for v in scope)
    arr = np.asarray(table, dtype=float)
    if arr.ndim == 1:
        expected = int(np.prod(shape)) if scope else 1
        if arr.size != expected:
            raise InvalidFactor(
                f"table for scope {scope} has {arr.size} entries, expected {expected}"
            )
        arr = arr.reshape(shape)
    elif arr.shape != shape:
        raise InvalidFactor(
            f"table for scope {scope} has shape {arr.shape}, expected {shape}"
        )
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise InvalidFactor(f"table for scope {scope} must be finite and non-negative")
    return Factor(scope, arr)


@dataclass(frozen=True, eq=False)
class JointTable:
    """Probability table over the full (sorted) variable scope."""

    scope: tuple[str, ...]
    domains: dict[str, DiscreteDomain]
    probs: np.ndarray

    def prob(self, assignment: Mapping[str, str]) -> float:
        idx = tuple(self.domains[v].index(assignment[v]) for v in self.scope)
        return float(self.probs[idx])

    def flat(self) -> list[float]:
        return [float(x) for x in self.probs.reshape(-1)]

    def configurations(self):
        """Iterate (assignment dict, probability) row-major."""
        for idx in np.ndindex(self.probs.shape):
            yield (
                {v: self.domains[v].states[i] for v, i in zip(self.scope, idx)},
                float(self.probs[idx]),
            )


FactorAssignment = Mapping


def h_star(h: DAH, tau: Iterable[str]) -> DAH:
    """Sub-hypergraph on tau and its parents keeping the edges whose
    (nonempty) head lies inside tau."""
    tset = frozenset(tau)
    part = chain_components(h)
    if tset not in part.as_sets():
        raise NotAComponent(
            "{%s} is not a chain component" % " ".join(_sorted(tset))
        )
    pa: set[str] = set()
    for v in tset:
        pa |= h._parents[v]
    scope = tset | (pa - tset)
    kept = tuple(
        e
        for e in h.edges
        if e.head and e.head <= tset and e.vertices <= scope
    )
    return DAH(frozenset(scope), kept)


def maximal_edges(edges: Iterable[Hyperedge]) -> list[tuple[str, ...]]:
    """Inclusion-maximal edge vertex sets (tail and head merged)."""
    sets = {e.vertices for e in edges}
    out = [s for s in sets if not any(s < other for other in sets)]
    return sorted(_sorted(s) for s in out)


def factor_scopes(h: DAH) -> dict[tuple[str, ...], list[tuple[str, ...]]]:
    """Required factor scopes per chain component.

    A component whose vertices never occur in a head has no incoming or
    within-component edges; it is a single vertex and receives its own
    singleton scope so a prior table can be attached.
    """
    out: dict[tuple[str, ...], list[tuple[str, ...]]] = {}
    for comp in chain_components(h):
        scopes = maximal_edges(h_star(h, comp).edges)
        if not scopes:
            scopes = [comp]
        out[comp] = scopes
    return out


def cg_factor_scopes(g: ChainGraph) -> dict[tuple[str, ...], list[tuple[str, ...]]]:
    """Maximal cliques of each moralized component graph, per component.

    Cliques lying wholly inside the parent set carry factors that are
    constant over the component and cancel against the normalizer, so only
    cliques meeting the component are kept; this makes the scope family
    coincide with the hypergraph side's maximal edges.
    """
    out: dict[tuple[str, ...], list[tuple[str, ...]]] = {}
    for comp in cg_chain_components(g):
        cset = frozenset(comp)
        scope = set(comp)
        for v in comp:
            scope |= g.parents[v]
        sub = induced_chain_graph(g, scope)
        cliques = maximal_cliques(moral_graph(sub))
        out[comp] = [c for c in cliques if cset & frozenset(c)]
    return out


def _normalize_assignment(
    scopes_by_comp: Mapping[tuple[str, ...], list[tuple[str, ...]]],
    fa: FactorAssignment,
    domains: Domains,
) -> dict[frozenset[str], Factor]:
    provided: dict[frozenset[str], Factor] = {}
    for key, factor in fa.items():
        fkey = frozenset([key]) if isinstance(key, str) else frozenset(key)
        if fkey in provided:
            raise ScopeMismatch(f"scope {{{' '.join(sorted(fkey))}}} assigned twice")
        if frozenset(factor.scope) != fkey:
            raise ScopeMismatch(
                "factor scope %r does not match its key {%s}"
                % (factor.scope, " ".join(sorted(fkey)))
            )
        expected = tuple(domains[v].size for v in factor.scope)
        if factor.values.shape != expected:
            raise ScopeMismatch(
                f"factor on {factor.scope} has shape {factor.values.shape}, "
                f"expected {expected}"
            )
        provided[fkey] = factor
    required = {frozenset(s) for scopes in scopes_by_comp.values() for s in scopes}
    missing = required - set(provided)
    extra = set(provided) - required
    if missing or extra:
        detail = []
        if missing:
            detail.append(
                "missing: " + "; ".join(" ".join(sorted(s)) for s in sorted(missing, key=sorted))
            )
        if extra:
            detail.append(
                "extra: " + "; ".join(" ".join(sorted(s)) for s in sorted(extra, key=sorted))
            )
        raise ScopeMismatch("factor scopes do not match the structure (%s)" % "; ".join(detail))
    return provided


def _broadcast(factor: Factor, axes: tuple[str, ...], sizes: Mapping[str, int]) -> np.ndarray:
    inside = set(factor.scope)
    order = [v for v in axes if v in inside]
    perm = [factor.scope.index(v) for v in order]
    arr = factor.values.transpose(perm)
    shape = tuple(sizes[v] if v in inside else 1 for v in axes)
    return arr.reshape(shape)


def _offending_config(
    z: np.ndarray,
    axes: tuple[str, ...],
    domains: Domains,
    clamp: Mapping[str, str],
    free: set[str],
    report_vars: set[str],
) -> dict[str, str]:
    slicer = []
    kept_axes = []
    for i, v in enumerate(axes):
        if v in free:
            slicer.append(0)
        elif v in clamp:
            slicer.append(domains[v].index(clamp[v]))
        else:
            slicer.append(slice(None))
            kept_axes.append(v)
    view = z[tuple(slicer)]
    zeros = np.argwhere(view == 0)
    coords = zeros[0] if len(zeros) else []
    config = {v: clamp[v] for v in clamp if v in report_vars}
    for v, i in zip(kept_axes, coords):
        if v in report_vars:
            config[v] = domains[v].states[int(i)]
    return config


def _component_conditional(
    comp: tuple[str, ...],
    factors: list[Factor],
    axes: tuple[str, ...],
    sizes: Mapping[str, int],
    domains: Domains,
    clamp: Mapping[str, str],
) -> np.ndarray | None:
    free = {v for v in comp if v not in clamp}
    if not free:
        return None
    sum_axes = tuple(i for i, v in enumerate(axes) if v in free)
    report_vars = set().union(*(set(f.scope) for f in factors)) - free
    use_logs = any(
        f.values[f.values > 0].size and float(f.values[f.values > 0].min()) < TINY
        for f in factors
    )
    if not use_logs:
        num = np.ones(tuple(sizes[v] for v in axes))
        for f in factors:
            num = num * _broadcast(f, axes, sizes)
        z = num.sum(axis=sum_axes, keepdims=True)
        zero_mask = z == 0
        if _consistent_zero(zero_mask, axes, domains, clamp, free):
            raise ZeroNormalizer(
                comp, _offending_config(z, axes, domains, clamp, free, report_vars)
            )
        return np.where(zero_mask, 0.0, num / np.where(zero_mask, 1.0, z))
    with np.errstate(divide="ignore"):
        logs = np.zeros(tuple(sizes[v] for v in axes))
        for f in factors:
            logs = logs + np.log(_broadcast(f, axes, sizes))
    peak = logs.max(axis=sum_axes, keepdims=True)
    anchor = np.where(np.isfinite(peak), peak, 0.0)
    with np.errstate(divide="ignore"):
        logz = anchor + np.log(np.exp(logs - anchor).sum(axis=sum_axes, keepdims=True))
    zero_mask = ~np.isfinite(logz)
    if _consistent_zero(zero_mask, axes, domains, clamp, free):
        zval = np.where(zero_mask, 0.0, 1.0)
        raise ZeroNormalizer(
            comp, _offending_config(zval, axes, domains, clamp, free, report_vars)
        )
    return np.where(zero_mask, 0.0, np.exp(logs - np.where(zero_mask, 0.0, logz)))


def _consistent_zero(zero_mask, axes, domains, clamp, free) -> bool:
    slicer = []
    for v in axes:
        if v in free:
            slicer.append(0)
        elif v in clamp:
            slicer.append(domains[v].index(clamp[v]))
        else:
            slicer.append(slice(None))
    return bool(np.any(zero_mask[tuple(slicer)]))


def _assemble(
    axes: tuple[str, ...],
    domains: Domains,
    groups: list[tuple[tuple[str, ...], list[Factor]]],
    clamp: Mapping[str, str],
) -> JointTable:
    sizes = {v: domains[v].size for v in axes}
    result = np.ones(tuple(sizes[v] for v in axes))
    for comp, factors in groups:
        cond = _component_conditional(comp, factors, axes, sizes, domains, clamp)
        if cond is not None:
            result = result * cond
    for v, state in clamp.items():
        mask_shape = tuple(sizes[u] if u == v else 1 for u in axes)
        mask = np.zeros(mask_shape)
        idx = tuple(
            domains[v].index(state) if u == v else 0 for u in axes
        )
        mask[idx] = 1.0
        result = result * mask
    total = float(result.sum())
    if not math.isclose(total, 1.0, rel_tol=0.0, abs_tol=1e-9):
        raise InvalidFactor(f"assembled table sums to {total!r}, expected 1")
    return JointTable(axes, {v: domains[v] for v in axes}, result)


def _joint_axes(vertices: Iterable[str], domains: Domains) -> tuple[str, ...]:
    axes = _sorted(vertices)
    missing = [v for v in axes if v not in domains]
    if missing:
        raise ScopeMismatch("no domain for variables: " + " ".join(missing))
    return axes


def _dah_groups(h: DAH, fa, domains):
    scopes = factor_scopes(h)
    table = _normalize_assignment(scopes, fa, domains)
    return [
        (comp, [table[frozenset(s)] for s in comp_scopes])
        for comp, comp_scopes in scopes.items()
    ]


def _cg_groups(g: ChainGraph, fa, domains):
    scopes = cg_factor_scopes(g)
    table = _normalize_assignment(scopes, fa, domains)
    return [
        (comp, [table[frozenset(s)] for s in comp_scopes])
        for comp, comp_scopes in scopes.items()
    ]


def assemble_joint(h: DAH, domains: Domains, fa: FactorAssignment) -> JointTable:
    """Joint table of a DAH factor system; sums to one by construction.

    Raises ZeroNormalizer when some parent configuration annihilates a
    component's product, and ScopeMismatch unless the assignment covers
    exactly the scopes of :func:`factor_scopes`.
    """
    axes = _joint_axes(h.vertices, domains)
    return _assemble(axes, domains, _dah_groups(h, fa, domains), {})


def cg_assemble_joint(g: ChainGraph, domains: Domains, fa: FactorAssignment) -> JointTable:
    """Chain-graph joint from factors keyed by the moralized component
    cliques of :func:`cg_factor_scopes`."""
    axes = _joint_axes(g.vertices, domains)
    return _assemble(axes, domains, _cg_groups(g, fa, domains), {})


def noisy_or_factors(
    child: str,
    parents: Sequence[str],
    inhibition: Mapping[str, float],
    domains: Domains,
    preventing: Mapping[str, str],
    negative_state: str,
) -> list[Factor]:
    """Pairwise factors for a noisy-OR style interaction.

    Each parent p contributes a factor on {p, child} whose entry at
    (p preventing, child negative) is the inhibition probability q_p, so
    the product over parents carries the all-preventers negative
    probability prod(q_p); the first parent's factor holds the complement
    mass.  After per-parent-configuration normalization the conditional is
    exact at the all-preventing configuration, and exact everywhere for a
    single parent; an exact product form for the complement row does not
    exist with more than one parent, so mixed configurations are
    approximated.
    """
    if not parents:
        raise InvalidProbability("noisy-OR needs at least one parent")
    for p in parents:
        q = inhibition[p]
        if not (0.0 <= q <= 1.0) or not math.isfinite(q):
            raise InvalidProbability(f"inhibition for {p} must lie in [0, 1]")
    cdom = domains[child]
    if cdom.size != 2:
        raise InvalidProbability(f"child {child} must be binary")
    neg = cdom.index(negative_state)
    pos = 1 - neg
    total = math.prod(inhibition[p] for p in parents)
    out: list[Factor] = []
    for i, p in enumerate(parents):
        pdom = domains[p]
        if pdom.size != 2:
            raise InvalidProbability(f"parent {p} must be binary")
        prev = pdom.index(preventing[p])
        values = np.ones((2, 2))
        values[prev, neg] = inhibition[p]
        if i == 0:
            values[prev, pos] = 1.0 - total
            if len(parents) == 1:
                values[1 - prev, pos] = 0.0  # lone parent: exact CPT
        out.append(Factor((p, child), values))
    return out


def noisy_or_cpt(
    child: str,
    parents: Sequence[str],
    inhibition: Mapping[str, float],
    domains: Domains,
    preventing: Mapping[str, str],
    negative_state: str,
) -> Factor:
    """Exact noisy-OR conditional table on scope (*parents, child).

    The child-negative entry is the product of inhibition probabilities of
    the preventing parents; the positive entry is its complement to one.
    """
    for p in parents:
        q = inhibition[p]
        if not (0.0 <= q <= 1.0) or not math.isfinite(q):
            raise InvalidProbability(f"inhibition for {p} must lie in [0, 1]")
    scope = tuple(parents) + (child,)
    shape = tuple(domains[v].size for v in scope)
    cdom = domains[child]
    if cdom.size != 2:
        raise InvalidProbability(f"child {child} must be binary")
    neg = cdom.index(negative_state)
    arr = np.zeros(shape)
    for idx in np.ndindex(shape[:-1]):
        q = 1.0
        for p, i in zip(parents, idx):
            if domains[p].states[i] == preventing[p]:
                q *= inhibition[p]
        arr[idx + (neg,)] = q
        arr[idx + (1 - neg,)] = 1.0 - q
    return Factor(scope, arr)


def table_cells(scopes_by_comp: Mapping[tuple[str, ...], list[tuple[str, ...]]], domains: Domains) -> int:
    """Total number of table entries a scope family requires."""
    total = 0
    for scopes in scopes_by_comp.values():
        for s in scopes:
            total += int(np.prod([domains[v].size for v in s]))
    return total
