"""Ground-truth verification against explicit joint tables.

Conditional independence is decided by exact marginalization; statement
enumeration sweeps every assignment of the variables to the three query
roles.  These routines are deliberately independent of the separation
machinery so the two can check each other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .dah import DAH, _sorted
from .errors import OverlappingSets, TooManyVariables
from .factorization import JointTable
from .markov import CIStatement, hg_separates

MAX_ORACLE_VARIABLES = 7


def _role_axes(j: JointTable, s: Iterable[str]) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(j.scope) if v in frozenset(s))


def holds_ci(j: JointTable, a, b, c, tol: float = 1e-7) -> bool:
    """Exact test of a independent of b given c in the joint table.

    For every configuration of c with marginal mass above ``tol``, the gap
    |P(a,b|c) - P(a|c)P(b|c)| must stay within ``tol``.  Zero-mass
    conditioning configurations are skipped.
    """
    aset, bset, cset = frozenset(a), frozenset(b), frozenset(c)
    if aset & bset or aset & cset or bset & cset:
        raise OverlappingSets("a, b, c must be pairwise disjoint")
    if not aset or not bset:
        return True
    other = tuple(
        i for i, v in enumerate(j.scope) if v not in aset | bset | cset
    )
    p_abc = j.probs.sum(axis=other, keepdims=True)
    ax_a = _role_axes(j, aset)
    ax_b = _role_axes(j, bset)
    p_c = p_abc.sum(axis=ax_a + ax_b, keepdims=True)
    p_ac = p_abc.sum(axis=ax_b, keepdims=True)
    p_bc = p_abc.sum(axis=ax_a, keepdims=True)
    mask = p_c > tol
    denom = np.where(mask, p_c, 1.0)
    gap = np.abs(p_abc / denom - (p_ac / denom) * (p_bc / denom))
    return bool(np.all(np.where(mask, gap, 0.0) <= tol))


def _role_assignments(variables: tuple[str, ...]):
    """Yield all (a, b, c) with a, b nonempty, canonical a-before-b order."""
    n = len(variables)
    for code in range(4**n):
        a, b, c = [], [], []
        x = code
        for v in variables:
            r = x & 3
            x >>= 2
            if r == 1:
                a.append(v)
            elif r == 2:
                b.append(v)
            elif r == 3:
                c.append(v)
        if not a or not b:
            continue
        if tuple(b) < tuple(a):
            continue  # symmetric twin
        yield frozenset(a), frozenset(b), frozenset(c)


def enumerate_ci(j: JointTable, tol: float = 1e-7) -> list[CIStatement]:
    """All conditional independence statements holding in the joint."""
    if len(j.scope) > MAX_ORACLE_VARIABLES:
        raise TooManyVariables(
            f"{len(j.scope)} variables exceed the enumeration bound "
            f"({MAX_ORACLE_VARIABLES})"
        )
    out = [
        CIStatement(a, b, c)
        for a, b, c in _role_assignments(j.scope)
        if holds_ci(j, a, b, c, tol)
    ]
    return sorted(out, key=CIStatement.key)


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    premises: tuple[CIStatement, ...]
    conclusion: CIStatement

    def render(self) -> str:
        prem = " and ".join(p.render() for p in self.premises)
        return f"{self.axiom}: {prem} without {self.conclusion.render()}"


def check_semigraphoid(
    statements: Iterable[CIStatement],
    universe: Iterable[str],
    include_optional: bool = False,
) -> list[AxiomViolation]:
    """Report symmetry/decomposition/weak-union/contraction instantiations
    whose premises are present but whose conclusion is missing.

    Intersection and composition are checked only on request; they fail
    for some distributions and are never asserted.
    """
    uni = frozenset(universe)
    stmts = list(dict.fromkeys(statements))
    for s in stmts:
        stray = (s.a | s.b | s.c) - uni
        if stray:
            raise OverlappingSets(
                "statement uses variables outside the universe: "
                + " ".join(sorted(stray))
            )
    have = {(s.a, s.b, s.c) for s in stmts}
    have |= {(b, a, c) for (a, b, c) in have}  # S1 closure for matching

    def present(a, b, c) -> bool:
        return (a, b, c) in have

    violations: list[AxiomViolation] = []

    def note(axiom, premises, a, b, c):
        if not present(a, b, c):
            violations.append(AxiomViolation(axiom, tuple(premises), CIStatement(a, b, c)))

    def splits(s: frozenset[str]):
        items = _sorted(s)
        for code in range(1, 2 ** len(items) - 1):
            left = frozenset(v for i, v in enumerate(items) if code >> i & 1)
            yield left, s - left

    for s in stmts:
        # statements are symmetric; instantiate premises on both sides
        for a, bd, c in ((s.a, s.b, s.c), (s.b, s.a, s.c)):
            if len(bd) >= 2:
                for b, d in splits(bd):
                    note("S2", [s], a, b, c)  # decomposition
                    note("S3", [s], a, b, c | d)  # weak union
    for s1 in stmts:
        for a, d, c in ((s1.a, s1.b, s1.c), (s1.b, s1.a, s1.c)):
            for s2 in stmts:
                for a2, b, c2 in ((s2.a, s2.b, s2.c), (s2.b, s2.a, s2.c)):
                    if a2 != a or c2 != c | d or b & d:
                        continue
                    note("S4", [s1, s2], a, b | d, c)  # contraction
    if include_optional:
        for s1 in stmts:
            for a, b, cd in ((s1.a, s1.b, s1.c), (s1.b, s1.a, s1.c)):
                for s2 in stmts:
                    for a2, d, c2 in ((s2.a, s2.b, s2.c), (s2.b, s2.a, s2.c)):
                        if a2 != a:
                            continue
                        # S5 intersection: a_|_b | c+d and a_|_d | c+b
                        if d <= cd and c2 == (cd - d) | b:
                            note("S5", [s1, s2], a, b | d, cd - d)
                        # S6 composition: a_|_b | c and a_|_d | c
                        if c2 == cd and not (d & b):
                            note("S6", [s1, s2], a, b | d, cd)
    unique = list(dict.fromkeys(violations))
    return sorted(unique, key=lambda v: (v.axiom, v.conclusion.key()))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of sweeping every separation statement against a joint."""

    variables: tuple[str, ...]
    checked: int
    separated: int
    counterexamples: tuple[CIStatement, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def render(self) -> str:
        lines = [
            f"variables: {' '.join(self.variables)}",
            f"queries: {self.checked}",
            f"separations: {self.separated}",
            f"counterexamples: {len(self.counterexamples)}",
        ]
        lines.extend("  " + s.render() for s in self.counterexamples)
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "variables": list(self.variables),
                "queries": self.checked,
                "separations": self.separated,
                "counterexamples": [s.render() for s in self.counterexamples],
                "result": "PASS" if self.passed else "FAIL",
            },
            indent=2,
            sort_keys=True,
        )


def verify_global_markov(h: DAH, j: JointTable, tol: float = 1e-7) -> VerificationReport:
    """Check that every separation-certified statement holds in the joint.

    A counterexample would falsify the implementation, not the underlying
    factorization-implies-separation property.
    """
    variables = _sorted(h.vertices)
    if len(variables) > MAX_ORACLE_VARIABLES:
        raise TooManyVariables(
            f"{len(variables)} variables exceed the verification bound "
            f"({MAX_ORACLE_VARIABLES})"
        )
    checked = 0
    separated = 0
    bad: list[CIStatement] = []
    for a, b, c in _role_assignments(variables):
        checked += 1
        if hg_separates(h, a, b, c):
            separated += 1
            if not holds_ci(j, a, b, c, tol):
                bad.append(CIStatement(a, b, c))
    return VerificationReport(variables, checked, separated, tuple(bad))
