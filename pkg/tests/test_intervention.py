import itertools
import random

import numpy as np
import pytest

from bayhg.chain_graph import build_chain_graph, cg_chain_components
from bayhg.dah import Hyperedge, build_dah, is_acyclic
from bayhg.errors import InvalidState, UnknownVertex
from bayhg.factorization import (
    assemble_joint,
    cg_assemble_joint,
    cg_factor_scopes,
    factor_scopes,
    make_factor,
)
from bayhg.intervention import (
    InterventionSpec,
    cg_delete,
    cg_intervened_joint,
    cg_intervened_joint_via_redirect,
    cg_redirect,
    dah_normalize,
    dah_redirect,
    factorization_equivalent_cg,
    factorization_equivalent_dah,
    intervened_joint,
    intervened_joint_via_normal_form,
    intervened_joint_via_redirect,
)
from bayhg.projection import hypermoralize

from fixtures import (
    cg_wide,
    dah_collider_merged,
    dah_collider_split,
    dah_wide,
)
from genrandom import binary_domains, random_assignment, random_chain_graph


class TestCgRedirect:
    def test_wide_components(self):
        out = cg_redirect(cg_wide(), {"c"})
        assert cg_chain_components(out).components == (
            ("a",),
            ("b",),
            ("c",),
            ("d", "e"),
        )
        assert ("c", "d") in out.directed
        assert ("a", "c") not in out.directed  # arc into the target dropped

    def test_empty_targets_identity(self):
        g = cg_wide()
        assert cg_redirect(g, set()) == g

    def test_collider_isolates_target(self):
        g = build_chain_graph("abc", [("a", "c"), ("b", "c")], [])
        out = cg_redirect(g, {"c"})
        assert out.directed == frozenset() and out.undirected == frozenset()

    def test_edge_inside_targets_deleted(self):
        g = build_chain_graph("ab", [], [("a", "b")])
        out = cg_redirect(g, {"a", "b"})
        assert out.directed == frozenset() and out.undirected == frozenset()

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            cg_redirect(cg_wide(), {"z"})


class TestCgDelete:
    def test_wide(self):
        out = cg_delete(cg_wide(), {"c"})
        assert out.vertices == set("abde")
        assert out.directed == {("a", "d"), ("a", "e"), ("b", "d"), ("b", "e")}
        assert out.undirected == {frozenset("de")}

    def test_empty_targets(self):
        g = cg_wide()
        assert cg_delete(g, set()) == g

    def test_delete_all(self):
        out = cg_delete(cg_wide(), set("abcde"))
        assert not out.vertices


class TestDahRedirect:
    def test_wide(self):
        out = dah_redirect(dah_wide(), {"c"})
        assert out.edge_set == {
            Hyperedge(("a", "c"), ("d",)),
            Hyperedge(("a", "b"), ("d", "e")),
        }

    def test_empty_targets(self):
        h = dah_wide()
        assert dah_redirect(h, set()) == h

    def test_emptied_head_removed(self):
        h = build_dah("xy", [(("x",), ("y",))])
        out = dah_redirect(h, {"y"})
        assert out.edges == ()

    def test_result_acyclic(self):
        rng = random.Random(14)
        for _ in range(20):
            g = random_chain_graph(rng, rng.randint(2, 6))
            h = hypermoralize(g)
            targets = {
                v for v in sorted(h.vertices) if rng.random() < 0.4
            }
            assert is_acyclic(dah_redirect(h, targets))


class TestDahNormalize:
    def test_wide_pair_same_normal_form(self):
        h = dah_wide()
        hr = dah_redirect(h, {"c"})
        assert dah_normalize(h, {"c"}) == dah_normalize(hr, {"c"})
        assert dah_normalize(h, {"c"}).edge_set == {
            Hyperedge(("a", "b"), ("d", "e"))
        }

    def test_identity_when_nothing_applies(self):
        h = dah_wide()
        assert dah_normalize(h, set()) == h

    def test_domination(self):
        h = build_dah("xyz", [(("x",), ("y",)), (("x",), ("y", "z"))])
        out = dah_normalize(h, set())
        assert out.edge_set == {Hyperedge(("x",), ("y", "z"))}

    def test_idempotent(self):
        rng = random.Random(15)
        for _ in range(20):
            g = random_chain_graph(rng, rng.randint(2, 6))
            h = hypermoralize(g)
            targets = {v for v in sorted(h.vertices) if rng.random() < 0.4}
            nf = dah_normalize(h, targets)
            assert dah_normalize(nf, set()) == nf
            assert dah_normalize(nf, targets) == nf


class TestEquivalencePredicates:
    def test_cg_redirect_equivalent(self):
        g = cg_wide()
        assert factorization_equivalent_cg(g, {"c"}, cg_redirect(g, {"c"}), {"c"})

    def test_cg_trivial(self):
        g = cg_wide()
        assert factorization_equivalent_cg(g, set(), g, set())

    def test_cg_different(self):
        g1 = build_chain_graph("ab", [("a", "b")], [])
        g2 = build_chain_graph("ab", [], [("a", "b")])
        assert not factorization_equivalent_cg(g1, set(), g2, set())

    def test_dah_wide_pair(self):
        h = dah_wide()
        assert factorization_equivalent_dah(h, {"c"}, dah_redirect(h, {"c"}), {"c"})

    def test_dah_identical(self):
        h = dah_wide()
        assert factorization_equivalent_dah(h, {"c"}, h, {"c"})

    def test_collider_shapes_differ(self):
        assert not factorization_equivalent_dah(
            dah_collider_merged(), set(), dah_collider_split(), set()
        )

    def test_equivalence_relation_spot_checks(self):
        h = dah_wide()
        variants = [
            (h, frozenset({"c"})),
            (dah_redirect(h, {"c"}), frozenset({"c"})),
            (dah_normalize(h, {"c"}), frozenset({"c"})),
        ]
        for (x, ax) in variants:
            assert factorization_equivalent_dah(x, ax, x, ax)
        for (x, ax), (y, ay) in itertools.permutations(variants, 2):
            assert factorization_equivalent_dah(x, ax, y, ay)


def wide_tables(seed=0):
    domains = binary_domains("abcde")
    rng = random.Random(seed)
    fa = random_assignment(rng, factor_scopes(dah_wide()), domains)
    return domains, fa


def manual_wide_intervened(domains, fa, c0):
    """The clamped product spelled out with explicit loops."""
    pa = fa[frozenset("a")]
    pb = fa[frozenset("b")]
    acd = fa[frozenset(("a", "c", "d"))]
    abde = fa[frozenset(("a", "b", "d", "e"))]
    states = {v: domains[v].states for v in "abcde"}
    out = np.zeros((2, 2, 2, 2, 2))
    for ia, a in enumerate(states["a"]):
        za = sum(pa.value_at({"a": s}, domains) for s in states["a"])
        for ib, b in enumerate(states["b"]):
            zb = sum(pb.value_at({"b": s}, domains) for s in states["b"])
            for ic, c in enumerate(states["c"]):
                if c != c0:
                    continue
                z = 0.0
                for d in states["d"]:
                    for e in states["e"]:
                        cfg = {"a": a, "b": b, "c": c, "d": d, "e": e}
                        z += acd.value_at(cfg, domains) * abde.value_at(cfg, domains)
                for id_, d in enumerate(states["d"]):
                    for ie, e in enumerate(states["e"]):
                        cfg = {"a": a, "b": b, "c": c, "d": d, "e": e}
                        out[ia, ib, ic, id_, ie] = (
                            pa.value_at(cfg, domains)
                            / za
                            * pb.value_at(cfg, domains)
                            / zb
                            * acd.value_at(cfg, domains)
                            * abde.value_at(cfg, domains)
                            / z
                        )
    return out


class TestIntervenedJoint:
    def test_empty_spec_equals_assembly(self):
        domains, fa = wide_tables(1)
        h = dah_wide()
        a = assemble_joint(h, domains, fa)
        b = intervened_joint(h, domains, fa, InterventionSpec({}))
        assert np.allclose(a.probs, b.probs, atol=1e-12)

    def test_matches_manual_formula(self):
        domains, fa = wide_tables(2)
        joint = intervened_joint(dah_wide(), domains, fa, InterventionSpec({"c": "0"}))
        assert np.allclose(joint.probs, manual_wide_intervened(domains, fa, "0"), atol=1e-12)

    def test_inconsistent_configurations_zero(self):
        domains, fa = wide_tables(3)
        joint = intervened_joint(dah_wide(), domains, fa, InterventionSpec({"c": "1"}))
        idx = [slice(None)] * 5
        idx[2] = 0  # c = "0"
        assert np.all(joint.probs[tuple(idx)] == 0.0)
        assert abs(joint.probs.sum() - 1.0) < 1e-9

    def test_invalid_state(self):
        domains, fa = wide_tables(4)
        with pytest.raises(InvalidState):
            intervened_joint(dah_wide(), domains, fa, InterventionSpec({"c": "9"}))

    def test_unknown_target(self):
        domains, fa = wide_tables(5)
        with pytest.raises(UnknownVertex):
            intervened_joint(dah_wide(), domains, fa, InterventionSpec({"z": "0"}))


class TestRouteAgreement:
    @pytest.mark.parametrize("seed", range(8))
    def test_wide_four_routes(self, seed):
        domains, fa = wide_tables(seed)
        h = dah_wide()
        g = cg_wide()
        assert cg_factor_scopes(g) == factor_scopes(h)
        spec = InterventionSpec({"c": "0"})
        direct_h = intervened_joint(h, domains, fa, spec)
        direct_g = cg_intervened_joint(g, domains, fa, spec)
        via_hr = intervened_joint_via_redirect(h, domains, fa, spec)
        via_gr = cg_intervened_joint_via_redirect(g, domains, fa, spec)
        via_nf = intervened_joint_via_normal_form(h, domains, fa, spec)
        for other in (direct_g, via_hr, via_gr, via_nf):
            assert np.allclose(direct_h.probs, other.probs, atol=1e-9)

    @pytest.mark.parametrize("seed", range(12))
    def test_random_chain_graph_routes(self, seed):
        rng = random.Random(1100 + seed)
        g = random_chain_graph(rng, rng.randint(2, 6))
        h = hypermoralize(g)
        domains = binary_domains(g.vertices)
        fa = random_assignment(rng, cg_factor_scopes(g), domains)
        verts = sorted(g.vertices)
        targets = rng.sample(verts, rng.randint(1, min(2, len(verts))))
        spec = InterventionSpec({v: rng.choice(("0", "1")) for v in targets})
        direct_g = cg_intervened_joint(g, domains, fa, spec)
        direct_h = intervened_joint(h, domains, fa, spec)
        via_gr = cg_intervened_joint_via_redirect(g, domains, fa, spec)
        via_hr = intervened_joint_via_redirect(h, domains, fa, spec)
        via_nf = intervened_joint_via_normal_form(h, domains, fa, spec)
        for other in (direct_h, via_gr, via_hr, via_nf):
            assert np.allclose(direct_g.probs, other.probs, atol=1e-9)

    def test_redirected_assembly_with_indicator_matches(self):
        # the worked identity: redirect, attach a point-mass prior, assemble
        domains, fa = wide_tables(6)
        h = dah_wide()
        spec = InterventionSpec({"c": "0"})
        hr = dah_redirect(h, {"c"})
        fa2 = dict(fa)
        fa2[frozenset("c")] = make_factor(("c",), [1.0, 0.0], domains)
        plain = assemble_joint(hr, domains, fa2)
        direct = intervened_joint(h, domains, fa, spec)
        assert np.allclose(plain.probs, direct.probs, atol=1e-12)
