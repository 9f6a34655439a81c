import random

import pytest

from bayhg.dah import build_dah
from bayhg.errors import OverlappingSets, UnknownVertex, VertexSetMismatch
from bayhg.markov import (
    CIStatement,
    cg_global_separates,
    hg_separates,
    local_statements,
    markov_equivalent,
    pairwise_statements,
)
from bayhg.projection import hypermoralize

from fixtures import (
    dah_cascade,
    dah_collider_split,
    dah_square_merged,
    dah_square_split,
)
from genrandom import random_chain_graph, random_dah
from oracles import composed_separation


def stmt(a, b, c=()):
    return CIStatement(a, b, c)


class TestCIStatement:
    def test_canonical_swap(self):
        s = CIStatement({"z"}, {"a"}, {"m"})
        assert s.a == {"a"} and s.b == {"z"}

    def test_disjointness_enforced(self):
        with pytest.raises(OverlappingSets):
            CIStatement({"a"}, {"a"}, set())

    def test_render(self):
        assert stmt({"a"}, {"b"}, {"c", "d"}).render() == "a _|_ b | c d"
        assert stmt({"a"}, {"b"}).render() == "a _|_ b"


class TestHgSeparates:
    def test_collider_split_unconditional(self):
        h = dah_collider_split()
        assert hg_separates(h, {"a"}, {"b"}, set())

    def test_collider_split_conditioned(self):
        h = dah_collider_split()
        assert not hg_separates(h, {"a"}, {"b"}, {"c"})

    def test_disconnected(self):
        h = build_dah("ab", [])
        assert hg_separates(h, {"a"}, {"b"}, set())

    def test_vacuous_empty_side(self):
        assert hg_separates(dah_cascade(), set(), {"b"}, {"c"})

    def test_symmetry(self):
        h = dah_cascade()
        assert hg_separates(h, {"a"}, {"f"}, {"c", "d"}) == hg_separates(
            h, {"f"}, {"a"}, {"c", "d"}
        )

    def test_overlap_rejected(self):
        with pytest.raises(OverlappingSets):
            hg_separates(dah_cascade(), {"a"}, {"a"}, set())

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            hg_separates(dah_cascade(), {"a"}, {"z"}, set())

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_composed_pipeline(self, seed):
        rng = random.Random(500 + seed)
        h = random_dah(rng, rng.randint(2, 7))
        verts = sorted(h.vertices)
        for _ in range(30):
            pool = verts[:]
            rng.shuffle(pool)
            na = rng.randint(1, min(2, len(pool) - 1))
            nb = rng.randint(1, min(2, len(pool) - na))
            nc = rng.randint(0, len(pool) - na - nb)
            a = set(pool[:na])
            b = set(pool[na : na + nb])
            c = set(pool[na + nb : na + nb + nc])
            assert hg_separates(h, a, b, c) == composed_separation(h, a, b, c)

    @pytest.mark.parametrize("seed", range(10))
    def test_depends_only_on_shadow(self, seed):
        h1 = dah_square_merged()
        h2 = dah_square_split()
        rng = random.Random(seed)
        verts = sorted(h1.vertices)
        pool = verts[:]
        rng.shuffle(pool)
        a, b = {pool[0]}, {pool[1]}
        c = set(pool[2 : 2 + rng.randint(0, 2)])
        assert hg_separates(h1, a, b, c) == hg_separates(h2, a, b, c)


class TestCgGlobalSeparates:
    def test_collider(self):
        from bayhg.chain_graph import build_chain_graph

        g = build_chain_graph("abc", [("a", "c"), ("b", "c")], [])
        assert cg_global_separates(g, {"a"}, {"b"}, set())
        assert not cg_global_separates(g, {"a"}, {"b"}, {"c"})

    def test_disconnected(self):
        from bayhg.chain_graph import build_chain_graph

        g = build_chain_graph("ab", [], [])
        assert cg_global_separates(g, {"a"}, {"b"}, set())

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_lift(self, seed):
        rng = random.Random(600 + seed)
        g = random_chain_graph(rng, rng.randint(2, 6))
        h = hypermoralize(g)
        verts = sorted(g.vertices)
        for _ in range(40):
            pool = verts[:]
            rng.shuffle(pool)
            a = {pool[0]}
            b = {pool[1]}
            c = set(pool[2 : 2 + rng.randint(0, len(pool) - 2)])
            assert cg_global_separates(g, a, b, c) == hg_separates(h, a, b, c)


class TestStatements:
    def test_pairwise_cascade_includes_root_pair(self):
        stmts = pairwise_statements(dah_cascade())
        assert stmt({"a"}, {"b"}) in stmts

    def test_pairwise_complete_component_empty(self):
        h = build_dah("abc", [((), ("a", "b", "c"))])
        assert pairwise_statements(h) == []

    def test_pairwise_two_isolated(self):
        h = build_dah("xy", [])
        assert pairwise_statements(h) == [stmt({"x"}, {"y"})]

    def test_local_cascade_e(self):
        stmts = local_statements(dah_cascade())
        assert stmt({"e"}, {"a", "b"}, {"c", "d", "f"}) in stmts

    def test_local_singleton_none(self):
        assert local_statements(build_dah("v", [])) == []

    def test_local_two_isolated_deduplicates(self):
        h = build_dah("xy", [])
        assert local_statements(h) == [stmt({"x"}, {"y"})]

    def test_sorted_canonical_output(self):
        for fn in (pairwise_statements, local_statements):
            stmts = fn(dah_cascade())
            assert stmts == sorted(stmts, key=CIStatement.key)
            assert len(stmts) == len(set(stmts))

    @pytest.mark.parametrize("seed", range(25))
    def test_families_certified_by_global(self, seed):
        # local and pairwise statements are separation statements
        rng = random.Random(650 + seed)
        h = random_dah(rng, rng.randint(2, 7))
        for s in pairwise_statements(h) + local_statements(h):
            assert hg_separates(h, s.a, s.b, s.c), s.render()


class TestMarkovEquivalent:
    def test_reflexive(self):
        h = dah_cascade()
        assert markov_equivalent(h, h)

    def test_square_pair(self):
        assert markov_equivalent(dah_square_merged(), dah_square_split())

    def test_chain_vs_collider(self):
        chain = build_dah("abc", [(("a",), ("b",)), (("b",), ("c",))])
        collider = dah_collider_split()
        assert not markov_equivalent(chain, collider)

    def test_vertex_mismatch(self):
        with pytest.raises(VertexSetMismatch):
            markov_equivalent(dah_cascade(), build_dah("ab", []))
