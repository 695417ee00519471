"""Seed builders, corona product, count formulas, and edge-list IO."""

import random

import numpy as np
import pytest

from coronagraphs.graph import (
    CapExceededError,
    CoronaPlan,
    CountOverflowError,
    EdgeListError,
    Graph,
    SeedDescriptor,
    bfs_distances,
    complete_graph,
    connected_component_count,
    corona_iterate,
    corona_product,
    cycle_graph,
    edge_count_formula,
    node_count_formula,
    path_graph,
    read_edge_list,
    star_graph,
    write_edge_list,
)

from conftest import random_connected_graph

SEED_SPECS = ["complete:3", "path:3", "cycle:4", "star:4", "complete:5"]


def plan_for(spec: str, m: int, node_cap: int = 2_000_000) -> CoronaPlan:
    return CoronaPlan(seed=SeedDescriptor.from_spec(spec), m=m, node_cap=node_cap)


class TestBuilders:
    def test_complete(self):
        g = complete_graph(3)
        assert (g.node_count, g.edge_count) == (3, 3)
        assert complete_graph(1).node_count == 1
        assert complete_graph(2).edge_count == 1

    def test_path(self):
        g = path_graph(3)
        assert (g.node_count, g.edge_count) == (3, 2)

    def test_star(self):
        g = star_graph(4)
        assert (g.node_count, g.edge_count) == (4, 3)
        assert g.degree(0) == 3
        assert all(g.degree(i) == 1 for i in range(1, 4))

    def test_cycle(self):
        g = cycle_graph(4)
        assert (g.node_count, g.edge_count) == (4, 4)
        assert np.all(g.degrees == 2)

    @pytest.mark.parametrize("builder,k", [
        (complete_graph, 0), (path_graph, 0), (cycle_graph, 2), (star_graph, 2),
    ])
    def test_out_of_range(self, builder, k):
        with pytest.raises(ValueError):
            builder(k)


class TestGraphValidation:
    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph.from_edges(3, [(0, 0)])

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_out_of_range_endpoint(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph.from_edges(2, [(0, 5)])

    def test_symmetry_and_sorted_rows(self):
        g = Graph.from_edges(4, [(2, 0), (3, 1), (0, 1)])
        for u in range(4):
            for v in g.neighbors(u):
                assert u in g.neighbors(v)
            assert list(g.neighbors(u)) == sorted(g.neighbors(u))

    def test_handshake(self):
        g = star_graph(5)
        assert int(g.degrees.sum()) == 2 * g.edge_count

    def test_immutable(self):
        g = path_graph(3)
        with pytest.raises(ValueError):
            g.targets[0] = 7


class TestCoronaProduct:
    def test_p3_with_itself(self):
        g = corona_product(path_graph(3), path_graph(3))
        assert (g.node_count, g.edge_count) == (12, 17)

    def test_k3_with_itself(self):
        g = corona_product(complete_graph(3), complete_graph(3))
        assert (g.node_count, g.edge_count) == (12, 21)

    def test_single_node_with_k3_is_k4(self):
        g = corona_product(Graph.from_edges(1, []), complete_graph(3))
        assert (g.node_count, g.edge_count) == (4, 6)
        assert np.all(g.degrees == 3)

    def test_index_layout(self):
        # originals keep their indices; copy i is the block 3+3i..3+3i+2 in
        # seed order, joined entirely to node i
        p3 = path_graph(3)
        g = corona_product(p3, p3)
        for u, v in p3.edge_array():
            assert v in g.neighbors(u)
        for i in range(3):
            base = 3 + 3 * i
            assert base + 1 in g.neighbors(base)
            assert base + 2 in g.neighbors(base + 1)
            assert base + 2 not in g.neighbors(base)
            for a in range(3):
                assert base + a in g.neighbors(i)

    def test_empty_seed_rejected(self):
        with pytest.raises(ValueError):
            corona_product(path_graph(2), Graph.from_edges(0, []))

    def test_random_seeds_keep_invariants(self):
        rng = random.Random(20240811)
        for _ in range(25):
            n = rng.randrange(2, 9)
            g = random_connected_graph(n, rng)
            seed = random_connected_graph(rng.randrange(1, 9), rng)
            prod = corona_product(g, seed)
            # symmetry and simplicity survive round-tripping the edge array
            rebuilt = Graph.from_edges(prod.node_count, prod.edge_array())
            assert rebuilt.edge_count == prod.edge_count
            assert int(prod.degrees.sum()) == 2 * prod.edge_count
            expected_edges = (g.edge_count
                              + g.node_count * (seed.edge_count + seed.node_count))
            assert prod.edge_count == expected_edges


class TestCoronaIterate:
    def test_m0_returns_seed(self):
        plan = plan_for("path:3", 0)
        g = corona_iterate(plan)
        assert (g.node_count, g.edge_count) == (3, 2)
        assert np.array_equal(g.edge_array(), path_graph(3).edge_array())

    def test_k3_node_counts(self):
        for m, nodes in [(1, 12), (2, 48), (3, 192)]:
            g = corona_iterate(plan_for("complete:3", m))
            assert g.node_count == nodes

    @pytest.mark.parametrize("spec", SEED_SPECS)
    @pytest.mark.parametrize("m", range(5))
    def test_counts_match_formulas(self, spec, m):
        plan = plan_for(spec, m)
        g = corona_iterate(plan)
        n, e = plan.n, plan.seed_edges
        assert g.node_count == node_count_formula(n, m)
        assert g.edge_count == edge_count_formula(n, e, m)

    def test_nodes_added_per_step(self):
        # block-index bookkeeping: a step appends its new nodes after the
        # existing ones, so the additions at step i are exactly the index
        # range [N_{i-1}, N_i) with n^2 (n+1)^(i-1) entries
        seed = complete_graph(3)
        n = 3
        g = seed
        for i in range(1, 5):
            prev = g
            g = corona_product(g, seed)
            added = g.node_count - prev.node_count
            assert added == n * n * (n + 1) ** (i - 1)
            # originals keep their indices and each gained n corona edges
            assert np.array_equal(g.degrees[:prev.node_count],
                                  prev.degrees + n)

    def test_connectivity_preserved(self):
        g = corona_iterate(plan_for("path:3", 2))
        assert connected_component_count(g) == 1
        assert int((bfs_distances(g, 0) >= 0).sum()) == g.node_count

    def test_disconnected_seed_components(self):
        two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
        sd = SeedDescriptor(kind="file", param="-", graph=two_edges, connected=False)
        g1 = corona_iterate(CoronaPlan(seed=sd, m=1))
        assert connected_component_count(g1) == 2

    def test_cap_enforced(self):
        with pytest.raises(CapExceededError):
            corona_iterate(plan_for("complete:3", 40))
        # the cap refuses materialization, but the formulas still work
        assert node_count_formula(3, 40) == 3 * 4 ** 40


class TestCountFormulas:
    def test_node_counts(self):
        assert node_count_formula(3, 6) == 12288
        assert node_count_formula(3, 0) == 3
        assert node_count_formula(4, 4) == 2500
        assert node_count_formula(3, 7) == 49152

    def test_edge_counts(self):
        assert edge_count_formula(3, 3, 1) == 21
        assert edge_count_formula(3, 2, 1) == 17
        assert edge_count_formula(5, 7, 0) == 7

    def test_overflow_is_an_error(self):
        with pytest.raises(CountOverflowError):
            node_count_formula(3, 300)
        with pytest.raises(CountOverflowError):
            edge_count_formula(3, 3, 300)

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            node_count_formula(0, 1)
        with pytest.raises(ValueError):
            edge_count_formula(3, -1, 1)


class TestSeedDescriptor:
    def test_parse(self):
        sd = SeedDescriptor.from_spec("complete:3")
        assert sd.kind == "complete"
        assert sd.label == "complete:3"
        assert sd.connected

    def test_bad_specs(self):
        for spec in ["complete", "complete:", "triangle:3", "complete:x"]:
            with pytest.raises(ValueError):
                SeedDescriptor.from_spec(spec)

    def test_disconnected_flag(self, tmp_path):
        p = tmp_path / "g.edges"
        p.write_text("# n=4\n0 1\n2 3\n")
        sd = SeedDescriptor.from_spec(f"file:{p}")
        assert not sd.connected


class TestEdgeListIO:
    def test_roundtrip(self, tmp_path):
        g = corona_product(complete_graph(3), complete_graph(3))
        p = tmp_path / "g.edges"
        write_edge_list(g, p)
        back = read_edge_list(p)
        assert back.node_count == g.node_count
        assert np.array_equal(back.edge_array(), g.edge_array())

    def test_header_fixes_node_count(self, tmp_path):
        p = tmp_path / "g.edges"
        p.write_text("# n=5\n0 1\n")
        g = read_edge_list(p)
        assert g.node_count == 5
        assert g.edge_count == 1

    def test_comments_and_blank_lines(self, tmp_path):
        p = tmp_path / "g.edges"
        p.write_text("# a comment\n\n0 1\n# another\n1 2\n")
        assert read_edge_list(p).edge_count == 2

    @pytest.mark.parametrize("content", [
        "0 0\n",            # self-loop
        "0 1\n1 0\n",       # duplicate pair
        "0 one\n",          # non-integer
        "0 1 2\n",          # wrong arity
    ])
    def test_malformed(self, tmp_path, content):
        p = tmp_path / "bad.edges"
        p.write_text(content)
        with pytest.raises(EdgeListError):
            read_edge_list(p)

    def test_writer_sorted(self, tmp_path):
        g = Graph.from_edges(4, [(3, 2), (1, 0), (2, 0)])
        p = tmp_path / "g.edges"
        write_edge_list(g, p)
        assert p.read_text().splitlines() == ["# n=4", "0 1", "0 2", "2 3"]
