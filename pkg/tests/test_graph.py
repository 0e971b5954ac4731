import math
import random

import pytest

import graphmat as gm
from graphmat import fileio, oracle
from graphmat.errors import DomainError, GraphMatError, IndexBoundsError

from conftest import (
    DATA_DIR,
    assert_matches_dense,
    load_fixture_adjacency,
    random_matrix,
)

ARITH = gm.semiring_by_name("arith-real")
MINPLUS = gm.semiring_by_name("min-plus")


def fixture_incidence(sr=ARITH, hyper=False):
    name = ("seven_vertex_multi_hyper_edges.tsv" if hyper
            else "seven_vertex_edges.tsv")
    edges = fileio.read_edge_list(DATA_DIR / name,
                                  value_parser=sr.domain.parse_text)
    return fileio.incidence_from_edges(sr, edges, 7)


def random_digraph(rng, n, density=0.15, weights=False):
    rows, cols, vals = [], [], []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                rows.append(i)
                cols.append(j)
                vals.append(round(rng.uniform(0.5, 9.5), 3)
                            if weights else 1.0)
    sr = MINPLUS if weights else ARITH
    return gm.build(sr, (n, n), (rows, cols, vals))


class TestAdjacencyFromIncidence:
    def test_fixture_projection(self):
        e_out, e_in = fixture_incidence()
        assert e_out.dims == (12, 7) and e_in.dims == (12, 7)
        a = gm.adjacency_from_incidence(ARITH, e_out, e_in)
        assert a == load_fixture_adjacency()
        assert a.nnz == 12

    def test_duplicate_edge_sums_to_two(self):
        e_out, e_in = fixture_incidence(hyper=True)
        a = gm.adjacency_from_incidence(ARITH, e_out, e_in)
        # edge 13 duplicates edge 8 (4 -> 5)
        assert a.get(4, 5) == 2.0
        want = oracle.dense_mxm(
            ARITH,
            oracle.densify(gm.transpose(e_out), 0.0),
            oracle.densify(e_in, 0.0))
        assert_matches_dense(a, want, 0.0)

    def test_hyper_edge_fans_out(self):
        e_out, e_in = fixture_incidence(hyper=True)
        a = gm.adjacency_from_incidence(ARITH, e_out, e_in)
        # edge 12 has in-vertices {1, 3} from out-vertex 5
        assert a.get(5, 1) == 1.0
        assert a.get(5, 3) == 1.0

    def test_empty_incidence(self):
        e = gm.empty_matrix(ARITH, 1, 5)
        assert gm.adjacency_from_incidence(ARITH, e, e).nnz == 0

    def test_edge_count_mismatch(self):
        e_out = gm.empty_matrix(ARITH, 2, 5)
        e_in = gm.empty_matrix(ARITH, 3, 5)
        with pytest.raises(gm.DimensionError):
            gm.adjacency_from_incidence(ARITH, e_out, e_in)

    def test_roundtrip_matches_direct_build(self, rng):
        for _ in range(10):
            n = rng.randint(2, 12)
            a = random_digraph(rng, n)
            tri = gm.extract_tuples(a)
            records = [fileio.EdgeRecord([int(r)], [int(c)], v)
                       for r, c, v in tri]
            if not records:
                continue
            e_out, e_in = fileio.incidence_from_edges(ARITH, records, n)
            assert gm.adjacency_from_incidence(ARITH, e_out, e_in) == a


class TestLaplacian:
    def test_single_edge(self):
        e = gm.build(ARITH, (1, 2), ([0, 0], [0, 1], [-1.0, 1.0]))
        lap = gm.laplacian_from_incidence(e)
        d = oracle.densify(lap, 0.0)
        assert d.data == [[1.0, -1.0], [-1.0, 1.0]]

    def test_path_graph(self):
        e = gm.build(ARITH, (2, 3),
                     ([0, 0, 1, 1], [0, 1, 1, 2], [-1.0, 1.0, -1.0, 1.0]))
        lap = gm.laplacian_from_incidence(e)
        d = oracle.densify(lap, 0.0)
        assert d.data == [[1.0, -1.0, 0.0],
                          [-1.0, 2.0, -1.0],
                          [0.0, -1.0, 1.0]]

    def test_row_sums_zero_and_degrees(self, rng):
        for _ in range(10):
            n = rng.randint(2, 10)
            seen = set()
            rows, cols, vals = [], [], []
            k = 0
            for _ in range(rng.randint(1, 2 * n)):
                u, v = rng.randrange(n), rng.randrange(n)
                if u == v or (u, v) in seen:
                    continue
                seen.add((u, v))
                rows += [k, k]
                cols += [u, v]
                vals += [-1.0, 1.0]
                k += 1
            if k == 0:
                continue
            e = gm.build(ARITH, (k, n), (rows, cols, vals))
            lap = gm.laplacian_from_incidence(e)
            d = oracle.densify(lap, 0.0)
            degree = [0] * n
            for u, v in seen:
                degree[u] += 1
                degree[v] += 1
            for i in range(n):
                assert sum(d.data[i]) == 0.0
                assert d[i, i] == degree[i]

    def test_symmetric_for_symmetrized_edges(self):
        pairs = [(0, 1), (1, 0), (1, 2), (2, 1)]
        rows, cols, vals = [], [], []
        for k, (u, v) in enumerate(pairs):
            rows += [k, k]
            cols += [u, v]
            vals += [-1.0, 1.0]
        lap = gm.laplacian_from_incidence(
            gm.build(ARITH, (len(pairs), 3), (rows, cols, vals)))
        assert gm.transpose(lap) == lap

    def test_bad_row_rejected(self):
        e = gm.build(ARITH, (1, 3), ([0, 0], [0, 1], [1.0, 1.0]))
        with pytest.raises(GraphMatError):
            gm.laplacian_from_incidence(e)


class TestBfs:
    def test_fixture_level_one(self):
        a = load_fixture_adjacency()
        res = gm.bfs_levels(a, [3])
        assert res.levels[3] == 0
        assert {v for v, l in enumerate(res.levels) if l == 1} == {0, 2}

    def test_source_without_out_edges(self):
        a = gm.build(ARITH, (3, 3), ([0], [1], [1.0]))
        res = gm.bfs_levels(a, [2])
        assert res.levels == [None, None, 0]

    def test_random_vs_queue_oracle(self):
        rng = random.Random(42)
        for _ in range(50):
            n = rng.randint(2, 40)
            a = random_digraph(rng, n)
            src = rng.randrange(n)
            got = gm.bfs_levels(a, [src]).levels
            want = oracle.dense_bfs(oracle.densify(a, 0.0), [src], 0.0)
            assert got == want

    def test_multisource(self):
        rng = random.Random(17)
        for _ in range(10):
            n = rng.randint(3, 30)
            a = random_digraph(rng, n)
            sources = rng.sample(range(n), rng.randint(1, 3))
            got = gm.bfs_levels(a, sources).levels
            want = oracle.dense_bfs(oracle.densify(a, 0.0), sources, 0.0)
            assert got == want

    def test_max_hops_truncates(self):
        a = load_fixture_adjacency()
        res = gm.bfs_levels(a, [3], max_hops=1)
        reached = {v for v, l in enumerate(res.levels) if l is not None}
        assert reached == {3, 0, 2}

    def test_levels_monotone(self, rng):
        for _ in range(15):
            n = rng.randint(2, 30)
            a = random_digraph(rng, n)
            res = gm.bfs_levels(a, [0])
            tri = gm.extract_tuples(a)
            in_edges = {}
            for u, v, _ in tri:
                in_edges.setdefault(v, []).append(u)
            for v, lvl in enumerate(res.levels):
                if lvl and lvl > 0:
                    assert any(res.levels[u] == lvl - 1
                               for u in in_edges.get(v, []))

    def test_parents_point_one_level_up(self):
        a = load_fixture_adjacency()
        res = gm.bfs_levels(a, [3])
        for v, p in enumerate(res.parents):
            if p is not None:
                assert res.levels[v] == res.levels[p] + 1
                assert a.get(p, v) is not None

    def test_out_of_bounds_source(self):
        a = load_fixture_adjacency()
        with pytest.raises(IndexBoundsError):
            gm.bfs_levels(a, [7])

    def test_gf2_mode_cancels_even_multiplicity(self):
        # two distinct length-1 walks 0->2 (via the multi-structure of
        # xor counting): with or-and the vertex is reached, with
        # xor-and paths of even count cancel at the 2-hop frontier
        a = gm.build(ARITH, (4, 4),
                     (([0, 0, 1, 2]), ([1, 2, 3, 3]), [1.0] * 4))
        default = gm.bfs_levels(a, [0]).levels
        gf2 = gm.bfs_levels(a, [0], gf2=True).levels
        assert default == [0, 1, 1, 2]
        assert gf2[3] is None  # two 2-hop walks cancel under xor


class TestSssp:
    def test_single_edge(self):
        a = gm.build(MINPLUS, (2, 2), ([0], [1], [3.5]))
        assert gm.sssp_minplus(a, 0) == [0.0, 3.5]

    def test_random_vs_dijkstra(self):
        rng = random.Random(8)
        for _ in range(30):
            n = rng.randint(2, 24)
            a = random_digraph(rng, n, weights=True)
            src = rng.randrange(n)
            got = gm.sssp_minplus(a, src)
            want = oracle.dense_sssp(oracle.densify(a, math.inf), src,
                                     math.inf)
            assert got == pytest.approx(want, rel=1e-10)

    def test_unit_weights_match_bfs(self):
        rng = random.Random(13)
        for _ in range(10):
            n = rng.randint(2, 24)
            a = random_digraph(rng, n)
            w = gm.build(MINPLUS, a.dims,
                         (a.row_arrays(), a.indices, [1.0] * a.nnz))
            src = rng.randrange(n)
            dist = gm.sssp_minplus(w, src)
            levels = gm.bfs_levels(a, [src]).levels
            for v in range(n):
                if levels[v] is None:
                    assert math.isinf(dist[v])
                else:
                    assert dist[v] == levels[v]

    def test_triangle_relaxation(self, rng):
        for _ in range(10):
            n = rng.randint(2, 20)
            a = random_digraph(rng, n, weights=True)
            dist = gm.sssp_minplus(a, 0)
            for u, v, w in gm.extract_tuples(a):
                assert dist[v] <= dist[u] + w + 1e-12

    def test_negative_weight_rejected(self):
        a = gm.build(MINPLUS, (2, 2), ([0], [1], [-1.0]))
        with pytest.raises(DomainError):
            gm.sssp_minplus(a, 0)


class TestUnionIntersection:
    def test_union_with_empty(self, rng):
        a = random_matrix(ARITH, rng, 5, 5)
        assert gm.graph_union(ARITH, a, gm.empty_matrix(ARITH, 5, 5)) == a

    def test_intersection_structure(self, rng):
        a = random_matrix(ARITH, rng, 6, 6)
        b = random_matrix(ARITH, rng, 6, 6)
        got = gm.graph_intersection(ARITH, a, b)
        sa = set(zip(a.row_arrays().tolist(), a.indices.tolist()))
        sb = set(zip(b.row_arrays().tolist(), b.indices.tolist()))
        assert set(zip(got.row_arrays().tolist(),
                       got.indices.tolist())) == sa & sb

    def test_union_max_plus_keeps_max_weight(self):
        sr = gm.semiring_by_name("max-plus")
        rng = random.Random(4)
        for _ in range(10):
            a = random_matrix(sr, rng, 6, 6)
            b = random_matrix(sr, rng, 6, 6)
            got = gm.graph_union(sr, a, b)
            want = oracle.dense_ewise_add(sr.add, sr.zero,
                                          oracle.densify(a, sr.zero),
                                          oracle.densify(b, sr.zero))
            assert_matches_dense(got, want, sr.zero)


class TestGraphHandle:
    def test_consistency_of_dual_views(self):
        e_out, e_in = fixture_incidence()
        h = gm.GraphHandle(adjacency=load_fixture_adjacency(),
                           incidence_out=e_out, incidence_in=e_in)
        assert h.vertex_count == 7
        assert h.edge_count == 12
        assert h.check_consistent(ARITH)

    def test_inconsistent_views_detected(self):
        e_out, e_in = fixture_incidence(hyper=True)
        h = gm.GraphHandle(adjacency=load_fixture_adjacency(),
                           incidence_out=e_out, incidence_in=e_in)
        assert not h.check_consistent(ARITH)
