"""Graph metrics against known small cases, plus independent-method
cross-checks: the word-space girth search is compared with a plain BFS
cycle detection on the materialized graph, and eccentricities are checked
to be start-vertex independent (vertex transitivity).
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicpancake import cayley
from cubicpancake.classifier import Triple
from cubicpancake.perm import ReversalWord, rank, unrank, word_eval


def graph(n, m, k):
    return cayley.CubicPancakeGraph(Triple(n, m, k))


class TestRanking:
    @given(st.integers(1, 7), st.data())
    @settings(max_examples=60, deadline=None)
    def test_row_ranking_matches_scalar(self, n, data):
        r = data.draw(st.integers(0, math.factorial(n) - 1))
        row = cayley._unrank_rows(np.array([r]), n)[0]
        assert tuple(int(x) + 1 for x in row) == unrank(n, r).images
        assert int(cayley._rank_rows(row[None, :])[0]) == r

    def test_block_roundtrip(self):
        n = 6
        ranks = np.arange(math.factorial(n), dtype=np.int64)
        rows = cayley._unrank_rows(ranks, n)
        assert np.array_equal(cayley._rank_rows(rows), ranks)


class TestGraphBasics:
    def test_vertex_count_and_neighbors(self):
        g = graph(4, 3, 2)
        assert g.vertex_count == 24
        nbrs = g.neighbors(unrank(4, 0))
        assert sorted(p.images for p in nbrs) == sorted([
            (4, 3, 2, 1), (3, 2, 1, 4), (2, 1, 3, 4)])

    def test_connectivity_tracks_generation(self):
        assert graph(7, 6, 5).is_connected()
        assert not graph(6, 4, 2).is_connected()

    def test_adjacency_is_symmetric_cubic(self):
        adj = cayley._adjacency(5, (5, 4, 2))
        assert adj.shape == (120, 3)
        for v in range(120):
            for w in adj[v]:
                assert v in adj[int(w)]


class TestBfs:
    def test_smallest_graph_profile(self):
        s = cayley.bfs_levels(graph(4, 3, 2))
        assert s.vertices == 24
        assert s.diameter == 4
        assert s.level_sizes[0] == 1
        assert sum(s.level_sizes) == 24

    @pytest.mark.parametrize("m,k,diam", [(3, 2, 7), (4, 2, 7), (4, 3, 8)])
    def test_degree_five_diameters(self, m, k, diam):
        assert cayley.diameter(graph(5, m, k)) == diam

    def test_level_sums_for_generating_triples(self):
        for (n, m, k) in [(5, 4, 2), (6, 5, 4), (7, 6, 5)]:
            s = cayley.bfs_levels(graph(n, m, k))
            assert s.level_sizes[0] == 1
            assert sum(s.level_sizes) == math.factorial(n)

    def test_disconnected_raises(self):
        with pytest.raises(cayley.Disconnected):
            cayley.bfs_levels(graph(6, 4, 2))

    def test_degree_guard(self):
        with pytest.raises(cayley.DegreeTooLargeForBFS):
            cayley.bfs_levels(graph(12, 11, 4))

    def test_eccentricity_start_independent(self):
        # left-translating the start must not change the distance profile
        n, indices = 6, (6, 5, 4)
        adj = cayley._adjacency(n, indices)
        base = cayley.bfs_levels(graph(*indices))
        rng = np.random.default_rng(5)
        for start in rng.integers(0, math.factorial(n), size=3):
            dist = {int(start): 0}
            frontier = [int(start)]
            ecc = 0
            while frontier:
                nxt = []
                for v in frontier:
                    for w in adj[v]:
                        w = int(w)
                        if w not in dist:
                            dist[w] = dist[v] + 1
                            ecc = dist[w]
                            nxt.append(w)
                frontier = nxt
            assert ecc == base.diameter


class TestCanonicalWords:
    def test_rotation_to_maximal_start(self):
        assert cayley.canonical_cycle_word((2, 6, 2, 6, 2, 6, 2, 6)) == \
            (6, 2, 6, 2, 6, 2, 6, 2)

    def test_fixed_point_of_table_entry(self):
        w = (7, 6, 5, 6, 7, 6, 5, 6)
        assert cayley.canonical_cycle_word(w) == w

    def test_rejects_unreduced(self):
        with pytest.raises(cayley.NotCyclicallyReduced):
            cayley.canonical_cycle_word((5, 5, 4, 3))
        with pytest.raises(cayley.NotCyclicallyReduced):
            cayley.canonical_cycle_word((5, 4, 3, 5))

    @given(st.lists(st.sampled_from([4, 6, 9]), min_size=2, max_size=10))
    @settings(max_examples=80, deadline=None)
    def test_idempotent_and_rotation_invariant(self, letters):
        word = []
        for x in letters:
            if not word or word[-1] != x:
                word.append(x)
        if len(word) < 3 or word[0] == word[-1]:
            return
        word = tuple(word)
        canon = cayley.canonical_cycle_word(word)
        assert cayley.canonical_cycle_word(canon) == canon
        for s in range(1, len(word)):
            rot = word[s:] + word[:s]
            if rot[0] != rot[-1]:
                assert cayley.canonical_cycle_word(rot) == canon
        rev = word[::-1]
        assert cayley.canonical_cycle_word(rev) == canon

    def test_format_contracts_periods(self):
        assert cayley.format_cycle_class((8, 4, 8, 4, 8, 4, 8, 4)) == "(8.4)^4"
        assert cayley.format_cycle_class((7, 6, 5, 6, 7, 6, 5, 6)) == \
            "(7.6.5.6)^2"
        assert cayley.format_cycle_class((9, 6, 4)) == "9.6.4"


def _graph_space_girth(n, indices):
    """Shortest cycle through the identity via BFS with cross-edge detection.

    Vertex transitivity puts some shortest cycle through the identity, so a
    single BFS suffices: any non-tree edge (x, y) closes a cycle of length
    d(x) + d(y) + 1, and the minimum over them is exact.
    """
    adj = cayley._adjacency(n, indices)
    dist = {0: 0}
    parent = {0: -1}
    frontier = [0]
    best = None
    while frontier and best is None:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                w = int(w)
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    nxt.append(w)
                elif parent[v] != w and parent[w] != v:
                    length = dist[v] + dist[w] + 1
                    if best is None or length < best:
                        best = length
        frontier = nxt
    return best


class TestGirth:
    def test_girth_matches_graph_space_exhaustively(self):
        for (n, m, k) in [(4, 3, 2), (5, 3, 2), (5, 4, 2), (5, 4, 3),
                          (6, 5, 2), (6, 4, 3), (6, 5, 4)]:
            got = cayley.girth_classes(graph(n, m, k)).girth
            assert got == _graph_space_girth(n, (n, m, k)), (n, m, k)

    def test_every_class_is_canonical_identity_word(self):
        g = cayley.girth_classes(graph(6, 5, 4))
        for w in g.classes:
            assert len(w) == g.girth
            assert word_eval(ReversalWord(6, w)).is_identity()
            assert cayley.canonical_cycle_word(w) == w

    def test_known_small_girths(self):
        assert cayley.girth_classes(graph(4, 3, 2)).girth == 6
        assert cayley.girth_classes(graph(5, 3, 2)).girth == 6
        assert cayley.girth_classes(graph(5, 4, 2)).girth == 8
        assert cayley.girth_classes(graph(5, 4, 3)).girth == 8

    def test_table_row_seven_six_five(self):
        g = cayley.girth_classes(graph(7, 6, 5))
        assert g.girth == 8
        assert (7, 6, 5, 6, 7, 6, 5, 6) in g.classes


class TestHamiltonian:
    def test_small_big3_cycles(self):
        for n in (4, 5, 6):
            g = graph(n, n - 1, n - 2)
            r = cayley.hamiltonian_cycle(g)
            assert r.hamiltonian is True
            assert len(r.word) == math.factorial(n)
            assert word_eval(ReversalWord(n, r.word)).is_identity()

    def test_deterministic(self):
        a = cayley.hamiltonian_cycle(graph(5, 4, 2))
        b = cayley.hamiltonian_cycle(graph(5, 4, 2))
        assert a.hamiltonian is True and a.word == b.word

    def test_budget_exhaustion_is_unknown(self):
        r = cayley.hamiltonian_cycle(graph(6, 5, 4), node_budget=1)
        assert r.hamiltonian is None
        assert r.word is None

    def test_disconnected_raises(self):
        with pytest.raises(cayley.Disconnected):
            cayley.hamiltonian_cycle(graph(6, 4, 2))

    def test_exact_backtracker_agrees(self):
        # the exhaustive phase alone must also find small cycles
        adj = cayley._adjacency(4, (4, 3, 2))
        search = cayley._HamSearch(adj, 10_000)
        assert search.search() is True

    def test_word_visits_every_vertex(self):
        r = cayley.hamiltonian_cycle(graph(5, 4, 3))
        state = tuple(range(1, 6))
        seen = {state}
        for i in r.word:
            state = state[i - 1::-1] + state[i:]
            seen.add(state)
        assert len(seen) == 120


class TestGraphMetrics:
    def test_combined_row(self):
        row = cayley.graph_metrics(Triple(6, 5, 4), with_hamiltonian=True)
        assert (row.vertices, row.diameter, row.girth) == (720, 12, 8)
        assert row.hamiltonian is True
        assert all(len(w) == 8 for w in row.cycle_classes)

    def test_hamiltonian_skipped_by_default(self):
        row = cayley.graph_metrics(Triple(5, 4, 2))
        assert row.hamiltonian is None
