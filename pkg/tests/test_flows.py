import networkx as nx
from networkx.algorithms.connectivity import local_node_connectivity
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.linkage.flows import (
    disjoint_paths,
    is_strongly_connected,
    is_strongly_k_connected,
    local_connectivity,
    reachable,
    strong_connectivity,
)
from app.linkage.oracle import bf_max_disjoint_paths, bf_strong_connectivity
from app.linkage.tournament import Tournament, random_tournament, rotational, transitive
from app.linkage.utils.errors import FlowError
from app.linkage.utils.models import VertexSet

from .strategies import seeds, tournaments, vertex_subsets


def as_digraph(t: Tournament) -> nx.DiGraph:
    return nx.from_numpy_array(t.matrix().astype(int), create_using=nx.DiGraph)


def networkx_kappa(t: Tournament) -> int:
    """Minimum local connectivity over ordered pairs without the direct edge."""
    graph = as_digraph(t)
    return min(
        local_node_connectivity(graph, u, v)
        for u in range(t.n)
        for v in range(t.n)
        if u != v and not t.edge(u, v)
    )


def assert_valid_path_set(t: Tournament, sources: VertexSet, sinks: VertexSet, allowed: VertexSet, found) -> None:
    used = set()
    for path in found.paths:
        assert path.violation(t) is None
        assert path.start in sources
        assert path.end in sinks
        assert set(path).issubset(set(allowed))
        assert used.isdisjoint(path)
        used.update(path)
    assert found.cut.issubset(allowed)
    assert len(found.cut) == len(found.paths)

    remaining = allowed.mask & ~found.cut.mask
    assert not reachable(t, sources.mask & remaining, remaining) & sinks.mask


class TestDisjointPaths:
    def test_transitive(self, transitive4: Tournament) -> None:
        sources, sinks = VertexSet.of([0, 1]), VertexSet.of([2, 3])
        found = disjoint_paths(transitive4, sources, sinks, transitive4.vertices())
        assert len(found) == 2
        assert_valid_path_set(transitive4, sources, sinks, transitive4.vertices(), found)

    def test_cyclic_triangle(self, cyclic_triangle: Tournament) -> None:
        found = disjoint_paths(
            cyclic_triangle, VertexSet.of([0]), VertexSet.of([1]), cyclic_triangle.vertices()
        )
        assert [list(p) for p in found.paths] == [[0, 1]]
        assert len(found.cut) == 1

    def test_shared_vertex_is_single_vertex_path(self, rotational7: Tournament) -> None:
        found = disjoint_paths(
            rotational7, VertexSet.of([2]), VertexSet.of([2, 5]), rotational7.vertices()
        )
        assert [list(p) for p in found.paths] == [[2]]

    def test_no_path_gives_empty_cut(self, transitive4: Tournament) -> None:
        found = disjoint_paths(transitive4, VertexSet.of([3]), VertexSet.of([0]), transitive4.vertices())
        assert len(found) == 0
        assert not found.cut

    def test_respects_allowed(self, rotational7: Tournament) -> None:
        allowed = VertexSet.of([0, 1, 4])
        found = disjoint_paths(rotational7, VertexSet.of([0]), VertexSet.of([4]), allowed)
        assert [list(p) for p in found.paths] == [[0, 1, 4]]

    def test_errors(self, transitive4: Tournament) -> None:
        with pytest.raises(FlowError):
            disjoint_paths(transitive4, VertexSet(), VertexSet(), VertexSet())
        with pytest.raises(FlowError):
            disjoint_paths(transitive4, VertexSet.of([0]), VertexSet.of([3]), VertexSet.of([1, 3]))
        with pytest.raises(FlowError):
            disjoint_paths(transitive4, VertexSet.of([0]), VertexSet.of([3]), VertexSet.of([0, 1]))

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_matches_exhaustive_search(self, data: st.DataObject) -> None:
        t = data.draw(tournaments(min_n=2, max_n=9))
        sources = data.draw(vertex_subsets(t.n, min_size=1))
        sinks = data.draw(vertex_subsets(t.n, min_size=1))
        allowed = t.vertices()

        found = disjoint_paths(t, sources, sinks, allowed)
        assert_valid_path_set(t, sources, sinks, allowed, found)
        assert len(found) == bf_max_disjoint_paths(t, sources, sinks, allowed)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_restricted_allowed_is_maximum(self, data: st.DataObject) -> None:
        t = data.draw(tournaments(min_n=3, max_n=9))
        sources = data.draw(vertex_subsets(t.n, min_size=1))
        sinks = data.draw(vertex_subsets(t.n, min_size=1))
        extra = data.draw(vertex_subsets(t.n, max_size=t.n))
        allowed = sources | sinks | extra

        found = disjoint_paths(t, sources, sinks, allowed)
        assert_valid_path_set(t, sources, sinks, allowed, found)
        assert len(found) == bf_max_disjoint_paths(t, sources, sinks, allowed)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_monotone_in_allowed(self, data: st.DataObject) -> None:
        t = data.draw(tournaments(min_n=4, max_n=9))
        sources = data.draw(vertex_subsets(t.n, min_size=1))
        sinks = data.draw(vertex_subsets(t.n, min_size=1))
        extra = data.draw(vertex_subsets(t.n, max_size=t.n))
        allowed = sources | sinks | extra

        small = disjoint_paths(t, sources, sinks, allowed)
        large = disjoint_paths(t, sources, sinks, t.vertices())
        assert len(small) <= len(large)
        assert_valid_path_set(t, sources, sinks, allowed, small)


class TestLocalConnectivity:
    def test_rotational(self, rotational7: Tournament) -> None:
        # 4 -> 0 is an edge, so 0 -> 4 needs detours
        found = local_connectivity(rotational7, 0, 4)
        assert len(found) == 3
        for path in found.paths:
            assert rotational7.edge(0, path.start)
            assert rotational7.edge(path.end, 4)

    def test_rejects_adjacent_pair(self, rotational7: Tournament) -> None:
        with pytest.raises(FlowError):
            local_connectivity(rotational7, 0, 1)
        with pytest.raises(FlowError):
            local_connectivity(rotational7, 2, 2)


class TestStrongConnectivity:
    def test_is_strongly_connected(self, cyclic_triangle: Tournament, transitive4: Tournament) -> None:
        assert is_strongly_connected(cyclic_triangle)
        assert not is_strongly_connected(transitive4)
        assert is_strongly_connected(transitive4, within=VertexSet.of([2]))

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_transitive_is_zero(self, n: int) -> None:
        assert strong_connectivity(transitive(n)) == 0

    @pytest.mark.parametrize("n,expected", [(3, 1), (5, 2), (7, 3), (9, 4)])
    def test_rotational(self, n: int, expected: int) -> None:
        assert strong_connectivity(rotational(n)) == expected

    @settings(max_examples=200, deadline=None)
    @given(tournaments(min_n=4, max_n=9))
    def test_matches_removal_oracle(self, t: Tournament) -> None:
        kappa = strong_connectivity(t)
        assert kappa == bf_strong_connectivity(t)
        assert kappa <= t.min_degree()

    @settings(max_examples=30, deadline=None)
    @given(tournaments(min_n=4, max_n=14))
    def test_matches_networkx(self, t: Tournament) -> None:
        assert is_strongly_connected(t) == nx.is_strongly_connected(as_digraph(t))
        assert strong_connectivity(t) == networkx_kappa(t)

    def test_larger_random(self) -> None:
        t = random_tournament(30, 5)
        assert strong_connectivity(t) == networkx_kappa(t)


class TestKConnected:
    def test_examples(self, transitive4: Tournament, cyclic_triangle: Tournament) -> None:
        witness = is_strongly_k_connected(transitive4, 1)
        assert not witness
        assert witness.pair is not None
        assert is_strongly_k_connected(rotational(5), 2)
        assert is_strongly_k_connected(cyclic_triangle, 1)

    def test_too_few_vertices(self, cyclic_triangle: Tournament) -> None:
        witness = is_strongly_k_connected(cyclic_triangle, 2)
        assert not witness
        assert "vertices" in witness.reason
        assert is_strongly_k_connected(transitive(1), 0)
        assert not is_strongly_k_connected(transitive(1), 1)

    @settings(max_examples=100, deadline=None)
    @given(tournaments(min_n=4, max_n=10), st.integers(min_value=1, max_value=8))
    def test_witness_separates(self, t: Tournament, k: int) -> None:
        k = min(k, t.n - 2)
        witness = is_strongly_k_connected(t, k)
        assert bool(witness) == (strong_connectivity(t) >= k)
        if not witness:
            assert len(witness.separator) <= k - 1
            u, v = witness.pair
            remaining = t.full_mask & ~witness.separator.mask
            assert not reachable(t, 1 << u, remaining) >> v & 1

    @given(seeds)
    def test_agrees_with_kappa(self, seed: int) -> None:
        t = random_tournament(12, seed)
        kappa = strong_connectivity(t)
        assert is_strongly_k_connected(t, kappa)
        assert not is_strongly_k_connected(t, kappa + 1)
