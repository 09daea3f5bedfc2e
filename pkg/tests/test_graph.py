import itertools
import tempfile
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propchoose.errors import InvalidArgument
from propchoose.graph import (automorphism_generators, automorphism_group, brute_force_automorphisms,
                              complete_multipartite, graph_from_edges, induced_subgraph, is_automorphism,
                              is_independent, max_degree, parse_graph, read_edge_list, to_mask,
                              write_edge_list)


@pytest.mark.parametrize("parts, vertices, edges", [([1], 1, 0), ([2, 3], 5, 6), ([2, 2, 2], 6, 12)])
def test_complete_multipartite_sizes(parts, vertices, edges):
    g = complete_multipartite(parts)
    assert (g.vertex_count, g.edge_count) == (vertices, edges)


@pytest.mark.parametrize("parts", [[], [0, 2], [40, 30]])
def test_complete_multipartite_rejects(parts):
    with pytest.raises(InvalidArgument):
        complete_multipartite(parts)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_adjacency_follows_parts(parts):
    g = complete_multipartite(parts)
    for u, v in itertools.combinations(g.vertices, 2):
        assert g.adjacent(u, v) == (g.part_of(u) != g.part_of(v))
    assert not any(g.adjacent(v, v) for v in g.vertices)


def test_parts_sorted_ascending():
    g = complete_multipartite([3, 1, 2])
    assert g.parts == (1, 2, 3)
    assert g.name == "K1,2,3"


def test_induced_subgraph_examples(K):
    g = K(3, 3)
    h = induced_subgraph(g, to_mask([0, 1, 3, 4]))
    assert h.parts == (2, 2) and h.edge_count == 4
    part2 = induced_subgraph(K(2, 3), to_mask([2, 3, 4]))
    assert part2.vertex_count == 3 and part2.edge_count == 0 and part2.parts == (3,)
    assert induced_subgraph(K(2, 3), K(2, 3).full_mask) == K(2, 3)
    with pytest.raises(InvalidArgument):
        induced_subgraph(g, 0)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(1, 511))
def test_induced_subgraph_preserves_adjacency(parts, raw):
    g = complete_multipartite(parts)
    s = raw & g.full_mask
    if not s:
        return
    keep = [v for v in g.vertices if s >> v & 1]
    h = induced_subgraph(g, s)
    for i, j in itertools.combinations(range(len(keep)), 2):
        assert h.adjacent(i, j) == g.adjacent(keep[i], keep[j])
    # the part data still describes the subgraph
    assert h == complete_multipartite(h.parts) or sorted(h.parts) != list(h.parts)


def test_max_degree(K):
    assert max_degree(K(2, 3)) == 3
    assert max_degree(K(1, 4)) == 4
    assert max_degree(K(2, 2, 2)) == 4


def test_max_degree_matches_networkx():
    g = complete_multipartite([1, 2, 4])
    ref = nx.complete_multipartite_graph(1, 2, 4)
    assert max_degree(g) == max(d for _, d in ref.degree())


def test_is_independent(K):
    g = K(2, 3)
    assert is_independent(g, to_mask([2, 3, 4]))
    assert not is_independent(g, to_mask([0, 2]))
    assert is_independent(g, 0)


@pytest.mark.parametrize("parts, order", [([2, 3], 12), ([3, 3], 72), ([1], 1), ([2, 2, 2], 48), ([1, 1, 2], 4)])
def test_group_order(parts, order):
    assert len(automorphism_group(complete_multipartite(parts))) == order


@pytest.mark.parametrize("parts", [[1], [1, 1], [2, 3], [3, 3], [1, 2, 2], [2, 2, 2], [1, 1, 1, 2], [3, 4], [1, 3, 3]])
def test_generated_group_equals_brute_force(parts):
    g = complete_multipartite(parts)
    for p in automorphism_generators(g):
        assert is_automorphism(g, p)
    assert set(automorphism_group(g)) == set(brute_force_automorphisms(g))


def test_general_graph_gets_identity():
    path = graph_from_edges(3, [(0, 1), (1, 2)])
    assert automorphism_generators(path) == [(0, 1, 2)]


def test_graph_from_edges_rejects_loops():
    with pytest.raises(InvalidArgument):
        graph_from_edges(2, [(0, 0)])


def test_parse_graph(tmp_path):
    assert parse_graph("K2,3") == complete_multipartite([2, 3])
    g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    path = tmp_path / "path.txt"
    write_edge_list(g, path)
    assert read_edge_list(path) == g
    assert parse_graph(str(path)) == g
    with pytest.raises(InvalidArgument):
        parse_graph("K2,x")


@settings(max_examples=30)
@given(st.integers(2, 6), st.data())
def test_edge_list_round_trip(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
    g = graph_from_edges(n, edges)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "g.txt"
        write_edge_list(g, path)
        assert read_edge_list(path) == g
