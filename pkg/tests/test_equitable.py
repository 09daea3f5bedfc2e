import pytest

from propchoose.acceptance import partitions
from propchoose.enumeration import enumerate_assignments
from propchoose.equitable import equitable_k_colorable_bruteforce, equitable_list_colorable, wu_equitable
from propchoose.errors import InvalidArgument, ResourceLimit
from propchoose.graph import complete_multipartite, graph_from_edges, max_degree
from propchoose.lists import ListAssignment
from propchoose.solver import find_proportional


def test_wu_examples():
    assert wu_equitable([3, 3], 2)
    assert not wu_equitable([3, 3], 3)
    assert wu_equitable([5, 5], 11)
    with pytest.raises(InvalidArgument):
        wu_equitable([0, 2], 1)


def test_bruteforce_examples(K):
    f = equitable_k_colorable_bruteforce(K(3, 3), 2)
    assert sorted(f) == [1, 1, 1, 2, 2, 2]
    assert equitable_k_colorable_bruteforce(K(3, 3), 3) is None
    assert equitable_k_colorable_bruteforce(K(1), 1) == (1,)
    with pytest.raises(ResourceLimit):
        equitable_k_colorable_bruteforce(K(6, 6), 2)


def test_bruteforce_output_is_equitable(K):
    g = K(2, 3, 3)
    for k in range(1, 10):
        f = equitable_k_colorable_bruteforce(g, k)
        if f is None:
            continue
        assert all(f[u] != f[v] for u, v in g.edges())
        sizes = [f.count(c) for c in range(1, k + 1)]
        assert max(sizes) - min(sizes) <= 1 and set(f) <= set(range(1, k + 1))


@pytest.mark.parametrize("p", range(1, 9))
def test_wu_matches_bruteforce(p):
    for parts in partitions(p):
        g = complete_multipartite(parts)
        for s in range(1, p + 2):
            assert wu_equitable(parts, s) == (equitable_k_colorable_bruteforce(g, s) is not None), (parts, s)


def test_equitable_list_examples(K):
    assert equitable_list_colorable(K(1, 2), ListAssignment.constant(3, {1, 2})) is not None
    assert equitable_list_colorable(K(1, 1), ListAssignment.of([{1}, {1}])) is None
    assert equitable_list_colorable(K(1), ListAssignment.of([{1}])) == (1,)


@pytest.mark.parametrize("k", [3, 4])
def test_proportional_implies_equitable_list(k, K):
    g = K(2, 2)
    for l in enumerate_assignments(g, k):
        if find_proportional(g, l) is not None:
            assert equitable_list_colorable(g, l) is not None


def test_hajnal_szemeredi_sanity():
    graphs = [complete_multipartite(p) for p in ([1, 3], [2, 3], [2, 2, 2], [1, 1, 1, 1])]
    graphs.append(graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]))
    for g in graphs:
        for k in range(max_degree(g) + 1, 9):
            assert equitable_k_colorable_bruteforce(g, k) is not None
