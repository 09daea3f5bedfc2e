import pytest

from propchoose.bounds import (EVEN_CASE, GENERAL, STAR, TRIVIAL, bound_report, even_case_witness,
                               lifted_constant_witness, lower_bound_knm, lower_bound_multipartite,
                               odd_reduction, star_value, upper_bound_knm, verify_lower_bound)
from propchoose.errors import InvalidArgument, ResourceLimit
from propchoose.graph import complete_multipartite
from propchoose.lists import ListAssignment
from propchoose.solver import NOT_CHOOSABLE, decide_choosable, find_proportional


@pytest.mark.parametrize("n, m, lower", [(2, 2, 3), (2, 5, 4), (4, 4, 5)])
def test_lower_bound_knm(n, m, lower):
    assert lower_bound_knm(n, m) == lower


@pytest.mark.parametrize("n, m, upper", [(2, 2, 3), (2, 3, 3), (3, 9, 8)])
def test_upper_bound_knm(n, m, upper):
    assert upper_bound_knm(n, m) == upper


@pytest.mark.parametrize("n, m", [(1, 3), (3, 2), (0, 0)])
def test_knm_bounds_need_proper_sizes(n, m):
    with pytest.raises(InvalidArgument):
        lower_bound_knm(n, m)
    with pytest.raises(InvalidArgument):
        upper_bound_knm(n, m)


def test_bounds_are_consistent():
    for n in range(2, 13):
        for m in range(n, 13):
            assert lower_bound_knm(n, m) <= upper_bound_knm(n, m)


@pytest.mark.parametrize("parts, result", [
    ([2, 2], (3, EVEN_CASE)), ([2, 2, 2], (4, EVEN_CASE)), ([3, 5], (5, GENERAL)), ([2, 4], (3, GENERAL)),
])
def test_lower_bound_multipartite(parts, result):
    assert lower_bound_multipartite(parts) == result


def test_lower_bound_multipartite_needs_two_parts():
    with pytest.raises(InvalidArgument):
        lower_bound_multipartite([3])


def test_multipartite_lower_agrees_with_knm():
    for n in range(2, 10):
        for m in range(n, 10):
            bound, source = lower_bound_multipartite([n, m])
            assert bound == lower_bound_knm(n, m)
            assert source != EVEN_CASE or n == m


@pytest.mark.parametrize("parts, reduced", [([2, 3], [1, 3]), ([4, 4], [3, 3]), ([1, 1], [1, 1])])
def test_odd_reduction(parts, reduced):
    assert odd_reduction(parts) == reduced


def test_odd_reduction_preserves_s():
    for parts in ([1, 2, 3, 4], [6, 6], [5], [2, 2, 2, 2, 7]):
        assert sum((p + 1) // 2 for p in odd_reduction(parts)) == sum((p + 1) // 2 for p in parts)


def test_even_case_witness_lists():
    assert even_case_witness([2, 2]) == ListAssignment.of([{1, 2}, {1, 2}, {1, 3}, {1, 3}])
    assert even_case_witness([2, 2, 2]).lists[::2] == (frozenset({1, 2, 3}), frozenset({1, 2, 4}),
                                                      frozenset({1, 2, 5}))
    with pytest.raises(InvalidArgument, match="exceeds s=3"):
        even_case_witness([2, 4])
    with pytest.raises(InvalidArgument, match="odd"):
        even_case_witness([2, 3])


@pytest.mark.parametrize("parts", [[2, 2], [2, 2, 2], [4, 4]])
def test_even_case_witness_is_refuted(parts):
    assert find_proportional(complete_multipartite(parts), even_case_witness(parts)) is None


def test_star_value():
    assert [star_value(m) for m in range(1, 6)] == [2, 2, 3, 3, 4]


def test_bound_report_routes():
    assert bound_report([1, 4]).lower_source == STAR and bound_report([1, 4]).forced
    assert bound_report([3]).lower_source == TRIVIAL
    rep = bound_report([3, 2])
    assert (rep.lower, rep.upper, rep.forced) == (3, 3, True)
    rep = bound_report([2, 4])
    assert (rep.lower, rep.upper, rep.forced) == (3, 4, False)
    assert bound_report([2, 2, 2]).upper is None


@pytest.mark.parametrize("parts, certified", [([2, 2], 3), ([3, 3], 4), ([2, 2, 2], 4), ([2, 4], 3), ([1, 3], 3)])
def test_verify_lower_bound(parts, certified):
    check = verify_lower_bound(parts)
    assert check.ok, check.lines()
    assert check.certified == certified


def test_verify_lower_bound_guard():
    with pytest.raises(ResourceLimit):
        verify_lower_bound([9, 9])


def test_lifted_witness_is_refuted():
    for parts in ([2, 3], [3, 3], [1, 2, 2], [2, 2, 2]):
        l = lifted_constant_witness(parts)
        assert l.k == sum((p + 1) // 2 for p in parts) - 1
        assert find_proportional(complete_multipartite(parts), l) is None


@pytest.mark.parametrize("parts", [[1, 2], [1, 3], [2, 2], [2, 3], [1, 4], [3, 3], [1, 1, 2], [2, 2, 2]])
def test_lower_bounds_are_certified_by_search(parts):
    g = complete_multipartite(parts)
    bound = bound_report(parts).lower
    assert decide_choosable(g, bound - 1).outcome == NOT_CHOOSABLE
