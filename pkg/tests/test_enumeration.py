from itertools import combinations, product

import pytest

from propchoose.enumeration import (count_classes, enumerate_assignments, enumerate_forms, prefixes,
                                    subtree_walker, tables)
from propchoose.errors import ResourceLimit
from propchoose.graph import complete_multipartite
from propchoose.lists import ListAssignment, canonical_form
from propchoose.oracles import brute_force_class_count, burnside_class_count

# class counts frozen from the Burnside oracle
FROZEN_COUNTS = [
    ([1, 1], 1, 2), ([1, 1], 2, 3), ([1], 3, 1), ([1, 2], 2, 12), ([2, 2], 2, 40),
    ([1, 3], 3, 219), ([2, 3], 3, 4061), ([2, 2, 2], 2, 1061), ([2, 4], 3, 66160),
]


@pytest.mark.parametrize("parts, k, expected", FROZEN_COUNTS)
def test_class_counts(parts, k, expected):
    assert count_classes(complete_multipartite(parts), k) == expected


@pytest.mark.parametrize("parts, k", [([1, 1], 1), ([1, 1], 2), ([1, 2], 1), ([1, 2], 2), ([2, 2], 1), ([1, 3], 1)])
def test_counts_match_union_find_oracle(parts, k):
    g = complete_multipartite(parts)
    assert count_classes(g, k) == brute_force_class_count(g, k)


@pytest.mark.parametrize("parts, k", [([2, 2], 3), ([1, 1, 2], 2), ([3], 2), ([1, 4], 3), ([2, 2], 4)])
def test_counts_match_burnside(parts, k):
    g = complete_multipartite(parts)
    assert count_classes(g, k) == burnside_class_count(g, k)


def test_k2_classes_explicit():
    edge = complete_multipartite([1, 1])
    forms = {str(f) for f in enumerate_forms(edge, 2)}
    assert forms == {"{0,1}*2", "{0,1} + {1} + {0}", "{1}*2 + {0}*2"}
    assert [str(f) for f in enumerate_forms(complete_multipartite([1]), 3)] == ["{0}*3"]


@pytest.mark.parametrize("parts, k", [([2, 2], 2), ([1, 3], 2), ([2, 3], 2)])
def test_emitted_forms_are_canonical_and_distinct(parts, k):
    g = complete_multipartite(parts)
    forms = list(enumerate_forms(g, k))
    assert len(set(forms)) == len(forms)
    for form in forms:
        assert form.degrees() == [k] * g.vertex_count
        assert canonical_form(g, form.to_assignment()) == form
        assert form.color_count <= len(form.entries) * k
        assert len(form.entries) <= 2 ** g.vertex_count - 1


def test_every_assignment_is_represented():
    g = complete_multipartite([1, 2])
    k, size = 2, 6
    emitted = set(enumerate_forms(g, k))
    seen = set()
    for lists in product(combinations(range(size), k), repeat=g.vertex_count):
        seen.add(canonical_form(g, ListAssignment.of(lists)))
    assert seen == emitted


def test_representatives_use_fresh_colors():
    for l in enumerate_assignments(complete_multipartite([2, 2]), 2):
        assert l.palette == tuple(range(1, len(l.palette) + 1))


def test_guard():
    with pytest.raises(ResourceLimit):
        list(enumerate_forms(complete_multipartite([6, 6]), 2))
    with pytest.raises(ResourceLimit):
        count_classes(complete_multipartite([1, 1]), 7)
    assert count_classes(complete_multipartite([1, 1]), 7, max_k=7) == 8


@pytest.mark.parametrize("parts, k", [([2, 3], 3), ([1, 1, 2], 3)])
def test_prefix_split_covers_everything_once(parts, k):
    g = complete_multipartite(parts)
    tab = tables(g, k)
    total = 0
    for prefix in prefixes(tab):
        walker = subtree_walker(tab, prefix, check=False)
        while not walker.finished:
            walker.step(1024)
        total += walker.leaves
    assert total == count_classes(g, k)


def test_stream_is_deterministic():
    g = complete_multipartite([2, 3])
    a = [f.hash64() for f in enumerate_forms(g, 2)]
    b = [f.hash64() for f in enumerate_forms(g, 2)]
    assert a == b
