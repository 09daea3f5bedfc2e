import random
from statistics import mean

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propchoose.bounds import even_case_witness
from propchoose.errors import InvalidArgument
from propchoose.graph import automorphism_group, complete_multipartite
from propchoose.lists import (ListAssignment, SupportMultiset, canonical_form, class_size_bounds,
                              high_multiplicity_colors, multiplicity, permute_vertices, rename_colors,
                              require_k_assignment, sample_assignment, support_multiset)

K22_WITNESS = ListAssignment.of([{1, 2}, {1, 2}, {1, 3}, {1, 3}])


def assignments(max_vertices=5, max_k=3, max_color=8):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_vertices))
        k = draw(st.integers(1, max_k))
        colors = st.sets(st.integers(1, max_color), min_size=k, max_size=k)
        return ListAssignment.of(draw(st.lists(colors, min_size=n, max_size=n)))
    return build()


def test_lists_must_be_nonempty():
    with pytest.raises(InvalidArgument):
        ListAssignment.of([{1}, set()])


def test_multiplicity_examples():
    assert multiplicity(ListAssignment.constant(3, {1, 2}), 1) == 3
    assert multiplicity(K22_WITNESS, 1) == 4
    assert multiplicity(K22_WITNESS, 3) == 2
    assert multiplicity(K22_WITNESS, 99) == 0


@given(assignments())
def test_multiplicities_sum_to_k_times_vertices(l):
    assert sum(l.multiplicities().values()) == l.k * len(l)


def test_class_size_bounds():
    l = ListAssignment.of([{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {1, 8, 9}, {1, 2, 3}])
    assert class_size_bounds(l, 3, 1) == (1, 2)  # eta 5
    assert class_size_bounds(l, 3, 2) == (0, 1)  # eta 2
    assert class_size_bounds(ListAssignment.constant(4, {1, 2}), 2, 1) == (2, 2)
    with pytest.raises(InvalidArgument):
        class_size_bounds(l, 3, 42)


def test_high_multiplicity_colors():
    assert high_multiplicity_colors(ListAssignment.constant(5, {1, 2, 3}), 3) == {1, 2, 3}
    assert high_multiplicity_colors(K22_WITNESS, 2) == {1}
    assert high_multiplicity_colors(ListAssignment.of([{1, 2}, {3, 4}]), 2) == frozenset()
    with pytest.raises(InvalidArgument):
        high_multiplicity_colors(ListAssignment.of([{1}, {1, 2}]), 2)


def test_require_k_assignment():
    assert require_k_assignment(K22_WITNESS) == 2
    with pytest.raises(InvalidArgument):
        require_k_assignment(K22_WITNESS, 3)


def test_canonical_form_examples(K):
    edge = K(1, 1)
    assert canonical_form(edge, ListAssignment.of([{1, 2}, {1, 2}])) == \
        canonical_form(edge, ListAssignment.of([{7, 9}, {7, 9}]))
    a = ListAssignment.of([{1, 2}, {1, 3}, {1, 4}, {1, 4}])
    b = ListAssignment.of([{1, 3}, {1, 2}, {1, 4}, {1, 4}])
    assert canonical_form(K(2, 2), a) == canonical_form(K(2, 2), b)
    assert canonical_form(edge, ListAssignment.of([{1}, {1}])) != \
        canonical_form(edge, ListAssignment.of([{1}, {2}]))


@given(assignments(max_vertices=5))
def test_canonical_form_is_idempotent(l):
    g = complete_multipartite([1, len(l) - 1]) if len(l) > 1 else complete_multipartite([1])
    form = canonical_form(g, l)
    assert canonical_form(g, form.to_assignment()) == form


def test_renaming_invariance_fuzz():
    rng = random.Random(2024)
    g = complete_multipartite([2, 3])
    for trial in range(1000):
        l = sample_assignment(g, 3, rng.randint(3, 7), trial)
        palette = list(l.palette)
        targets = rng.sample(range(1, 100), len(palette))
        renamed = rename_colors(l, dict(zip(palette, targets)))
        assert canonical_form(g, renamed) == canonical_form(g, l)


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_automorphism_invariance(seed):
    g = complete_multipartite([2, 2, 1])
    l = sample_assignment(g, 2, 5, seed)
    group = automorphism_group(g)
    perm = group[seed % len(group)]
    assert canonical_form(g, permute_vertices(l, perm)) == canonical_form(g, l)


@given(assignments())
def test_support_multiset_invariants(l):
    form = support_multiset(l)
    masks = [m for m, _ in form.entries]
    assert masks == sorted(set(masks), reverse=True)
    assert form.degrees() == [l.k] * len(l)
    assert form.color_count == len(l.palette)
    assert support_multiset(form.to_assignment()) == form


def test_support_multiset_rejects_bad_entries():
    with pytest.raises(InvalidArgument):
        SupportMultiset(2, ((1, 1), (3, 1)))
    with pytest.raises(InvalidArgument):
        SupportMultiset(2, ((4, 1),))


def test_hash_is_stable():
    form = support_multiset(K22_WITNESS)
    assert form.hash64() == support_multiset(K22_WITNESS).hash64()
    assert form.hash64() != support_multiset(ListAssignment.constant(4, {1, 2})).hash64()
    assert 0 <= form.hash64() < 2**64


def test_even_case_witness_has_expected_multiplicities():
    for parts in ([2, 2], [2, 2, 2], [4, 4], [2, 2, 4]):
        s = sum(parts) // 2
        l = even_case_witness(parts)
        assert l.k == s
        eta = l.multiplicities()
        assert all(eta[c] == 2 * s for c in range(1, s))
        assert [eta[s - 1 + i] for i in range(1, len(parts) + 1)] == sorted(parts)


def test_sample_assignment_examples(K):
    l = sample_assignment(K(2, 3), 3, 3, seed=5)
    assert l == ListAssignment.constant(5, {1, 2, 3})
    assert sample_assignment(K(1, 1), 1, 2, 9) == sample_assignment(K(1, 1), 1, 2, 9)
    with pytest.raises(InvalidArgument):
        sample_assignment(K(1, 1), 3, 2, 0)


def test_sample_assignment_mean_multiplicity(K):
    g = K(2, 3)
    etas = []
    for seed in range(1000):
        eta = sample_assignment(g, 3, 6, seed).multiplicities()
        etas.append(mean(eta.get(c, 0) for c in range(1, 7)))
    assert abs(mean(etas) - 2.5) <= 0.2
