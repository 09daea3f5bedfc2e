"""Slow reference computations used to cross-check the fast paths.

None of these share code with the enumeration kernel or the class DP.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations, product

from .graph import Graph, automorphism_group, map_mask


def _orbits_of_masks(perm, n: int) -> list[list[int]]:
    seen = set()
    cycles = []
    for mask in range(1, 1 << n):
        if mask in seen:
            continue
        cycle = []
        m = mask
        while m not in seen:
            seen.add(m)
            cycle.append(m)
            m = map_mask(perm, m)
        cycles.append(cycle)
    return cycles


def burnside_class_count(g: Graph, k: int) -> int:
    """Number of k-assignments up to renaming and automorphism, by Burnside.

    A fixed point of an automorphism is a support multiplicity function
    constant on its mask cycles; counted by a DP over per-vertex degrees.
    """
    n = g.vertex_count
    group = automorphism_group(g)
    total = 0
    for perm in group:
        ways = {(0,) * n: 1}
        for cycle in _orbits_of_masks(perm, n):
            load = [sum(m >> v & 1 for m in cycle) for v in range(n)]
            nxt: dict[tuple, int] = defaultdict(int)
            for deg, cnt in ways.items():
                x = 0
                while True:
                    new = tuple(d + x * a for d, a in zip(deg, load))
                    if max(new) > k:
                        break
                    nxt[new] += cnt
                    x += 1
            ways = nxt
        total += ways.get((k,) * n, 0)
    assert total % len(group) == 0
    return total // len(group)


def brute_force_class_count(g: Graph, k: int, palette_size: int | None = None) -> int:
    """Orbits of all k-assignments over a fixed palette, by union-find.

    The palette has vertex_count * k colors, enough for every class.  Orbits
    are taken under color permutations and graph automorphisms, using
    generators of both groups.
    """
    n = g.vertex_count
    size = palette_size or n * k
    subsets = list(combinations(range(size), k))
    items = list(product(subsets, repeat=n))
    index = {a: i for i, a in enumerate(items)}
    parent = list(range(len(items)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    color_gens = [{0: 1, 1: 0}, {c: (c + 1) % size for c in range(size)}] if size > 1 else []
    vertex_gens = [p for p in automorphism_group(g) if any(p[v] != v for v in range(n))]
    for i, a in enumerate(items):
        images = [tuple(tuple(sorted(gen.get(c, c) for c in lst)) for lst in a) for gen in color_gens]
        for perm in vertex_gens:
            moved = [None] * n
            for v in range(n):
                moved[perm[v]] = a[v]
            images.append(tuple(moved))
        for b in images:
            ra, rb = find(i), find(index[b])
            if ra != rb:
                parent[ra] = rb
    return sum(1 for i in range(len(items)) if find(i) == i)
