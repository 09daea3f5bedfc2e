"""Equitable colorings: Wu's criterion for complete multipartite graphs,
a brute-force decider, and equitable L-colorings."""

from __future__ import annotations

from typing import Sequence

from .errors import InvalidArgument, ResourceLimit
from .graph import Graph, popcount
from .lists import ListAssignment, require_k_assignment
from .solver import Coloring, color_by_classes

BRUTE_FORCE_MAX_VERTICES = 10


def _cdiv(a: int, b: int) -> int:
    return -(-a // b)


def wu_equitable(parts: Sequence[int], s: int) -> bool:
    """Whether K_{parts} has an equitable s-coloring (closed form)."""
    if not parts or any(n < 1 for n in parts):
        raise InvalidArgument("part sizes must be positive")
    if s < 1:
        raise InvalidArgument("s must be positive")
    p = sum(parts)
    if s > p:
        return True
    hi, lo = _cdiv(p, s), p // s
    if any(n < _cdiv(n, hi) * lo for n in parts):
        return False
    return sum(n // lo for n in parts) >= s >= sum(_cdiv(n, hi) for n in parts)


def equitable_k_colorable_bruteforce(g: Graph, k: int) -> Coloring | None:
    """An equitable k-coloring with colors 1..k, found by backtracking.

    Exactly k classes; a class may be empty only when |V| < k.
    """
    n = g.vertex_count
    if n > BRUTE_FORCE_MAX_VERTICES:
        raise ResourceLimit(f"brute force is limited to {BRUTE_FORCE_MAX_VERTICES} vertices")
    if k < 1:
        raise InvalidArgument("k must be positive")
    lo, hi = n // k, _cdiv(n, k)
    classes = [0] * k
    f = [0] * n

    def place(v: int, opened: int) -> bool:
        if v == n:
            return all(popcount(c) >= lo for c in classes)
        # classes are interchangeable: only one new class may be opened per step
        for j in range(min(opened + 1, k)):
            c = classes[j]
            if popcount(c) < hi and not g.adjacency[v] & c:
                classes[j] = c | 1 << v
                f[v] = j + 1
                if place(v + 1, max(opened, j + 1)):
                    return True
                classes[j] = c
        return False

    return tuple(f) if place(0, 0) else None


def equitable_list_colorable(g: Graph, l: ListAssignment) -> Coloring | None:
    """A proper L-coloring using each color at most ceil(|V|/k) times."""
    k = require_k_assignment(l)
    if g.vertex_count > BRUTE_FORCE_MAX_VERTICES:
        raise ResourceLimit(f"limited to {BRUTE_FORCE_MAX_VERTICES} vertices")
    cap = _cdiv(g.vertex_count, k)
    rows = [(c, s, 0, cap) for c, s in sorted(l.supports().items())]
    return color_by_classes(g, rows)
