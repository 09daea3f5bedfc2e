"""List assignments, multiplicities and color-renaming-invariant forms.

Up to renaming colors, a list assignment is determined by the multiset of
color *supports*: the support of ``c`` is the vertex set whose lists contain
``c``, so its size is the multiplicity of ``c``.
"""

from __future__ import annotations

import random
import struct
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InvalidArgument
from .graph import Graph, automorphism_group, map_mask, members, popcount


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        for v, lst in enumerate(self.lists):
            if not lst:
                raise InvalidArgument(f"list of vertex {v} is empty")

    @classmethod
    def of(cls, lists: Iterable[Iterable[int]]) -> "ListAssignment":
        return cls(tuple(frozenset(lst) for lst in lists))

    @classmethod
    def constant(cls, vertex_count: int, colors: Iterable[int]) -> "ListAssignment":
        colors = frozenset(colors)
        return cls((colors,) * vertex_count)

    def __len__(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    @property
    def k(self) -> int | None:
        """Common list size, or None when the sizes differ."""
        sizes = {len(lst) for lst in self.lists}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def palette(self) -> tuple[int, ...]:
        return tuple(sorted(set().union(*self.lists)))

    def supports(self) -> dict[int, int]:
        """Map each palette color to the bitmask of vertices listing it."""
        out: dict[int, int] = {}
        for v, lst in enumerate(self.lists):
            for c in lst:
                out[c] = out.get(c, 0) | 1 << v
        return out

    def multiplicities(self) -> dict[int, int]:
        return {c: popcount(s) for c, s in self.supports().items()}

    def is_constant(self) -> bool:
        return len(set(self.lists)) == 1

    def replace(self, changes: Mapping[int, Iterable[int]]) -> "ListAssignment":
        lists = list(self.lists)
        for v, lst in changes.items():
            lists[v] = frozenset(lst)
        return ListAssignment(tuple(lists))


def require_k_assignment(l: ListAssignment, k: int | None = None) -> int:
    size = l.k
    if size is None:
        raise InvalidArgument("list sizes are not uniform")
    if k is not None and size != k:
        raise InvalidArgument(f"lists have size {size}, expected {k}")
    return size


def multiplicity(l: ListAssignment, c: int) -> int:
    return sum(1 for lst in l.lists if c in lst)


def size_bounds(eta: int, k: int) -> tuple[int, int]:
    return eta // k, -(-eta // k)


def class_size_bounds(l: ListAssignment, k: int, c: int) -> tuple[int, int]:
    """Allowed class sizes (floor, ceil of eta(c)/k) in a proportional coloring."""
    if k < 1:
        raise InvalidArgument("k must be positive")
    eta = multiplicity(l, c)
    if eta == 0:
        raise InvalidArgument(f"color {c} is not in the palette")
    return size_bounds(eta, k)


def high_multiplicity_colors(l: ListAssignment, k: int) -> frozenset[int]:
    require_k_assignment(l, k)
    return frozenset(c for c, eta in l.multiplicities().items() if eta > k)


@dataclass(frozen=True, order=True)
class SupportMultiset:
    """Multiset of color supports, entries sorted by descending bitmask.

    Comparing two forms on the same vertex set compares their multiplicity
    vectors lexicographically from the largest mask down.
    """

    vertex_count: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        masks = [m for m, _ in self.entries]
        if masks != sorted(set(masks), reverse=True):
            raise InvalidArgument("entries must have distinct masks in descending order")
        full = (1 << self.vertex_count) - 1
        for m, mult in self.entries:
            if not m or m & ~full or mult < 1:
                raise InvalidArgument(f"bad entry ({m}, {mult})")

    @classmethod
    def from_counts(cls, vertex_count: int, counts: Mapping[int, int]) -> "SupportMultiset":
        entries = tuple(sorted(((m, c) for m, c in counts.items() if c), reverse=True))
        return cls(vertex_count, entries)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for m, mult in self.entries:
            for v in members(m):
                deg[v] += mult
        return deg

    @property
    def color_count(self) -> int:
        return sum(mult for _, mult in self.entries)

    def to_assignment(self) -> ListAssignment:
        """Materialize with fresh colors 1, 2, ... in entry order."""
        lists: list[set[int]] = [set() for _ in range(self.vertex_count)]
        color = 0
        for m, mult in self.entries:
            for _ in range(mult):
                color += 1
                for v in members(m):
                    lists[v].add(color)
        return ListAssignment.of(lists)

    def encode(self) -> bytes:
        return b"".join(struct.pack("<QI", m, mult) for m, mult in self.entries)

    def hash64(self) -> int:
        """64-bit FNV-1a over :meth:`encode`."""
        h = 0xCBF29CE484222325
        for byte in self.encode():
            h ^= byte
            h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
        return h

    def __str__(self) -> str:
        body = " + ".join(
            "{" + ",".join(map(str, members(m))) + "}" + (f"*{mult}" if mult > 1 else "")
            for m, mult in self.entries
        )
        return body or "{}"


def support_multiset(l: ListAssignment) -> SupportMultiset:
    """Renaming-invariant form of ``l`` without graph symmetry."""
    return SupportMultiset.from_counts(len(l), Counter(l.supports().values()))


def canonical_form(g: Graph, l: ListAssignment) -> SupportMultiset:
    """Lexicographically largest support multiset over Aut(g) images."""
    if len(l) != g.vertex_count:
        raise InvalidArgument("assignment and graph differ in vertex count")
    counts = Counter(l.supports().values())
    best = None
    for perm in automorphism_group(g):
        image = tuple(sorted(((map_mask(perm, m), c) for m, c in counts.items()), reverse=True))
        if best is None or image > best:
            best = image
    return SupportMultiset(g.vertex_count, best)


def sample_assignment(g: Graph, k: int, palette_size: int, seed: int) -> ListAssignment:
    """Independent uniform k-subsets of {1..palette_size}, one per vertex."""
    if k < 1:
        raise InvalidArgument("k must be positive")
    if palette_size < k:
        raise InvalidArgument(f"palette size {palette_size} is smaller than k={k}")
    rng = random.Random(seed)
    colors = range(1, palette_size + 1)
    return ListAssignment.of(rng.sample(colors, k) for _ in g.vertices)


def rename_colors(l: ListAssignment, mapping: Mapping[int, int]) -> ListAssignment:
    return ListAssignment.of([mapping[c] for c in lst] for lst in l.lists)


def permute_vertices(l: ListAssignment, perm: Sequence[int]) -> ListAssignment:
    """Move the list of vertex v to vertex perm[v]."""
    lists = [frozenset()] * len(l)
    for v, lst in enumerate(l.lists):
        lists[perm[v]] = lst
    return ListAssignment(tuple(lists))
