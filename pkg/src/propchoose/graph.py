"""Small simple graphs on at most 64 vertices, stored as adjacency bitmasks.

A vertex set is a plain ``int`` bitmask: bit ``v`` set means vertex ``v``
is a member.  Complete multipartite graphs remember their part sizes and
index vertices part by part, parts sorted by size (stable, so equal sizes
keep input order).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import InvalidArgument, ResourceLimit

MAX_VERTICES = 64

Perm = tuple[int, ...]


def members(mask: int) -> Iterator[int]:
    """Yield the vertices of a bitmask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[int, ...]
    parts: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.vertex_count <= MAX_VERTICES:
            raise InvalidArgument(f"vertex count must be in 1..{MAX_VERTICES}")
        if len(self.adjacency) != self.vertex_count:
            raise InvalidArgument("adjacency length differs from vertex count")
        full = (1 << self.vertex_count) - 1
        for v, nb in enumerate(self.adjacency):
            if nb & ~full or nb >> v & 1:
                raise InvalidArgument(f"bad neighbourhood for vertex {v}")
            for u in members(nb):
                if not self.adjacency[u] >> v & 1:
                    raise InvalidArgument("adjacency is not symmetric")
        if self.parts is not None and sum(self.parts) != self.vertex_count:
            raise InvalidArgument("part sizes do not sum to the vertex count")

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in members(self.adjacency[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(popcount(nb) for nb in self.adjacency) // 2

    def part_masks(self) -> list[int]:
        """Vertex masks of the parts, in vertex order (multipartite graphs only)."""
        if self.parts is None:
            raise InvalidArgument("graph carries no part structure")
        masks, start = [], 0
        for size in self.parts:
            masks.append(((1 << size) - 1) << start)
            start += size
        return masks

    def part_of(self, v: int) -> int:
        for i, mask in enumerate(self.part_masks()):
            if mask >> v & 1:
                return i
        raise InvalidArgument(f"vertex {v} out of range")

    @property
    def name(self) -> str:
        """Stable text form, also used as the cache key."""
        if self.parts is not None:
            return "K" + ",".join(map(str, self.parts))
        body = ",".join(f"{u}-{v}" for u, v in self.edges())
        return f"G{self.vertex_count}:{body}"

    def __str__(self) -> str:
        return self.name


def complete_multipartite(parts: Sequence[int]) -> Graph:
    """Build K_{n_1,...,n_t}; parts are reordered ascending (stable)."""
    parts = list(parts)
    if not parts:
        raise InvalidArgument("need at least one part")
    if any(int(p) != p or p < 1 for p in parts):
        raise InvalidArgument("part sizes must be positive integers")
    total = sum(parts)
    if total > MAX_VERTICES:
        raise InvalidArgument(f"{total} vertices exceeds the {MAX_VERTICES}-vertex cap")
    ordered = tuple(sorted(parts))
    full = (1 << total) - 1
    adjacency, start = [], 0
    for size in ordered:
        part = ((1 << size) - 1) << start
        adjacency.extend([full & ~part] * size)
        start += size
    return Graph(total, tuple(adjacency), ordered)


def graph_from_edges(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 1 <= vertex_count <= MAX_VERTICES:
        raise InvalidArgument(f"vertex count must be in 1..{MAX_VERTICES}")
    adj = [0] * vertex_count
    for u, v in edges:
        if u == v:
            raise InvalidArgument(f"loop at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise InvalidArgument(f"edge {u}-{v} out of range")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(vertex_count, tuple(adj))


def induced_subgraph(g: Graph, s: int) -> Graph:
    """G[S] with vertices renumbered densely in increasing order."""
    s &= g.full_mask
    if not s:
        raise InvalidArgument("induced subgraph needs a nonempty vertex set")
    keep = list(members(s))
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        adj.append(to_mask(index[u] for u in members(g.adjacency[v] & s)))
    parts = None
    if g.parts is not None:
        sizes = [popcount(m & s) for m in g.part_masks()]
        # parts stay contiguous after renumbering but may lose their order
        parts = tuple(x for x in sizes if x)
    return Graph(len(keep), tuple(adj), parts)


def max_degree(g: Graph) -> int:
    return max(popcount(nb) for nb in g.adjacency)


def is_independent(g: Graph, s: int) -> bool:
    return all(not (g.adjacency[v] & s) for v in members(s))


def independent_sets(g: Graph) -> list[int]:
    """All independent vertex sets (including the empty set), ascending."""
    if g.parts is not None:
        found = {0}
        for part in g.part_masks():
            sub = part
            while sub:
                found.add(sub)
                sub = (sub - 1) & part
        return sorted(found)
    if g.vertex_count > 24:
        raise ResourceLimit("independent-set listing is limited to 24 vertices")
    out = [0]
    # extend sets only by larger vertices to list each set once
    frontier = [(0, 0)]
    while frontier:
        mask, nxt = frontier.pop()
        for v in range(nxt, g.vertex_count):
            if not g.adjacency[v] & mask:
                new = mask | 1 << v
                out.append(new)
                frontier.append((new, v + 1))
    return sorted(out)


def is_automorphism(g: Graph, perm: Perm) -> bool:
    for u, v in g.edges():
        if not g.adjacent(perm[u], perm[v]):
            return False
    return sorted(perm) == list(g.vertices)


def automorphism_generators(g: Graph) -> list[Perm]:
    """Generators of Aut(g) for complete multipartite graphs.

    Within-part transpositions (first vertex with each other vertex) generate
    the symmetric group of each part; swapping each part with the next part
    of equal size generates the permutations of equal parts.  Graphs without
    part data get the identity only.
    """
    n = g.vertex_count
    identity = tuple(range(n))
    if g.parts is None:
        return [identity]
    gens: list[Perm] = []
    starts = []
    start = 0
    for size in g.parts:
        starts.append(start)
        for j in range(1, size):
            p = list(identity)
            p[start], p[start + j] = p[start + j], p[start]
            gens.append(tuple(p))
        start += size
    for i in range(len(g.parts)):
        later = [j for j in range(i + 1, len(g.parts)) if g.parts[j] == g.parts[i]]
        if later:
            size, a, b = g.parts[i], starts[i], starts[later[0]]
            p = list(identity)
            for j in range(size):
                p[a + j], p[b + j] = b + j, a + j
            gens.append(tuple(p))
    return gens or [identity]


@lru_cache(maxsize=64)
def automorphism_group(g: Graph) -> tuple[Perm, ...]:
    return tuple(generate_group(automorphism_generators(g)))


def generate_group(gens: Sequence[Perm], limit: int = 200_000) -> list[Perm]:
    """Closure of a set of permutations; identity first, then BFS order."""
    n = len(gens[0])
    identity = tuple(range(n))
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        p = queue.popleft()
        for gen in gens:
            q = tuple(gen[p[i]] for i in range(n))
            if q not in seen:
                seen.add(q)
                order.append(q)
                if len(order) > limit:
                    raise ResourceLimit(f"automorphism group larger than {limit}")
                queue.append(q)
    return order


def brute_force_automorphisms(g: Graph) -> list[Perm]:
    from itertools import permutations

    return [p for p in permutations(g.vertices) if is_automorphism(g, p)]


def map_mask(perm: Perm, mask: int) -> int:
    out = 0
    for v in members(mask):
        out |= 1 << perm[v]
    return out


_KSPEC = re.compile(r"^K(\d+(?:,\d+)*)$")


def parse_graph(text: str) -> Graph:
    """Parse ``K<n1>,<n2>,...`` or the path of an edge-list file."""
    text = text.strip()
    match = _KSPEC.match(text.replace(" ", ""))
    if match:
        return complete_multipartite([int(x) for x in match.group(1).split(",")])
    path = Path(text)
    if path.is_file():
        return read_edge_list(path)
    raise InvalidArgument(f"cannot parse graph spec {text!r}")


def read_edge_list(path: str | Path) -> Graph:
    """Read ``p <n>`` followed by ``e <u> <v>`` lines (0-indexed)."""
    n = None
    edges = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "p" and len(fields) == 2:
            n = int(fields[1])
        elif fields[0] == "e" and len(fields) == 3:
            edges.append((int(fields[1]), int(fields[2])))
        else:
            raise InvalidArgument(f"{path}:{lineno}: unrecognised line {raw!r}")
    if n is None:
        raise InvalidArgument(f"{path}: missing 'p <n>' header")
    return graph_from_edges(n, edges)


def write_edge_list(g: Graph, path: str | Path) -> None:
    lines = [f"p {g.vertex_count}"] + [f"e {u} {v}" for u, v in g.edges()]
    Path(path).write_text("\n".join(lines) + "\n")
