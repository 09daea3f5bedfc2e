"""Constructive proportional colorings of K_{n,m} from (m+n-d-1)-assignments.

The colorers follow the case analysis of the upper-bound argument step by
step.  Every "without loss of generality" becomes a deterministic choice
(lowest index first), every claimed existence is checked, and a failed
check raises :class:`InternalError` naming the step.  Nothing is returned
without passing :func:`verify_proportional`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InternalError, InvalidArgument
from .graph import Graph
from .lists import ListAssignment, require_k_assignment, size_bounds
from .solver import Coloring, find_proportional, verify_proportional

Matching = dict[int, int]


def max_bipartite_matching(left_count: int, right_count: int,
                           edges: Iterable[tuple[int, int]]) -> Matching:
    """Maximum matching (left -> right) by repeated augmenting paths."""
    adj: list[list[int]] = [[] for _ in range(left_count)]
    for x, y in edges:
        if not (0 <= x < left_count and 0 <= y < right_count):
            raise InvalidArgument(f"edge ({x}, {y}) out of range")
        adj[x].append(y)
    for row in adj:
        row.sort()
    match_right: list[int | None] = [None] * right_count

    def augment(x: int, seen: list[bool]) -> bool:
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                if match_right[y] is None or augment(match_right[y], seen):
                    match_right[y] = x
                    return True
        return False

    for x in range(left_count):
        augment(x, [False] * right_count)
    return {x: y for y, x in enumerate(match_right) if x is not None}


def distinct_representatives(vertices: Sequence[int], lists: dict[int, set[int]]) -> dict[int, int] | None:
    """Pairwise distinct colors from the given lists, or None if Hall fails."""
    colors = sorted(set().union(*lists.values())) if lists else []
    index = {c: i for i, c in enumerate(colors)}
    edges = [(i, index[c]) for i, v in enumerate(vertices) for c in lists[v]]
    m = max_bipartite_matching(len(vertices), len(colors), edges)
    if len(m) < len(vertices):
        return None
    return {v: colors[m[i]] for i, v in enumerate(vertices)}


def hall_proper_coloring(g: Graph, l: ListAssignment) -> Coloring:
    """Injective L-coloring when no color has multiplicity above k."""
    k = require_k_assignment(l)
    over = {c: eta for c, eta in l.multiplicities().items() if eta > k}
    if over:
        raise InvalidArgument(f"multiplicity exceeds k={k} for colors {sorted(over)}")
    sdr = distinct_representatives(list(g.vertices), {v: set(l[v]) for v in g.vertices})
    if sdr is None:
        raise InternalError("Hall matching", "no matching saturates the vertices", l)
    return tuple(sdr[v] for v in g.vertices)


def excess_colors(l: ListAssignment, f: Sequence[int]) -> list[int]:
    k = require_k_assignment(l)
    used = Counter(f)
    return sorted(c for c, eta in l.multiplicities().items() if used[c] > size_bounds(eta, k)[1])


def _proper_from_lists(g: Graph, l: ListAssignment, f: Sequence[int]) -> list[str]:
    problems = [f"vertex {v}: {c} not in list" for v, c in enumerate(f) if c not in l[v]]
    problems += [f"edge {u}-{v} monochromatic" for u, v in g.edges() if f[u] == f[v]]
    return problems


def repair_no_excess(g: Graph, l: ListAssignment, f: Sequence[int],
                     trace: list[str] | None = None) -> Coloring:
    """Turn a proper L-coloring without excess into a proportional one.

    Needs max eta < 2k, so every lower bound is 0 or 1.  An unused color
    with lower bound 1 is fed along a shortest chain of single recolorings
    ending at a color used above its lower bound.  If no chain exists the
    exact search is run; it must succeed because such an L-coloring is
    known to exist under these hypotheses.
    """
    k = require_k_assignment(l)
    if len(f) != g.vertex_count:
        raise InvalidArgument("coloring length differs from vertex count")
    etas = l.multiplicities()
    if max(etas.values()) >= 2 * k:
        raise InvalidArgument(f"needs max multiplicity < 2k = {2 * k}")
    problems = _proper_from_lists(g, l, f)
    if problems:
        raise InvalidArgument("not a proper L-coloring: " + "; ".join(problems[:3]))
    if excess_colors(l, f):
        raise InvalidArgument(f"colors used excessively: {excess_colors(l, f)}")

    f = list(f)
    lo = {c: size_bounds(eta, k)[0] for c, eta in etas.items()}
    count = Counter(f)
    holders = {c: [v for v in g.vertices if c in l[v]] for c in etas}
    while True:
        short = [c for c in sorted(etas) if count[c] < lo[c]]
        if not short:
            break
        chain = _recoloring_chain(short[0], f, holders, count, lo)
        if chain is None:
            if trace is not None:
                trace.append("repair: exact fallback")
            exact = find_proportional(g, l, prefer=f)
            if exact is None:
                raise InternalError("no-excess repair", "exact search found no proportional coloring", l)
            return exact
        for v, color in chain:
            count[f[v]] -= 1
            f[v] = color
            count[color] += 1
        if trace is not None:
            trace.append(f"repair: chain of length {len(chain)}")
    result = tuple(f)
    if verify_proportional(g, l, result):
        # a chain move broke properness; the exact search settles it
        exact = find_proportional(g, l, prefer=f)
        if exact is None:
            raise InternalError("no-excess repair", "exact search found no proportional coloring", l)
        return exact
    return result


def _recoloring_chain(start, f, holders, count, lo):
    """Shortest list of (vertex, new color) moves that gives ``start`` a vertex."""
    parent = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for want in frontier:
            for v in holders[want]:
                have = f[v]
                if have == want or have in parent:
                    continue
                parent[have] = (want, v)
                if count[have] > lo[have]:
                    moves = []
                    color = have
                    while parent[color] is not None:
                        target, vertex = parent[color]
                        moves.append((vertex, target))
                        color = target
                    # apply from the start color outward
                    return moves[::-1]
                # only a color whose single vertex can leave keeps its class valid
                if count[have] == 1:
                    nxt.append(have)
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# K_{n,m} colorers


@dataclass(frozen=True)
class Sides:
    """Bipartition with |A| = n >= 2 and |B| = m >= 3d."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    d: int

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def m(self) -> int:
        return len(self.B)

    @property
    def k(self) -> int:
        return self.n + self.m - self.d - 1


def sides(g: Graph, d: int) -> Sides:
    if g.parts is None or len(g.parts) != 2:
        raise InvalidArgument("needs a complete bipartite graph with part data")
    if d < 1:
        raise InvalidArgument("d must be at least 1")
    first, second = g.parts
    part0 = tuple(range(first))
    part1 = tuple(range(first, first + second))
    for A, B in ((part0, part1), (part1, part0)):
        if len(B) >= 3 * d and len(A) >= 2:
            return Sides(A, B, d)
    raise InvalidArgument(f"K{first},{second} with d={d}: need n >= 2 and m >= 3d")


def _check_input(g: Graph, l: ListAssignment, d: int) -> Sides:
    sd = sides(g, d)
    if len(l) != g.vertex_count:
        raise InvalidArgument("assignment and graph differ in vertex count")
    require_k_assignment(l, sd.k)
    return sd


def _ranked_high(l: ListAssignment, k: int) -> list[int]:
    etas = l.multiplicities()
    return sorted((c for c, eta in etas.items() if eta > k), key=lambda c: (-etas[c], c))


def _pair_up(colors: Sequence[int], B: Sequence[int], l: ListAssignment, used: set[int]):
    """Give each color two unused B-vertices whose lists contain it."""
    pairs = []
    for c in colors:
        found = [v for v in B if v not in used and c in l[v]][:2]
        if len(found) < 2:
            raise InternalError("pairing high-multiplicity colors", f"color {c} has no two free vertices", l)
        used.update(found)
        pairs.append((c, found[0], found[1]))
    return pairs


def _sdr_or_fail(vertices, l, removed, step) -> dict[int, int]:
    sdr = distinct_representatives(vertices, {v: set(l[v]) - removed for v in vertices})
    if sdr is None:
        raise InternalError(step, "no distinct representatives for the residual lists", l)
    return sdr


def _finish(g: Graph, l: ListAssignment, f: dict[int, int] | Sequence[int], step: str,
            trace: list[str] | None, repair: bool = True) -> Coloring:
    f = tuple(f[v] for v in g.vertices) if isinstance(f, dict) else tuple(f)
    if repair:
        problems = _proper_from_lists(g, l, f)
        if problems or excess_colors(l, f):
            raise InternalError(step, "coloring is not proper without excess: "
                                + "; ".join(problems[:3] + [f"excess {excess_colors(l, f)}"]), l)
        f = repair_no_excess(g, l, f, trace)
    bad = verify_proportional(g, l, f)
    if bad:
        raise InternalError(step, "result is not proportional: " + "; ".join(map(str, bad[:3])), l)
    return f


def color_knm_many_high(g: Graph, l: ListAssignment, d: int, trace: list[str] | None = None) -> Coloring:
    """Proportional L-coloring when at least (m-d)/2 colors have eta > k."""
    sd = _check_input(g, l, d)
    A, B, n, m, k = sd.A, sd.B, sd.n, sd.m, sd.k
    high = _ranked_high(l, k)
    if 2 * len(high) < m - d:
        raise InvalidArgument(f"only {len(high)} high-multiplicity colors; need at least (m-d)/2 = {(m - d) / 2}")
    log = trace if trace is not None else []
    f: dict[int, int] = {}
    used: set[int] = set()

    if (m - d) % 2 == 0:
        chosen = high[: (m - d) // 2]
        pairs = _pair_up(chosen, B, l, used)
        rest_B = [v for v in B if v not in used]
        removed = set(chosen)
        sdr = distinct_representatives(list(A) + rest_B, {v: set(l[v]) - removed for v in list(A) + rest_B})
        if sdr is not None:
            log.append("many-high even: distinct residual")
            for c, x, y in pairs:
                f[x] = f[y] = c
            f.update(sdr)
            return _finish(g, l, f, "many-high even", trace)
        if l.is_constant():
            log.append("many-high even (a): constant assignment")
            return _finish(g, l, _constant_pairing(sd, sorted(l[0]), l), "many-high even (a)", trace)
        log.append("many-high even (b)")
        anchor = rest_B[0]
        if not all(removed <= l[v] for v in list(A) + rest_B):
            raise InternalError("many-high even (b)", "residual lists are not constant", l)
        j = next((i for i, (_, x, y) in enumerate(pairs) if l[x] != l[anchor] or l[y] != l[anchor]), None)
        if j is None:
            raise InternalError("many-high even (b)", "no pair differs from the residual list", l)
        cj, xj, yj = pairs[j]
        for i, (c, x, y) in enumerate(pairs):
            if i != j:
                f[x] = f[y] = c
        f[A[0]] = f[A[1]] = cj
        rest = list(A[2:]) + rest_B + [xj, yj]
        f.update(_sdr_or_fail(rest, l, removed, "many-high even (b)"))
        return _finish(g, l, f, "many-high even (b)", trace)

    h = (m - d + 1) // 2
    chosen = high[:h]
    last = chosen[-1]
    pairs = _pair_up(chosen[:-1], B, l, used)
    for c, x, y in pairs:
        f[x] = f[y] = c
    removed = set(chosen)
    avail = [v for v in B if v not in used and last in l[v]]
    if len(avail) >= 2:
        log.append("many-high odd (a)")
        f[avail[0]] = f[avail[1]] = last
        used.update(avail[:2])
        rest = list(A) + [v for v in B if v not in used]
        f.update(_sdr_or_fail(rest, l, removed, "many-high odd (a)"))
        return _finish(g, l, f, "many-high odd (a)", trace)
    if len(avail) == 1:
        log.append("many-high odd (b)")
        if last not in l[A[0]] or last not in l[A[1]]:
            raise InternalError("many-high odd (b)", f"color {last} missing from u1 or u2", l)
        f[A[0]] = f[A[1]] = last
        rest = list(A[2:]) + [v for v in B if v not in used]
        f.update(_sdr_or_fail(rest, l, removed, "many-high odd (b)"))
        return _finish(g, l, f, "many-high odd (b)", trace)
    raise InternalError("many-high odd", f"color {last} on no free vertex of B", l)


def _constant_pairing(sd: Sides, palette: list[int], l: ListAssignment) -> dict[int, int]:
    """Pairs inside A, then pairs inside B, leftovers get fresh colors."""
    A, B = sd.A, sd.B
    f: dict[int, int] = {}
    idx = 0
    for side in (A, B):
        for i in range(len(side) // 2):
            f[side[2 * i]] = f[side[2 * i + 1]] = palette[idx]
            idx += 1
    for side in (A, B):
        if len(side) % 2:
            if idx >= len(palette):
                raise InternalError("many-high even (a)", "constant list too short", l)
            f[side[-1]] = palette[idx]
            idx += 1
    return f


@dataclass
class RepairState:
    """Bookkeeping of one substitution level of :func:`color_knm`."""

    alpha: int
    c: int
    z: int
    substituted: tuple[int, ...]
    m_c: int
    eta_z: int
    eta_c: int
    step: str = ""
    D: frozenset[int] = frozenset()
    S: frozenset[int] = frozenset()


def color_knm(g: Graph, l: ListAssignment, d: int, trace: list[str] | None = None,
              states: list[RepairState] | None = None) -> Coloring:
    """Proportional L-coloring of K_{n,m} for any (m+n-d-1)-assignment L.

    Recurses on the number of high-multiplicity colors: one such color c
    is replaced by a fresh color z on m-d vertices of B, the smaller
    instance is colored, and the result is repaired back to L.
    """
    sd = _check_input(g, l, d)
    A, B, n, m, k = sd.A, sd.B, sd.n, sd.m, sd.k
    high = _ranked_high(l, k)
    log = trace if trace is not None else []
    if not high:
        log.append("no high multiplicity: Hall matching")
        return _finish(g, l, hall_proper_coloring(g, l), "Hall matching", trace)
    if 2 * len(high) >= m - d:
        return color_knm_many_high(g, l, d, trace)

    c = high[0]
    holders = [v for v in B if c in l[v]]
    if len(holders) < m - d:
        raise InternalError("substitution", f"color {c} lies on only {len(holders)} vertices of B", l)
    sub = tuple(holders[: m - d])
    z = max(l.palette) + 1
    lp = l.replace({v: (l[v] - {c}) | {z} for v in sub})
    etas = lp.multiplicities()
    state = RepairState(len(high), c, z, sub, len(holders), etas[z], etas.get(c, 0))
    if state.eta_z != m - d or state.eta_c > n + d:
        raise InternalError("substitution", f"eta'(z)={state.eta_z}, eta'(c)={state.eta_c}", l)
    if len(_ranked_high(lp, k)) != len(high) - 1:
        raise InternalError("substitution", "high-multiplicity count did not drop by one", l)
    if states is not None:
        states.append(state)
    log.append(f"substitute (alpha={len(high)})")

    f = list(color_knm(g, lp, d, trace, states))
    count = Counter(f)
    if count[z] == 0:
        state.step = "drop z"
        log.append(state.step)
        return _finish(g, l, f, "drop z", trace)
    if count[z] != 1 or count[c] > 1:
        raise InternalError("repair ladder", f"z used {count[z]} times, c used {count[c]} times", l)
    vz = f.index(z)
    if count[c] == 0:
        state.step = "recolor z to c"
        f[vz] = c
        log.append(state.step)
        return _finish(g, l, f, state.step, trace, repair=False)
    vc = f.index(c)
    if vc in B:
        state.step = "c and z both in B"
        f[vz] = c
        log.append(state.step)
        return _finish(g, l, f, state.step, trace, repair=False)

    u1, v1 = vc, vz
    on_B = Counter(f[v] for v in B)
    D = {a for a, cnt in on_B.items() if cnt == 2}
    used_A = {f[u] for u in A}
    free = set(lp[u1]) - used_A - D
    S = {f[v] for v in B} - D - {z}
    state.D, state.S = frozenset(D), frozenset(S)
    if len(free) < d + 1:
        raise InternalError("repair ladder", f"|L''(u1)| = {len(free)} < d+1", l)
    outside = sorted(free - S)
    if outside:
        state.step = "case (1): unused color for u1"
        w = outside[0]
        f[u1], f[v1] = w, c
        log.append(state.step)
        return _finish(g, l, f, state.step, trace, repair=False)
    state.step = "case (2): three-way recolor"
    cands = [v for v in B if v != v1 and f[v] in free and c in l[v]]
    if not cands:
        raise InternalError("case (2)", "no v with c in L(v)", l)
    v = cands[0]
    a = f[v]
    f[v], f[u1], f[v1] = c, a, c
    log.append(state.step)
    return _finish(g, l, f, state.step, trace, repair=False)
