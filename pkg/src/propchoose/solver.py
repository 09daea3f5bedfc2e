"""Proportional L-colorings: checking, finding, and deciding choosability."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import enumeration
from .errors import InvalidArgument, ResourceLimit
from .graph import Graph, independent_sets, members, popcount
from .lists import ListAssignment, SupportMultiset, require_k_assignment, size_bounds

Coloring = tuple[int, ...]

MAX_DP_VERTICES = 22


@dataclass(frozen=True)
class Violation:
    kind: str  # "length", "not-in-list", "improper-edge" or "class-size"
    detail: tuple

    def __str__(self) -> str:
        if self.kind == "not-in-list":
            v, c = self.detail
            return f"vertex {v} colored {c}, which is not in its list"
        if self.kind == "improper-edge":
            u, v, c = self.detail
            return f"edge {u}-{v} has both ends colored {c}"
        if self.kind == "class-size":
            c, size, lo, hi = self.detail
            return f"color {c} used {size} times, allowed {lo}..{hi}"
        return f"{self.kind}: {self.detail}"


def verify_proportional(g: Graph, l: ListAssignment, f: Sequence[int]) -> list[Violation]:
    """Every way in which ``f`` fails to be a proportional L-coloring."""
    k = require_k_assignment(l)
    out: list[Violation] = []
    if len(f) != g.vertex_count or len(l) != g.vertex_count:
        return [Violation("length", (len(f), len(l), g.vertex_count))]
    for v, c in enumerate(f):
        if c not in l[v]:
            out.append(Violation("not-in-list", (v, c)))
    for u, v in g.edges():
        if f[u] == f[v]:
            out.append(Violation("improper-edge", (u, v, f[u])))
    used: dict[int, int] = {}
    for c in f:
        used[c] = used.get(c, 0) + 1
    for c, eta in sorted(l.multiplicities().items()):
        lo, hi = size_bounds(eta, k)
        size = used.get(c, 0)
        if not lo <= size <= hi:
            out.append(Violation("class-size", (c, size, lo, hi)))
    return out


def is_proportional(g: Graph, l: ListAssignment, f: Sequence[int]) -> bool:
    return not verify_proportional(g, l, f)


@lru_cache(maxsize=4096)
def _disjoint_states(n: int, t: int) -> int:
    """Bitset (over all 2^n vertex subsets) of the subsets disjoint from t."""
    bits = 1
    for v in range(n):
        if not t >> v & 1:
            bits |= bits << (1 << v)
    return bits


def color_by_classes(g: Graph, colors: Sequence[tuple[int, int, int, int]],
                     prefer: Sequence[int] | None = None) -> Coloring | None:
    """Pick for each color an independent class inside its support.

    ``colors`` holds ``(color, support, lo, hi)``; the classes must partition
    the vertex set and have sizes within ``lo..hi``.  Solved exactly by a
    dynamic program over the set of colored vertices.  ``prefer`` (a
    coloring) breaks ties toward its own classes.
    """
    n = g.vertex_count
    if n > MAX_DP_VERTICES:
        raise ResourceLimit(f"exact coloring search is limited to {MAX_DP_VERTICES} vertices")
    indep = independent_sets(g)
    reach = 1
    layers = []
    cands = []
    for c, s, lo, hi in colors:
        cand = [t for t in indep if not t & ~s and lo <= popcount(t) <= hi]
        if prefer is not None:
            own = sum(1 << v for v in range(n) if prefer[v] == c) & s
            cand.sort(key=lambda t: t != own)
        new = 0
        for t in cand:
            new |= (reach & _disjoint_states(n, t)) << t
        layers.append(reach)
        cands.append(cand)
        reach = new
        if not reach:
            return None
    full = (1 << n) - 1
    if not reach >> full & 1:
        return None
    f = [0] * n
    state = full
    for i in range(len(colors) - 1, -1, -1):
        before = layers[i]
        for t in cands[i]:
            if t & state == t and before >> (state ^ t) & 1:
                for v in members(t):
                    f[v] = colors[i][0]
                state ^= t
                break
        else:  # pragma: no cover - the forward pass guarantees a choice
            raise AssertionError("reconstruction failed")
    return tuple(f)


def proportional_classes(l: ListAssignment) -> list[tuple[int, int, int, int]]:
    """(color, support, lo, hi), mandatory colors first then larger eta."""
    k = require_k_assignment(l)
    rows = []
    for c, s in l.supports().items():
        lo, hi = size_bounds(popcount(s), k)
        rows.append((c, s, lo, hi))
    rows.sort(key=lambda r: (-r[2], -popcount(r[1]), r[0]))
    return rows


def find_proportional(g: Graph, l: ListAssignment, prefer: Sequence[int] | None = None) -> Coloring | None:
    """A proportional L-coloring of g, or None if none exists."""
    if len(l) != g.vertex_count:
        raise InvalidArgument("assignment and graph differ in vertex count")
    return color_by_classes(g, proportional_classes(l), prefer)


def naive_find_proportional(g: Graph, l: ListAssignment) -> Coloring | None:
    """Try every coloring from the lists; for tiny oracle checks only."""
    from itertools import product

    for f in product(*(sorted(lst) for lst in l.lists)):
        if is_proportional(g, l, f):
            return tuple(f)
    return None


# ---------------------------------------------------------------------------
# deciding proportional k-choosability


CHOOSABLE = "choosable"
NOT_CHOOSABLE = "not-choosable"
UNDECIDED = "undecided"


@dataclass
class Verdict:
    graph: str
    k: int
    outcome: str
    witness: ListAssignment | None = None
    witness_form: SupportMultiset | None = None
    classes_checked: int = 0
    elapsed: float = 0.0
    message: str = ""
    progress: tuple[int, int] = (0, 0)

    @property
    def witness_hash(self) -> str | None:
        return None if self.witness_form is None else f"{self.witness_form.hash64():016x}"

    def __str__(self) -> str:
        text = f"{self.graph} k={self.k}: {self.outcome} ({self.classes_checked} classes, {self.elapsed:.2f}s)"
        if self.witness_form is not None:
            text += f"\n  witness: {self.witness_form}"
        if self.message:
            text += f"\n  {self.message}"
        return text


def _decide_rows(g: Graph, k: int, rows: np.ndarray) -> tuple[int, np.ndarray | None]:
    """Check every class below each prefix in ``rows``; stop at the first failure."""
    tab = enumeration.tables(g, k)
    leaves = 0
    for prefix in rows:
        walker = enumeration.subtree_walker(tab, prefix, check=True)
        bad = walker.step(1)
        leaves += walker.leaves
        if len(bad):
            return leaves, bad[0]
    return leaves, None


def _chunks(rows: np.ndarray, target: int = 256) -> list[np.ndarray]:
    size = max(1, math.ceil(len(rows) / target))
    return [rows[i:i + size] for i in range(0, len(rows), size)]


@dataclass
class Checkpoint:
    """Append-only progress log, one ``key=value`` line per finished chunk."""

    path: Path
    done: dict[tuple[str, int, int], tuple[int, int]] = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | Path) -> "Checkpoint":
        path = Path(path)
        ck = cls(path)
        if path.exists():
            for line in path.read_text().splitlines():
                rec = dict(kv.split("=", 1) for kv in line.split())
                key = (rec["graph"], int(rec["k"]), int(rec["chunks"]))
                ck.done[key] = (int(rec["chunk"]) + 1, int(rec["classes"]))
        return ck

    def resume_point(self, graph: str, k: int, chunks: int) -> tuple[int, int]:
        return self.done.get((graph, k, chunks), (0, 0))

    def record(self, graph: str, k: int, chunks: int, chunk: int, classes: int) -> None:
        self.done[(graph, k, chunks)] = (chunk + 1, classes)
        with self.path.open("a") as fh:
            fh.write(f"graph={graph} k={k} chunks={chunks} chunk={chunk} classes={classes}\n")


def decide_choosable(
    g: Graph,
    k: int,
    jobs: int = 1,
    max_vertices: int | None = None,
    max_k: int | None = None,
    time_limit: float | None = None,
    checkpoint: str | Path | None = None,
    progress: Callable[[int, int, int], None] | None = None,
) -> Verdict:
    """Decide proportional k-choosability by checking every assignment class.

    The witness of a negative verdict is the first failing class in
    canonical order, whatever ``jobs`` is.
    """
    start = time.perf_counter()
    try:
        enumeration.check_guard(g, k, max_vertices, max_k)
    except ResourceLimit as exc:
        return Verdict(g.name, k, UNDECIDED, message=str(exc))
    tab = enumeration.tables(g, k)
    chunks = _chunks(enumeration.prefixes(tab))
    ck = Checkpoint.load(checkpoint) if checkpoint else None
    first, checked = ck.resume_point(g.name, k, len(chunks)) if ck else (0, 0)

    def finish(outcome, row=None, message=""):
        verdict = Verdict(g.name, k, outcome, classes_checked=checked,
                          elapsed=time.perf_counter() - start, message=message,
                          progress=(done, len(chunks)))
        if row is not None:
            verdict.witness_form = enumeration.vector_to_form(g.vertex_count, row)
            verdict.witness = verdict.witness_form.to_assignment()
        return verdict

    done = first
    pending = chunks[first:]
    if jobs > 1 and len(pending) > 1:
        pool = ProcessPoolExecutor(max_workers=jobs)
        results = pool.map(_decide_rows, [g] * len(pending), [k] * len(pending), pending)
    else:
        pool = None
        results = (_decide_rows(g, k, rows) for rows in pending)
    try:
        for leaves, bad in results:
            checked += leaves
            if bad is not None:
                return finish(NOT_CHOOSABLE, bad)
            if ck:
                ck.record(g.name, k, len(chunks), done, checked)
            done += 1
            if progress:
                progress(done, len(chunks), checked)
            if time_limit is not None and time.perf_counter() - start > time_limit and done < len(chunks):
                return finish(UNDECIDED, message=f"time limit reached after {done}/{len(chunks)} chunks")
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return finish(CHOOSABLE)


@dataclass
class ChiResult:
    graph: str
    lower: int
    upper: int | None
    value: int | None
    start: int
    verdicts: list[Verdict]
    lower_source: str = ""
    forced: bool = False

    @property
    def exact(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is not None:
            text = f"chi_pc = {self.value}"
            if self.forced:
                text += " (forced: lower=upper)"
            return text
        upper = "?" if self.upper is None else str(self.upper)
        return f"chi_pc in [{self.lower}, {upper}]"


def chi_pc(g: Graph, k_max: int, jobs: int = 1, max_vertices: int | None = None,
           max_k: int | None = None, time_limit: float | None = None,
           on_verdict: Callable[[Verdict], None] | None = None,
           checkpoint: str | Path | None = None) -> ChiResult:
    """Smallest k <= k_max at which g is proportionally k-choosable.

    The search starts at the best proven lower bound for complete
    multipartite graphs; monotonicity in k lets it stop at the first
    positive verdict.  Unresolved searches return an interval.
    """
    from .bounds import bound_report

    if k_max < 1:
        raise InvalidArgument("k_max must be positive")
    lower, upper, source, forced = 1, None, "trivial", False
    if g.parts is not None and len(g.parts) >= 2:
        rep = bound_report(g.parts)
        lower, upper, source, forced = rep.lower, rep.upper, rep.lower_source, rep.forced
    result = ChiResult(g.name, lower, upper, None, lower, [], source, forced)
    k = lower
    while k <= k_max:
        verdict = decide_choosable(g, k, jobs=jobs, max_vertices=max_vertices, max_k=max_k,
                                   time_limit=time_limit, checkpoint=checkpoint)
        result.verdicts.append(verdict)
        if on_verdict:
            on_verdict(verdict)
        if verdict.outcome == CHOOSABLE:
            result.value = k
            result.lower = result.upper = k
            return result
        if verdict.outcome == UNDECIDED:
            return result
        result.lower = k + 1
        k += 1
    return result


def coloring_lines(f: Iterable[int]) -> str:
    return "".join(f"{v}: {c}\n" for v, c in enumerate(f))
