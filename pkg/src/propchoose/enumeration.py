"""Exhaustive enumeration of k-assignments up to renaming and automorphism.

Each class is emitted once, as the lexicographically largest multiplicity
vector in its orbit.  The walk itself runs in :mod:`propchoose._kernel`;
this module prepares the lookup tables and exposes the stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _kernel
from .errors import InvalidArgument, ResourceLimit
from .graph import Graph, automorphism_group, independent_sets, popcount
from .lists import ListAssignment, SupportMultiset, size_bounds

DEFAULT_MAX_VERTICES = 10
DEFAULT_MAX_K = 6


def check_guard(g: Graph, k: int, max_vertices: int | None = None, max_k: int | None = None) -> None:
    if k < 1:
        raise InvalidArgument("k must be positive")
    max_vertices = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    max_k = DEFAULT_MAX_K if max_k is None else max_k
    if g.vertex_count > max_vertices:
        raise ResourceLimit(
            f"{g.name} has {g.vertex_count} vertices; enumeration guard is {max_vertices} "
            "(raise it with --max-vertices)"
        )
    if k > max_k:
        raise ResourceLimit(f"k={k} exceeds the enumeration guard k<={max_k} (raise it with --max-k)")


@dataclass(frozen=True)
class Tables:
    """Per-(graph, k) lookup tables consumed by the kernel."""

    n: int
    k: int
    maskmap: np.ndarray
    cand_ptr: np.ndarray
    cand: np.ndarray
    disj: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.n


def _mask_images(perms, n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    out = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for row, perm in enumerate(perms):
        img = np.zeros_like(masks)
        for v in range(n):
            img |= ((masks >> v) & 1) << perm[v]
        out[row] = img
    return out


def class_tables(g: Graph, k: int, caps: dict[int, tuple[int, int]] | None = None):
    """Admissible color classes per support mask, in kernel (CSR) layout.

    A color with support ``s`` may color an independent subset of ``s``
    whose size lies in ``size_bounds(|s|, k)``; ``caps`` overrides the
    bounds per support size.
    """
    n = g.vertex_count
    indep = independent_sets(g)
    sizes = [popcount(t) for t in indep]
    ptr = [0]
    cand: list[int] = []
    for s in range(1 << n):
        if s:
            lo, hi = caps[popcount(s)] if caps else size_bounds(popcount(s), k)
            cand.extend(t for t, z in zip(indep, sizes) if lo <= z <= hi and not t & ~s)
        ptr.append(len(cand))
    words = max(1, (1 << n) // 64)
    states = np.arange(1 << n, dtype=np.int64)
    disj = np.zeros((1 << n, words), dtype=np.uint64)
    for t in range(1 << n):
        free = (states & t) == 0
        padded = np.zeros(words * 64, dtype=bool)
        padded[: 1 << n] = free
        bits = np.packbits(padded.reshape(words, 64)[:, ::-1], axis=1)
        disj[t] = bits.view(">u8").ravel().astype(np.uint64)
    return np.array(ptr, dtype=np.int64), np.array(cand, dtype=np.int64), disj


@lru_cache(maxsize=32)
def tables(g: Graph, k: int) -> Tables:
    maskmap = _mask_images(automorphism_group(g), g.vertex_count)
    ptr, cand, disj = class_tables(g, k)
    return Tables(g.vertex_count, k, maskmap, ptr, cand, disj)


class Walker:
    """Resumable kernel walk over one region of the search tree."""

    def __init__(self, tab: Tables, mult: np.ndarray, t_lo: int, t_hi: int, check: bool):
        self.tab = tab
        self.mult = mult.astype(np.int64).copy()
        resid = np.full(tab.n, tab.k, dtype=np.int64)
        for mask in range(t_hi + 1, tab.size):
            if self.mult[mask]:
                for v in range(tab.n):
                    if mask >> v & 1:
                        resid[v] -= self.mult[mask]
        if (resid < 0).any():
            raise InvalidArgument("prefix exceeds the list size")
        self.resid = resid
        self.state = np.array([t_hi, _kernel.DOWN], dtype=np.int64)
        self.t_lo, self.t_hi, self.check = t_lo, t_hi, check
        self.finished = False
        self.leaves = 0

    def step(self, max_out: int) -> np.ndarray:
        if self.finished:
            return np.zeros((0, self.tab.size), dtype=np.int64)
        out = np.zeros((max_out, self.tab.size), dtype=np.int64)
        tab = self.tab
        written, leaves, finished = _kernel.walk(
            tab.n, self.mult, self.resid, self.state, self.t_lo, self.t_hi, tab.maskmap,
            self.check, tab.cand_ptr, tab.cand, tab.disj, out, max_out,
        )
        self.leaves += leaves
        self.finished = bool(finished)
        return out[:written]


def canonical_vectors(g: Graph, k: int, batch: int = 4096) -> Iterator[np.ndarray]:
    tab = tables(g, k)
    walker = Walker(tab, np.zeros(tab.size, dtype=np.int64), 1, tab.size - 1, False)
    while not walker.finished:
        yield from walker.step(batch)


def vector_to_form(n: int, vec) -> SupportMultiset:
    return SupportMultiset.from_counts(n, {m: int(c) for m, c in enumerate(vec) if c})


def form_to_vector(form: SupportMultiset) -> np.ndarray:
    vec = np.zeros(1 << form.vertex_count, dtype=np.int64)
    for m, c in form.entries:
        vec[m] = c
    return vec


def enumerate_forms(g: Graph, k: int, max_vertices: int | None = None,
                    max_k: int | None = None) -> Iterator[SupportMultiset]:
    check_guard(g, k, max_vertices, max_k)
    for vec in canonical_vectors(g, k):
        yield vector_to_form(g.vertex_count, vec)


def enumerate_assignments(g: Graph, k: int, max_vertices: int | None = None,
                          max_k: int | None = None) -> Iterator[ListAssignment]:
    """One representative k-assignment per class, in canonical order."""
    for form in enumerate_forms(g, k, max_vertices, max_k):
        yield form.to_assignment()


def count_classes(g: Graph, k: int, max_vertices: int | None = None, max_k: int | None = None) -> int:
    check_guard(g, k, max_vertices, max_k)
    tab = tables(g, k)
    walker = Walker(tab, np.zeros(tab.size, dtype=np.int64), 1, tab.size - 1, False)
    while not walker.finished:
        walker.step(1 << 14)
    return walker.leaves


def split_point(n: int) -> int:
    """Lowest mask of the first region: all masks containing vertex n-1."""
    return 1 << (n - 1)


def prefixes(tab: Tables) -> np.ndarray:
    """Symmetry-pruned choices for the masks containing the last vertex."""
    split = split_point(tab.n)
    walker = Walker(tab, np.zeros(tab.size, dtype=np.int64), split, tab.size - 1, False)
    chunks = []
    while not walker.finished:
        chunks.append(walker.step(1 << 14))
    return np.concatenate(chunks) if chunks else np.zeros((0, tab.size), dtype=np.int64)


def subtree_walker(tab: Tables, prefix: np.ndarray, check: bool) -> Walker:
    return Walker(tab, prefix, 1, split_point(tab.n) - 1, check)
