"""The acceptance checks, shared by ``propchoose verify-bounds`` and the tests.

Each check returns a :class:`Result`; none raises on a failed criterion.
"""

from __future__ import annotations

import inspect
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .bounds import even_case_witness, star_value
from .cache import ResultCache
from .constructive import color_knm
from .enumeration import count_classes, enumerate_assignments
from .equitable import equitable_k_colorable_bruteforce, equitable_list_colorable, wu_equitable
from .errors import InternalError
from .graph import complete_multipartite
from .lists import sample_assignment
from .oracles import brute_force_class_count
from .solver import (CHOOSABLE, NOT_CHOOSABLE, chi_pc, decide_choosable, find_proportional,
                     naive_find_proportional, verify_proportional)


@dataclass
class Result:
    number: int
    title: str
    passed: bool = True
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def fail(self, message: str) -> None:
        self.passed = False
        self.details.append("FAIL " + message)

    def note(self, message: str) -> None:
        self.details.append(message)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.title} ({self.elapsed:.1f}s)"


def _timed(number: int, title: str):
    def wrap(fn: Callable[..., None]) -> Callable[..., Result]:
        def run(*args, **kwargs) -> Result:
            res = Result(number, title)
            start = time.perf_counter()
            fn(res, *args, **kwargs)
            res.elapsed = time.perf_counter() - start
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.__wrapped__ = fn
        return run
    return wrap


def _exact_value(res: Result, parts, expected: int, jobs: int, limit: float) -> None:
    """chi_pc must equal ``expected``, and expected-1 must be refuted."""
    g = complete_multipartite(parts)
    r = chi_pc(g, expected + 1, jobs=jobs)
    verdicts = list(r.verdicts)
    if expected > 1:
        verdicts.append(decide_choosable(g, expected - 1, jobs=jobs))
    for v in verdicts:
        res.note(str(v).splitlines()[0])
        if v.elapsed > limit:
            res.fail(f"{g.name} k={v.k} took {v.elapsed:.1f}s > {limit:.0f}s")
    if r.value != expected:
        res.fail(f"{g.name}: got {r}, expected {expected}")
    if expected > 1 and verdicts[-1].outcome != NOT_CHOOSABLE:
        res.fail(f"{g.name} k={expected - 1} should not be choosable")


@_timed(1, "star formula chi_pc(K1,m) = 1 + ceil(m/2), m = 1..5")
def star_formula(res: Result, jobs: int = 1) -> None:
    for m in range(1, 6):
        _exact_value(res, [1, m], star_value(m), jobs, 60)


@_timed(2, "forced values: K2,2 and K2,3 give 3, K3,3 gives 4")
def forced_bipartite(res: Result, jobs: int = 1) -> None:
    for parts, value in (([2, 2], 3), ([2, 3], 3), ([3, 3], 4)):
        _exact_value(res, parts, value, jobs, 1800)


@_timed(3, "even-case witnesses admit no proportional coloring")
def even_case_witnesses(res: Result) -> None:
    for parts in ([2, 2], [2, 2, 2], [4, 4]):
        start = time.perf_counter()
        f = find_proportional(complete_multipartite(parts), even_case_witness(parts))
        took = time.perf_counter() - start
        res.note(f"{parts}: {'colorable' if f else 'refuted'} in {took:.3f}s")
        if f is not None:
            res.fail(f"{parts}: witness colored by {f}")
        if took > 10:
            res.fail(f"{parts}: refutation took {took:.1f}s")


def partitions(p: int, largest: int | None = None):
    """Part lists (non-increasing) summing to p."""
    largest = p if largest is None else largest
    if p == 0:
        yield []
        return
    for first in range(min(p, largest), 0, -1):
        for rest in partitions(p - first, first):
            yield [first] + rest


def wu_disagreements(max_p: int) -> tuple[int, list[tuple[list[int], int]]]:
    count, bad = 0, []
    for p in range(1, max_p + 1):
        for parts in partitions(p):
            g = complete_multipartite(parts)
            for s in range(1, p + 2):
                count += 1
                if wu_equitable(parts, s) != (equitable_k_colorable_bruteforce(g, s) is not None):
                    bad.append((parts, s))
    return count, bad


@_timed(4, "equitable facts and Wu formula vs brute force, p <= 8")
def equitable_facts(res: Result, max_p: int = 8) -> None:
    k33 = complete_multipartite([3, 3])
    facts = {
        "wu K3,3 s=2": wu_equitable([3, 3], 2),
        "brute K3,3 s=2": equitable_k_colorable_bruteforce(k33, 2) is not None,
        "wu K3,3 s=3 (negated)": not wu_equitable([3, 3], 3),
        "brute K3,3 s=3 (negated)": equitable_k_colorable_bruteforce(k33, 3) is None,
    }
    for name, ok in facts.items():
        if not ok:
            res.fail(name)
    count, bad = wu_disagreements(max_p)
    res.note(f"{len(bad)} disagreements / {count} instances")
    for parts, s in bad:
        res.fail(f"disagreement at {parts}, s={s}")


CONSTRUCT_CASES = ((2, 3, 1), (3, 3, 1), (2, 6, 2), (3, 6, 1))


def construct_samples(n: int, m: int, d: int, samples: int, seed: int = 0):
    """Sampled assignments with palettes from k to 2k colors."""
    g = complete_multipartite([n, m])
    k = n + m - d - 1
    for i in range(samples):
        yield g, sample_assignment(g, k, k + i % (k + 1), seed + i)


@_timed(5, "constructive colorer: exhaustive K2,3 and 1000 samples per case")
def constructive_soundness(res: Result, samples: int = 1000) -> None:
    g = complete_multipartite([2, 3])
    jobs = [("exhaustive K2,3 k=3", ((g, l) for l in enumerate_assignments(g, 3)), 1)]
    jobs += [(f"K{n},{m} d={d}", construct_samples(n, m, d, samples), d) for n, m, d in CONSTRUCT_CASES]
    for name, stream, d in jobs:
        ok = total = 0
        for graph, l in stream:
            total += 1
            try:
                f = color_knm(graph, l, d)
            except InternalError as exc:
                res.fail(f"{name}: internal error at {exc.step}: {l.lists}")
                continue
            if verify_proportional(graph, l, f):
                res.fail(f"{name}: bad coloring for {l.lists}")
            else:
                ok += 1
        res.note(f"{name}: {ok}/{total} verified")


MONOTONE_GRAPHS = ([1, 2], [1, 3], [2, 2], [2, 3])


@_timed(6, "monotone in k and closed under subgraphs")
def monotonicity(res: Result, jobs: int = 1) -> None:
    table = {}
    for parts in MONOTONE_GRAPHS:
        g = complete_multipartite(parts)
        row = [decide_choosable(g, k, jobs=jobs).outcome == CHOOSABLE for k in range(1, 6)]
        table[tuple(parts)] = row
        res.note(f"{g.name}: choosable at k = {[k for k in range(1, 6) if row[k - 1]]}")
        for k in range(1, 5):
            if row[k - 1] and not row[k]:
                res.fail(f"{g.name}: choosable at {k} but not at {k + 1}")
    if table[(2, 3)][2] and not (table[(2, 2)][2] and table[(1, 3)][2]):
        res.fail("K2,3 choosable at 3 but a subgraph is not")


@_timed(7, "proportional implies equitable")
def motivation(res: Result) -> None:
    decided = [([1, m], star_value(m)) for m in range(1, 6)] + [([2, 2], 3), ([2, 3], 3), ([3, 3], 4)]
    for parts, k in decided:
        g = complete_multipartite(parts)
        if equitable_k_colorable_bruteforce(g, k) is None:
            res.fail(f"{g.name} not equitably {k}-colorable")
    g = complete_multipartite([2, 2])
    for k in (3, 4):
        checked = 0
        for l in enumerate_assignments(g, k):
            checked += 1
            if find_proportional(g, l) is not None and equitable_list_colorable(g, l) is None:
                res.fail(f"K2,2 k={k}: proportional but not equitable: {l.lists}")
        res.note(f"K2,2 k={k}: {checked} classes checked")


@_timed(8, "oracle equivalence on K2 and K1,2, k <= 2")
def oracle_equivalence(res: Result) -> None:
    for parts in ([1, 1], [1, 2]):
        g = complete_multipartite(parts)
        for k in (1, 2):
            for l in enumerate_assignments(g, k):
                fast = find_proportional(g, l) is not None
                slow = naive_find_proportional(g, l) is not None
                if fast != slow:
                    res.fail(f"{g.name} k={k}: solver {fast}, naive {slow} on {l.lists}")
            got, want = count_classes(g, k), brute_force_class_count(g, k)
            res.note(f"{g.name} k={k}: {got} classes (oracle {want})")
            if got != want:
                res.fail(f"{g.name} k={k}: {got} classes, oracle says {want}")
    for k, want in ((1, 2), (2, 3)):
        got = count_classes(complete_multipartite([1, 1]), k)
        if got != want:
            res.fail(f"K1,1 k={k}: {got} classes, expected {want}")


@_timed(9, "exploration: decide K2,4 at k=3, cached and reproducible")
def explore_k24(res: Result, jobs: int = 1, cache_path: str | Path | None = None,
                time_limit: float = 24 * 3600) -> None:
    with tempfile.TemporaryDirectory() as tmp:
        cache = ResultCache(cache_path or Path(tmp) / "cache.txt")
        g = complete_multipartite([2, 4])
        first = decide_choosable(g, 3, jobs=jobs, time_limit=time_limit,
                                 checkpoint=Path(tmp) / "checkpoint.txt")
        res.note(str(first).splitlines()[0])
        again = decide_choosable(g, 3, jobs=max(1, jobs), time_limit=time_limit)
        if (first.outcome, first.witness_hash) != (again.outcome, again.witness_hash):
            res.fail("second run disagrees with the first")
        try:
            cache.add_verdict(first)
            cache.add_verdict(again)
        except RuntimeError as exc:
            res.fail(str(exc))
        if first.witness is not None and find_proportional(g, first.witness) is not None:
            res.fail("witness is colorable")


ALL = (star_formula, forced_bipartite, even_case_witnesses, equitable_facts, constructive_soundness,
       monotonicity, motivation, oracle_equivalence, explore_k24)


def run_all(jobs: int = 1, report: Callable[[Result], None] | None = None) -> list[Result]:
    results = []
    for check in ALL:
        kwargs = {"jobs": jobs} if "jobs" in inspect.signature(check.__wrapped__).parameters else {}
        res = check(**kwargs)
        results.append(res)
        if report:
            report(res)
    return results

