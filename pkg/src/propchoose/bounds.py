"""Closed-form bounds on the proportional choice number and the explicit
assignments that certify the lower bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidArgument, ResourceLimit
from .graph import complete_multipartite
from .lists import ListAssignment

# lower_source tags
STAR = "star-formula"
GENERAL = "general"  # sum of ceil(n_i/2)
EVEN_CASE = "even-case"  # 1 + sum n_i/2 when every part is even and small
OLD = "old"  # n+1 for K_{n,m}, 2 <= n <= m
TRIVIAL = "trivial"


def _half_up(n: int) -> int:
    return (n + 1) // 2


def _check_knm(n: int, m: int) -> None:
    if not 2 <= n <= m:
        raise InvalidArgument(f"bipartite bounds need 2 <= n <= m, got n={n}, m={m}")


def lower_bound_knm(n: int, m: int) -> int:
    _check_knm(n, m)
    return max(n + 1, _half_up(n) + _half_up(m))


def upper_bound_knm(n: int, m: int) -> int:
    _check_knm(n, m)
    return n + m - 1 - m // 3


def star_value(m: int) -> int:
    """Known proportional choice number of the star K_{1,m}."""
    if m < 1:
        raise InvalidArgument("star needs m >= 1")
    return 1 + _half_up(m)


def _check_parts(parts: Sequence[int]) -> list[int]:
    parts = list(parts)
    if any(int(p) != p or p < 1 for p in parts):
        raise InvalidArgument("part sizes must be positive integers")
    return parts


def even_case_applies(parts: Sequence[int]) -> bool:
    parts = _check_parts(parts)
    return len(parts) >= 2 and all(p % 2 == 0 for p in parts) and max(parts) <= sum(parts) // 2


def lower_bound_multipartite(parts: Sequence[int]) -> tuple[int, str]:
    """Best lower bound for K_{parts} and the result it comes from."""
    parts = _check_parts(parts)
    if len(parts) < 2:
        raise InvalidArgument("need at least two parts")
    s = sum(_half_up(p) for p in parts)
    bound, source = (s + 1, EVEN_CASE) if even_case_applies(parts) else (s, GENERAL)
    if len(parts) == 2 and min(parts) >= 2 and min(parts) + 1 > bound:
        bound, source = min(parts) + 1, OLD
    return bound, source


def odd_reduction(parts: Sequence[int]) -> list[int]:
    """Shrink each even part by one; the sum of ceil(n_i/2) is unchanged."""
    return [p if p % 2 else p - 1 for p in _check_parts(parts)]


def even_case_witness(parts: Sequence[int]) -> ListAssignment:
    """The s-assignment [s-1] + {s-1+i} on part i (parts in ascending order).

    No proportional coloring exists for it when every part is even and no
    part exceeds s = sum(n_i)/2.
    """
    parts = _check_parts(parts)
    if len(parts) < 2:
        raise InvalidArgument("need at least two parts")
    odd = [p for p in parts if p % 2]
    if odd:
        raise InvalidArgument(f"every part must be even; odd parts: {odd}")
    s = sum(parts) // 2
    if max(parts) > s:
        raise InvalidArgument(f"largest part {max(parts)} exceeds s={s}")
    base = set(range(1, s))
    lists = []
    for i, size in enumerate(sorted(parts), 1):
        lists.extend([base | {s - 1 + i}] * size)
    return ListAssignment.of(lists)


@dataclass
class BoundReport:
    parts: tuple[int, ...]
    lower: int
    upper: int | None
    lower_source: str
    forced: bool = False

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise AssertionError(f"inconsistent bounds {self.lower} > {self.upper}")


def bound_report(parts: Sequence[int]) -> BoundReport:
    parts = tuple(sorted(_check_parts(parts)))
    if len(parts) == 1:
        return BoundReport(parts, 1, None, TRIVIAL)
    if len(parts) == 2 and parts[0] == 1:
        value = star_value(parts[1])
        return BoundReport(parts, value, value, STAR, True)
    lower, source = lower_bound_multipartite(parts)
    upper = upper_bound_knm(*parts) if len(parts) == 2 else None
    return BoundReport(parts, lower, upper, source, upper == lower)


@dataclass
class LowerBoundCheck:
    parts: tuple[int, ...]
    certified: int
    source: str
    steps: list[tuple[str, bool, str]] = field(default_factory=list)
    witness: ListAssignment | None = None

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.steps)

    def lines(self) -> list[str]:
        return [f"[{'ok' if ok else 'FAIL'}] {name}: {detail}" for name, ok, detail in self.steps]


def lifted_constant_witness(parts: Sequence[int]) -> ListAssignment:
    """(s-1)-assignment on K_{parts} refuting proportional (s-1)-choosability.

    The odd-reduced subgraph gets the constant list {1..s-1}; the vertex
    dropped from each even part gets s-1 private colors, which cannot
    interact with anything else.
    """
    parts = sorted(_check_parts(parts))
    s = sum(_half_up(p) for p in parts)
    k = s - 1
    if k < 1:
        raise InvalidArgument("needs s >= 2")
    base = frozenset(range(1, s))
    fresh = s
    lists = []
    for size in parts:
        lists.extend([base] * (size if size % 2 else size - 1))
        if size % 2 == 0:
            lists.append(frozenset(range(fresh, fresh + k)))
            fresh += k
    return ListAssignment(tuple(lists))


def verify_lower_bound(parts: Sequence[int], max_vertices: int = 16) -> LowerBoundCheck:
    """Re-run the lower-bound arguments for K_{parts} step by step."""
    from .equitable import wu_equitable
    from .solver import find_proportional

    parts = tuple(sorted(_check_parts(parts)))
    if len(parts) < 2:
        raise InvalidArgument("need at least two parts")
    if sum(parts) > max_vertices:
        raise ResourceLimit(f"{sum(parts)} vertices exceeds the witness-check guard {max_vertices}")
    g = complete_multipartite(parts)
    s = sum(_half_up(p) for p in parts)
    reduced = odd_reduction(parts)
    check = LowerBoundCheck(parts, 0, GENERAL)

    same = sum(_half_up(p) for p in reduced) == s
    check.steps.append(("odd reduction", same, f"{list(parts)} -> {reduced}, s = {s}"))
    not_equitable = not wu_equitable(reduced, s - 1)
    check.steps.append(("Wu criterion", not_equitable,
                        f"K{','.join(map(str, reduced))} equitably {s - 1}-colorable: {not not_equitable}"))
    lifted = lifted_constant_witness(parts)
    refuted = find_proportional(g, lifted) is None
    check.steps.append(("constant witness refuted", refuted,
                        f"{s - 1}-assignment with constant lists on the reduced graph"))
    check.certified = s
    if even_case_applies(parts):
        witness = even_case_witness(parts)
        check.witness = witness
        refuted = find_proportional(g, witness) is None
        check.steps.append(("even-case witness refuted", refuted,
                            f"{s}-assignment [s-1] + {{s-1+i}} on part i"))
        check.certified, check.source = s + 1, EVEN_CASE
    else:
        check.witness = lifted
    return check
