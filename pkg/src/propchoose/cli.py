"""propchoose command line.

Exit codes: 0 success, 1 verification failure or cache conflict, 2 usage
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from pathlib import Path

from . import __version__
from .bounds import bound_report, lifted_constant_witness, lower_bound_knm, verify_lower_bound
from .cache import CacheConflict, ResultCache, default_path
from .constructive import color_knm, sides
from .enumeration import DEFAULT_MAX_K, DEFAULT_MAX_VERTICES, check_guard
from .errors import InternalError, InvalidArgument, ResourceLimit
from .fileformats import format_coloring, write_assignment
from .graph import Graph, complete_multipartite, parse_graph
from .lists import sample_assignment
from .solver import CHOOSABLE, NOT_CHOOSABLE, UNDECIDED, chi_pc, decide_choosable

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _open_cache(args) -> ResultCache | None:
    path = args.cache or default_path()
    return ResultCache(path) if path else None


def _record(cache: ResultCache | None, verdict) -> None:
    if cache is not None:
        cache.add_verdict(verdict)


def _bounds_lines(g: Graph) -> list[str]:
    if g.parts is None or len(g.parts) < 2:
        return ["bounds: none known (not complete multipartite with two or more parts)"]
    rep = bound_report(g.parts)
    upper = "none" if rep.upper is None else str(rep.upper)
    return [f"lower bound: {rep.lower} ({rep.lower_source})", f"upper bound: {upper}"]


def cmd_chi_pc(args) -> int:
    g = parse_graph(args.graph)
    cache = _open_cache(args)
    start = time.perf_counter()
    result = chi_pc(g, args.kmax, jobs=args.jobs, max_vertices=args.max_vertices, max_k=args.max_k,
                    time_limit=args.time_limit, checkpoint=args.checkpoint,
                    on_verdict=lambda v: _record(cache, v))
    print(f"{g.name}: {result}")
    for line in _bounds_lines(g):
        print("  " + line)
    for v in result.verdicts:
        print(f"  k={v.k}: {v.outcome} ({v.classes_checked} classes, {v.elapsed:.2f}s)")
    print(f"  elapsed: {time.perf_counter() - start:.2f}s")
    if result.exact:
        return EXIT_OK
    last = result.verdicts[-1] if result.verdicts else None
    if last is not None and last.message:
        print(f"  {last.message}")
    elif last is None:
        try:
            check_guard(g, result.lower, args.max_vertices, args.max_k)
            print(f"  lower bound {result.start} exceeds --kmax {args.kmax}")
        except ResourceLimit as exc:
            print(f"  {exc}")
    return EXIT_RESOURCE


def cmd_decide(args) -> int:
    g = parse_graph(args.graph)
    cache = _open_cache(args)
    verdict = decide_choosable(g, args.k, jobs=args.jobs, max_vertices=args.max_vertices,
                               max_k=args.max_k, time_limit=args.time_limit, checkpoint=args.checkpoint)
    _record(cache, verdict)
    print(verdict)
    if verdict.witness_hash:
        print(f"  witness hash: {verdict.witness_hash}")
    if verdict.witness is not None and args.witness_out:
        write_assignment(args.witness_out, verdict.witness)
        print(f"  witness written to {args.witness_out}")
    if verdict.outcome == UNDECIDED:
        done, total = verdict.progress
        print(f"  progress: {done}/{total} chunks, {verdict.classes_checked} classes")
        return EXIT_RESOURCE
    return EXIT_OK


def _int_range(text: str) -> range:
    try:
        lo, _, hi = text.partition("-")
        return range(int(lo), int(hi or lo) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a or a-b, got {text!r}") from None


def _table_value(parts: list[int], cache: ResultCache | None, args) -> tuple[int | None, str]:
    """Exact chi_pc and how it is known, or (None, reason)."""
    rep = bound_report(parts)
    if rep.forced:
        return rep.lower, "forced"
    if cache is not None:
        k = rep.lower
        while True:
            rec = cache.lookup(complete_multipartite(parts).name, k)
            if rec is None:
                break
            if rec.outcome == CHOOSABLE:
                return k, "cached"
            k += 1
    if args.compute:
        g = complete_multipartite(parts)
        top = rep.upper if rep.upper is not None else args.kmax
        res = chi_pc(g, min(top, args.kmax), jobs=args.jobs, max_vertices=args.max_vertices,
                     max_k=args.max_k, time_limit=args.time_limit, on_verdict=lambda v: _record(cache, v))
        if res.exact:
            return res.value, "computed"
    return None, "open"


def cmd_table(args) -> int:
    cache = _open_cache(args)
    header = ["n", "m", "lower", "source", "upper", "value", "status", "value/m"]
    rows = []
    for n in args.n:
        for m in args.m:
            if n > m or n < 1:
                continue
            rep = bound_report([n, m])
            value, how = _table_value([n, m], cache, args)
            if n == 1:
                status = "star formula"
            elif value is None:
                status = "open"
            elif value == lower_bound_knm(n, m):
                status = "conjecture holds"
            else:
                status = "conjecture fails"
            shown = "open" if value is None else f"{value} ({how})"
            ratio = "-" if value is None else f"{value / m:.3f}"
            rows.append([str(n), str(m), str(rep.lower), rep.lower_source, str(rep.upper), shown, status, ratio])
    if args.format == "tsv":
        print("\t".join(header))
        for row in rows:
            print("\t".join(row))
    else:
        widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
        for row in [header] + rows:
            print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return EXIT_OK


def cmd_cross_check(args) -> int:
    from .acceptance import wu_disagreements

    if args.max_p > 10:
        raise ResourceLimit("brute force is limited to 10 vertices")
    count, bad = wu_disagreements(args.max_p)
    for parts, s in bad:
        print(f"disagreement: parts={parts} s={s}")
    print(f"{len(bad)} disagreements / {count} instances")
    return EXIT_FAILED if bad else EXIT_OK


def _histogram_key(trace: list[str]) -> str:
    steps = [t for t in trace if not t.startswith("repair:")]
    if any(t == "repair: exact fallback" for t in trace):
        steps.append("exact fallback")
    return " > ".join(steps)


def cmd_construct(args) -> int:
    g = complete_multipartite([args.n, args.m])
    sides(g, args.d)  # precondition check before sampling
    k = args.n + args.m - args.d - 1
    top = args.palette_max or 2 * k
    if top < k:
        raise InvalidArgument(f"--palette-max must be at least k={k}")
    hist: Counter[str] = Counter()
    passed = 0
    emit = open(args.emit, "w") if args.emit else None
    try:
        for i in range(args.samples):
            seed = args.seed + i
            l = sample_assignment(g, k, k + i % (top - k + 1), seed)
            trace: list[str] = []
            try:
                f = color_knm(g, l, args.d, trace)
            except InternalError as exc:
                dump = Path(args.dump)
                write_assignment(dump, l)
                print(f"sample {i} (seed {seed}): internal error at step {exc.step!r}: {exc}")
                print(f"failing assignment written to {dump}")
                return EXIT_FAILED
            passed += 1
            hist[_histogram_key(trace)] += 1
            if emit:
                emit.write(f"# sample {i} seed {seed}\n{format_coloring(f)}\n")
    finally:
        if emit:
            emit.close()
    print(f"K{args.n},{args.m} d={args.d} k={k}: {passed}/{args.samples} verified")
    for key, count in hist.most_common():
        print(f"  {count:6d}  {key}")
    return EXIT_OK


def _parse_parts(text: str) -> list[int]:
    try:
        parts = [int(p) for p in text.lstrip("K").split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected part sizes like 2,2,2, got {text!r}") from None
    if not parts or min(parts) < 1:
        raise argparse.ArgumentTypeError("part sizes must be positive")
    return parts


def cmd_witness(args) -> int:
    check = verify_lower_bound(args.parts, max_vertices=args.max_vertices or 16)
    out = Path(args.out or f"witness_K{'_'.join(map(str, sorted(args.parts)))}.txt")
    witness = check.witness if check.witness is not None else lifted_constant_witness(args.parts)
    write_assignment(out, witness)
    name = "K" + ",".join(map(str, check.parts))
    for line in check.lines():
        print(line)
    print(f"witness ({witness.k}-assignment) written to {out}")
    if not check.ok:
        print(f"{name}: lower bound NOT certified")
        return EXIT_FAILED
    print(f"{name}: lower bound {check.certified} certified ({check.source})")
    return EXIT_OK


def cmd_verify_bounds(args) -> int:
    from .acceptance import run_all

    def show(res):
        print(res.line(), flush=True)
        if args.verbose or not res.passed:
            for d in res.details:
                print(f"    {d}")

    results = run_all(jobs=args.jobs, report=show)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="propchoose", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def search_flags(sp, cache=True):
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        sp.add_argument("--max-vertices", type=int, default=None,
                        help=f"enumeration guard on vertices (default {DEFAULT_MAX_VERTICES})")
        sp.add_argument("--max-k", type=int, default=None, help=f"enumeration guard on k (default {DEFAULT_MAX_K})")
        sp.add_argument("--time-limit", type=float, default=None, help="seconds before giving up as undecided")
        sp.add_argument("--checkpoint", default=None, help="progress file for resuming long decisions")
        if cache:
            sp.add_argument("--cache", default=None, help="result cache file (default $PROPCHOOSE_CACHE)")

    sp = sub.add_parser("chi-pc", help="compute the proportional choice number")
    sp.add_argument("graph", help="K<n1>,<n2>,... or an edge-list file")
    sp.add_argument("--kmax", type=int, default=8)
    search_flags(sp)
    sp.set_defaults(func=cmd_chi_pc)

    sp = sub.add_parser("decide", help="decide proportional k-choosability")
    sp.add_argument("graph")
    sp.add_argument("k", type=int)
    sp.add_argument("--witness-out", default=None, help="write a failing assignment here")
    search_flags(sp)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("table", help="bounds and values for K_{n,m} over ranges")
    sp.add_argument("--n", type=_int_range, default=range(1, 4), help="range like 2-4")
    sp.add_argument("--m", type=_int_range, default=range(1, 6), help="range like 2-6")
    sp.add_argument("--format", choices=["text", "tsv"], default="text")
    sp.add_argument("--compute", action="store_true", help="run the decider on open cells")
    sp.add_argument("--kmax", type=int, default=8)
    search_flags(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("cross-check", help="Wu formula against brute force")
    sp.add_argument("--max-p", type=int, default=8)
    sp.set_defaults(func=cmd_cross_check)

    sp = sub.add_parser("construct", help="fuzz the constructive K_{n,m} colorer")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--palette-max", type=int, default=None, help="largest palette sampled (default 2k)")
    sp.add_argument("--dump", default="construct_failure.txt", help="where a failing assignment goes")
    sp.add_argument("--emit", default=None, help="write every coloring to this file")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("witness", help="certify the lower bound for K_{parts}")
    sp.add_argument("parts", type=_parse_parts, help="part sizes like 2,2,2")
    sp.add_argument("--out", default=None, help="witness assignment file")
    sp.add_argument("--max-vertices", type=int, default=None)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("verify-bounds", help="run every acceptance check")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify_bounds)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InternalError, CacheConflict) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
