"""Command-line interface: match, bench, gen, and trace subcommands.

Exit codes: 0 success, 1 usage or input error, 2 internal invariant
violation (the engines disagreed).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .candidates import DisconnectedQueryError, choose_order, label_filter
from .graphs import GraphFormatError, LabeledGraph, LabelTable, parse_graph, serialize_graph
from .search import SearchOutcome, guarded_search, naive_search
from .workload import EquivalenceError, QuerySpec, WalkBudgetError, random_walk_query, run_query_set

DEFAULT_LIMIT = 1000


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract here is 1.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class _TraceCap(Exception):
    pass


def _load_pair(data_path: str, query_path: str) -> tuple[LabeledGraph, LabeledGraph]:
    table = LabelTable()
    with open(data_path, encoding="utf-8") as fh:
        g = parse_graph(fh.read(), table)
    with open(query_path, encoding="utf-8") as fh:
        q = parse_graph(fh.read(), table)
    return g, q


def _resolve_limit(args: argparse.Namespace) -> int | None:
    if getattr(args, "no_limit", False):
        return None
    if args.limit < 0:
        raise ValueError("--limit must be >= 0")
    return args.limit


def _resolve_timeout(timeout: float | None) -> float | None:
    if timeout is not None and timeout <= 0:
        raise ValueError("--timeout must be positive")
    return timeout


def _deadline(timeout: float | None) -> int | None:
    if timeout is None:
        return None
    return time.monotonic_ns() + int(timeout * 1e9)


def _embedding_line(embedding, q: LabeledGraph, g: LabeledGraph) -> str:
    return " ".join(f"u{q.orig_ids[u]}->{g.orig_ids[v]}" for u, v in embedding)


def _stats_line(mode: str, out: SearchOutcome) -> str:
    s = out.stats
    return json.dumps(
        {
            "mode": mode,
            "embeddings": s.embeddings,
            "recursions": s.recursions,
            "prunes": s.prunes,
            "records": s.records,
            "overwrites": s.overwrites,
            "wall_nanos": s.wall_nanos,
            "timed_out": out.timed_out,
        }
    )


def cmd_match(args: argparse.Namespace) -> int:
    g, q = _load_pair(args.data, args.query)
    cands = label_filter(q, g)
    order = choose_order(q, cands)
    limit = _resolve_limit(args)
    timeout = _resolve_timeout(args.timeout)

    outcomes: dict[str, SearchOutcome] = {}
    modes = ("naive", "guarded") if args.mode == "both" else (args.mode,)
    for mode in modes:
        run = naive_search if mode == "naive" else guarded_search
        outcomes[mode] = run(q, g, cands, order, limit=limit, deadline_ns=_deadline(timeout))

    shown = outcomes[modes[-1]]
    for embedding in shown.embeddings:
        print(_embedding_line(embedding, q, g))
    if args.mode == "both":
        # A timed-out run is truncated at an arbitrary point, so the
        # sequences are only comparable when both runs finished.
        if any(out.timed_out for out in outcomes.values()):
            print("equivalence: skipped (timeout)")
        elif outcomes["naive"].embeddings != outcomes["guarded"].embeddings:
            print("equivalence: FAILED", file=sys.stderr)
            return 2
        else:
            print("equivalence: ok")
    for mode in modes:
        print(_stats_line(mode, outcomes[mode]))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    with open(args.data, encoding="utf-8") as fh:
        g = parse_graph(fh.read())
    sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    if not sizes:
        raise ValueError("--sizes must list at least one query size")

    records = []
    for size in sizes:
        spec = QuerySpec(size=size, seed=args.seed, count=args.count)
        report = run_query_set(
            g,
            spec,
            mode=args.mode,
            limit=_resolve_limit(args),
            per_query_timeout=_resolve_timeout(args.timeout),
            jobs=args.jobs,
        )
        records.extend(report.records())

    text = "\n".join(json.dumps(r) for r in records) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    with open(args.data, encoding="utf-8") as fh:
        g = parse_graph(fh.read())
    q = random_walk_query(g, args.size, args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(q))
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    g, q = _load_pair(args.data, args.query)
    cands = label_filter(q, g)
    order = choose_order(q, cands)

    remaining = args.cap

    def observer(event: tuple) -> None:
        nonlocal remaining
        kind = event[0]
        if kind == "enter":
            _, depth, v, call_id = event
            print(f"enter u{depth}->{g.orig_ids[v]} id={call_id}")
            remaining -= 1
            if remaining <= 0:
                raise _TraceCap
        elif kind == "report":
            mapping = event[1]
            pairs = " ".join(f"u{i + 1}->{g.orig_ids[v]}" for i, v in enumerate(mapping))
            print(f"report {pairs}")
        elif kind == "record":
            _, depth, v, rec, _pattern = event
            gamma = ",".join(f"u{u + 1}" for u in sorted(rec.gamma)) or "-"
            print(f"record slot=(u{depth},{g.orig_ids[v]}) phi={rec.phi} mu={rec.mu} gamma={gamma}")
        elif kind == "prune":
            _, depth, v = event
            print(f"prune slot=(u{depth},{g.orig_ids[v]})")

    try:
        guarded_search(q, g, cands, order, limit=None, observer=observer)
    except _TraceCap:
        print(f"warning: trace truncated after {args.cap} recursive calls", file=sys.stderr)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="submatch", description="Subgraph matching with dead-end pruning")
    sub = parser.add_subparsers(dest="command", required=True)

    p_match = sub.add_parser("match", help="enumerate embeddings of a query in a data graph")
    p_match.add_argument("data")
    p_match.add_argument("query")
    p_match.add_argument("--mode", choices=["naive", "guarded", "both"], default="guarded")
    p_match.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p_match.add_argument("--no-limit", action="store_true", help="enumerate exhaustively")
    p_match.add_argument("--timeout", type=float, default=None, metavar="SECS")
    p_match.set_defaults(func=cmd_match)

    p_bench = sub.add_parser("bench", help="run generated query sets and report statistics")
    p_bench.add_argument("data")
    p_bench.add_argument("--sizes", required=True, help="comma-separated query sizes")
    p_bench.add_argument("--count", type=int, required=True)
    p_bench.add_argument("--seed", type=int, required=True)
    p_bench.add_argument("--mode", choices=["naive", "guarded", "both"], default="both")
    p_bench.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p_bench.add_argument("--no-limit", action="store_true")
    p_bench.add_argument("--timeout", type=float, default=60.0, metavar="SECS")
    p_bench.add_argument("--jobs", type=int, default=1)
    p_bench.add_argument("--out", default=None)
    p_bench.set_defaults(func=cmd_bench)

    p_gen = sub.add_parser("gen", help="generate a random-walk query graph")
    p_gen.add_argument("data")
    p_gen.add_argument("--size", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_trace = sub.add_parser("trace", help="print guarded-search events for a small instance")
    p_trace.add_argument("data")
    p_trace.add_argument("query")
    p_trace.add_argument("--cap", type=int, default=1_000_000, help="recursive-call cap")
    p_trace.set_defaults(func=cmd_trace)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, DisconnectedQueryError, WalkBudgetError, ValueError, OSError) as exc:
        print(f"submatch: error: {exc}", file=sys.stderr)
        return 1
    except EquivalenceError as exc:
        print(f"submatch: internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
