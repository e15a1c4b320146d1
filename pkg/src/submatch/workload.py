"""Query-set generation and benchmarking over a data graph.

Queries are connected induced subgraphs sampled by random walk; a query
set runs each query through one or both engines and aggregates per-query
statistics.  ``pathology_family`` builds instances where plain
backtracking repeats the same failure across branches, so the benefit of
dead-end pruning grows with the instance.
"""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .candidates import choose_order, label_filter
from .graphs import LabeledGraph, LabelTable, build_graph
from .search import SearchOutcome, guarded_search, naive_search

MODES = ("naive", "guarded")


class WalkBudgetError(RuntimeError):
    """Random walk could not collect enough distinct vertices."""


class EquivalenceError(RuntimeError):
    """The two engines disagreed; this always indicates an implementation bug."""


@dataclass(frozen=True)
class QuerySpec:
    """A set of ``count`` random-walk queries of ``size`` vertices.

    Query i uses seed ``seed + i``.
    """

    size: int
    seed: int
    count: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("query size must be >= 1")
        if self.count < 1:
            raise ValueError("query count must be >= 1")


@dataclass
class QueryResult:
    query_index: int
    seed: int
    mode: str
    embeddings: int
    recursions: int
    prunes: int
    records: int
    overwrites: int
    wall_nanos: int
    timed_out: bool

    def to_record(self) -> dict:
        return {
            "query_index": self.query_index,
            "seed": self.seed,
            "mode": self.mode,
            "embeddings": self.embeddings,
            "recursions": self.recursions,
            "prunes": self.prunes,
            "records": self.records,
            "overwrites": self.overwrites,
            "wall_nanos": self.wall_nanos,
            "timed_out": self.timed_out,
        }


@dataclass
class QuerySetReport:
    rows: list[QueryResult]
    aggregate: dict

    def records(self) -> list[dict]:
        """Per-query records followed by the set's aggregate record."""
        return [row.to_record() for row in self.rows] + [self.aggregate]


def random_walk_query(g: LabeledGraph, n: int, seed: int) -> LabeledGraph:
    """Sample a connected ``n``-vertex induced subgraph of ``g``.

    A walk starts at a uniformly chosen vertex and follows uniformly
    chosen incident edges until ``n`` distinct vertices have been seen;
    the query is the subgraph of ``g`` induced on them, labels included.
    Deterministic for a given (g, n, seed).  Raises WalkBudgetError when
    the walk gets stuck or exceeds 1000*n steps; a different seed may
    succeed.
    """
    if n < 1:
        raise ValueError("query size must be >= 1")
    if n > g.vertex_count:
        raise ValueError(
            f"query size {n} exceeds the data graph's {g.vertex_count} vertices"
        )
    rng = np.random.default_rng(seed)
    current = int(rng.integers(g.vertex_count))
    visited = {current}
    budget = 1000 * n
    steps = 0
    while len(visited) < n:
        nbrs = g.neighbors(current)
        if not nbrs or steps >= budget:
            raise WalkBudgetError(
                f"random walk from seed {seed} reached {len(visited)} of {n} "
                f"vertices within {budget} steps; try a different seed"
            )
        current = nbrs[int(rng.integers(len(nbrs)))]
        visited.add(current)
        steps += 1

    verts = sorted(visited)
    index = {v: i for i, v in enumerate(verts)}
    labels = [g.labels[v] for v in verts]
    edges = [
        (index[v], index[w])
        for v in verts
        for w in g.neighbors(v)
        if v < w and w in visited
    ]
    orig = [g.orig_ids[v] for v in verts]
    return LabeledGraph(labels, edges, g.table, orig_ids=orig)


def pathology_family(m: int, c: int) -> tuple[LabeledGraph, LabeledGraph]:
    """Instance family where identical failures recur across branches.

    The query is the 4-vertex path a-b-c-a.  The data graph has one hub
    a-vertex adjacent to m b-vertices; c decoy c-vertices adjacent to
    every b-vertex and back to the hub only; and one productive c-vertex
    hanging off the first b-vertex with a fresh a-neighbor.  Every decoy
    fails under every b-branch (its only a-neighbor is the used hub), so
    plain backtracking does ~m*c doomed calls while the guarded engine
    fails each decoy once, ~m+c calls.  Exactly one embedding exists.
    """
    if m < 1 or c < 1:
        raise ValueError("pathology_family requires m >= 1 and c >= 1")
    table = LabelTable()
    hub = 0
    bs = list(range(1, m + 1))
    decoys = list(range(m + 1, m + c + 1))
    productive = m + c + 1
    fresh = m + c + 2

    labels = ["a"] + ["b"] * m + ["c"] * c + ["c", "a"]
    edges: list[tuple[int, int]] = []
    edges += [(hub, b) for b in bs]
    edges += [(hub, d) for d in decoys]
    edges += [(b, d) for b in bs for d in decoys]
    edges.append((bs[0], productive))
    edges.append((productive, fresh))
    data = build_graph(labels, edges, table)

    query = build_graph(["a", "b", "c", "a"], [(0, 1), (1, 2), (2, 3)], table)
    return data, query


def _run_single_query(
    g: LabeledGraph,
    spec: QuerySpec,
    index: int,
    modes: tuple[str, ...],
    limit: int | None,
    per_query_timeout: float | None,
) -> list[QueryResult]:
    seed = spec.seed + index
    q = random_walk_query(g, spec.size, seed)
    cands = label_filter(q, g)
    order = choose_order(q, cands)

    outcomes: dict[str, SearchOutcome] = {}
    rows: list[QueryResult] = []
    for mode in modes:
        deadline = None
        if per_query_timeout is not None:
            deadline = time.monotonic_ns() + int(per_query_timeout * 1e9)
        run = naive_search if mode == "naive" else guarded_search
        out = run(q, g, cands, order, limit=limit, deadline_ns=deadline)
        outcomes[mode] = out
        rows.append(
            QueryResult(
                query_index=index,
                seed=seed,
                mode=mode,
                embeddings=out.stats.embeddings,
                recursions=out.stats.recursions,
                prunes=out.stats.prunes,
                records=out.stats.records,
                overwrites=out.stats.overwrites,
                wall_nanos=out.stats.wall_nanos,
                timed_out=out.timed_out,
            )
        )

    if len(modes) == 2:
        naive_out, guarded_out = outcomes["naive"], outcomes["guarded"]
        if not naive_out.timed_out and not guarded_out.timed_out:
            if naive_out.embeddings != guarded_out.embeddings:
                raise EquivalenceError(
                    f"query {index} (seed {seed}): engines reported different "
                    f"embedding sequences"
                )
            if guarded_out.stats.recursions > naive_out.stats.recursions:
                raise EquivalenceError(
                    f"query {index} (seed {seed}): guarded search recursed more "
                    f"than naive search"
                )
    return rows


def run_query_set(
    g: LabeledGraph,
    spec: QuerySpec,
    mode: str = "both",
    limit: int | None = 1000,
    per_query_timeout: float | None = 60.0,
    jobs: int = 1,
) -> QuerySetReport:
    """Generate and run a query set, returning per-query and aggregate stats.

    In ``both`` mode every query runs through both engines and their
    embedding sequences are compared; a mismatch raises EquivalenceError.
    Timeouts are recorded per query and mode, not fatal; a timed-out pair
    is excluded from the equivalence comparison.
    """
    if mode not in ("naive", "guarded", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    modes = MODES if mode == "both" else (mode,)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(
                pool.map(
                    lambda i: _run_single_query(g, spec, i, modes, limit, per_query_timeout),
                    range(spec.count),
                )
            )
    else:
        chunks = [
            _run_single_query(g, spec, i, modes, limit, per_query_timeout)
            for i in range(spec.count)
        ]

    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.query_index, MODES.index(r.mode)))

    aggregate: dict = {
        "aggregate": True,
        "query_size": spec.size,
        "seed": spec.seed,
        "queries": spec.count,
    }
    for m in modes:
        mode_rows = [r for r in rows if r.mode == m]
        walls = [r.wall_nanos for r in mode_rows]
        aggregate[m] = {
            "embeddings": sum(r.embeddings for r in mode_rows),
            "recursions": sum(r.recursions for r in mode_rows),
            "prunes": sum(r.prunes for r in mode_rows),
            "records": sum(r.records for r in mode_rows),
            "overwrites": sum(r.overwrites for r in mode_rows),
            "mean_wall_nanos": statistics.mean(walls) if walls else 0,
            "median_wall_nanos": statistics.median(walls) if walls else 0,
            "timeouts": sum(1 for r in mode_rows if r.timed_out),
        }
    return QuerySetReport(rows, aggregate)
