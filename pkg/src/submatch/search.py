"""Backtracking enumeration of subgraph embeddings.

Two engines share one iteration contract (query vertices in matching
order, candidates in ascending data-vertex id) and therefore report the
same embedding sequence:

* ``naive_search`` is the plain backtracking baseline, kept as the oracle.
* ``guarded_search`` additionally extracts a dead-end mask whenever a
  subtree is proven empty, records the masked pattern in a DeadEndTable,
  and consults the table before every extension so that repeated failures
  are cut off in constant time.

A dead-end mask is a set of query positions selecting, out of a failed
partial embedding, a sub-pattern that no complete embedding can contain.
Three rules produce masks: an unmapped vertex left without candidates
implicates its mapped neighbors; a collision on a data vertex implicates
the two colliding positions; a table hit implicates the stored pattern's
positions.  Masks of the extended embedding are accumulated over all
extensions and folded back into a mask of the current embedding.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .candidates import CandidateSets, MatchingOrder, refine
from .deadend import DeadEndTable, EmbeddingIdTrack
from .embedding import PartialEmbedding
from .graphs import LabeledGraph

# A reported embedding: (query vertex, data vertex) pairs in matching-order
# sequence, with both sides as dense internal ids of the original graphs.
Embedding = tuple[tuple[int, int], ...]

# Observer events, all in renumbered position space:
#   ("enter", depth, data_vertex, call_id)
#   ("report", mapping_tuple)
#   ("prune", depth, data_vertex)
#   ("record", depth, data_vertex, DeadEndRecord, explicit_pattern)
Observer = Callable[[tuple], None]

_DEADLINE_STRIDE = 1024


class _Timeout(Exception):
    pass


@dataclass
class SearchStats:
    recursions: int = 0
    prunes: int = 0
    records: int = 0
    overwrites: int = 0
    embeddings: int = 0
    wall_nanos: int = 0


@dataclass
class SearchOutcome:
    embeddings: list[Embedding] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    timed_out: bool = False


def mask_empty_candidate(u: int, emb: PartialEmbedding, q: LabeledGraph) -> set[int]:
    """Mask when refinement leaves unmapped ``u`` without candidates.

    The mapped neighbors of ``u`` jointly exclude every candidate, so the
    mappings at those positions can never appear in a complete embedding.
    """
    depth = emb.depth
    return {w for w in q.neighbors(u) if w < depth}


def mask_noninjective(emb: PartialEmbedding, v: int) -> set[int]:
    """Mask for extending ``emb`` with a data vertex ``v`` that is already used.

    Implicates the position holding ``v`` and the extension position; any
    embedding containing both mappings repeats ``v``.
    """
    return {emb.used[v], emb.depth}


def aggregate_masks(
    gamma_star: set[int], depth: int, q: LabeledGraph, emb: PartialEmbedding
) -> set[int]:
    """Fold per-extension masks into a mask of the current embedding.

    ``gamma_star`` is the union of masks obtained for every extension of
    ``emb`` at position ``depth``, all of which failed.  If the extension
    position itself occurs in the union, it is replaced by the mapped
    neighbors that determined the extension candidates; otherwise the
    union already only names mapped positions and passes through.
    """
    if depth in gamma_star:
        return (gamma_star | set(q.neighbors(depth))) & set(emb.dom())
    return gamma_star


def verify_embedding(embedding: Embedding, q: LabeledGraph, g: LabeledGraph) -> bool:
    """Check the three embedding constraints on a complete mapping.

    True iff ``embedding`` covers every query vertex exactly once, is
    injective, preserves labels, and maps query edges onto data edges.
    """
    mapped = dict(embedding)
    if len(embedding) != q.vertex_count or len(mapped) != q.vertex_count:
        return False
    if set(mapped) != set(range(q.vertex_count)):
        return False
    if len(set(mapped.values())) != len(mapped):
        return False
    for u, v in mapped.items():
        if not 0 <= v < g.vertex_count or q.labels[u] != g.labels[v]:
            return False
    for a, b in q.edges():
        if not g.has_edge(mapped[a], mapped[b]):
            return False
    return True


def _reorder(
    q: LabeledGraph, cands: CandidateSets, order: MatchingOrder
) -> tuple[LabeledGraph, CandidateSets]:
    """Renumber the query so vertex ids coincide with matching positions."""
    inv = order.inverse
    labels = [q.labels[u] for u in order.order]
    edges = [(inv[a], inv[b]) for a, b in q.edges()]
    orig = [q.orig_ids[u] for u in order.order]
    qr = LabeledGraph(labels, edges, q.table, orig_ids=orig)
    return qr, [cands[u] for u in order.order]


class _NaiveEngine:
    """Plain backtracking: refine, extend with each unused candidate, recurse."""

    def __init__(
        self,
        qr: LabeledGraph,
        g: LabeledGraph,
        cands: CandidateSets,
        order: MatchingOrder,
        limit: float,
        deadline_ns: Optional[int],
    ) -> None:
        self.qr = qr
        self.g = g
        self.cands = cands
        self.order = order
        self.limit = limit
        self.deadline_ns = deadline_ns
        self.n = qr.vertex_count
        self.recursions = 0
        self.embeddings: list[Embedding] = []

    def run(self) -> tuple[list[Embedding], int, bool]:
        try:
            self._search(PartialEmbedding(), self.cands)
        except _Timeout:
            return self.embeddings, self.recursions, True
        return self.embeddings, self.recursions, False

    def _search(self, emb: PartialEmbedding, cands: CandidateSets) -> None:
        k = emb.depth
        if k:
            self.recursions += 1
            if self.deadline_ns is not None and self.recursions % _DEADLINE_STRIDE == 0:
                if time.monotonic_ns() > self.deadline_ns:
                    raise _Timeout
        if k == self.n:
            self.embeddings.append(
                tuple((self.order.order[i], v) for i, v in enumerate(emb.mapping))
            )
            return
        refined = refine(cands, emb, self.qr, self.g)
        for v in refined[k]:
            if len(self.embeddings) >= self.limit:
                break
            if v in emb.used:
                continue
            emb.push(v)
            self._search(emb, refined)
            emb.pop()


class _GuardedEngine:
    """Backtracking with dead-end pattern extraction and pruning.

    Each recursive call returns a dead-end mask of its embedding when the
    whole subtree was proven to contain no embedding, and None otherwise.
    Nothing is recorded for subtrees that reported an embedding or that
    were abandoned because the report limit was reached, since neither is
    proof of a dead end.
    """

    def __init__(
        self,
        qr: LabeledGraph,
        g: LabeledGraph,
        cands: CandidateSets,
        order: MatchingOrder,
        limit: float,
        deadline_ns: Optional[int],
        observer: Optional[Observer],
    ) -> None:
        self.qr = qr
        self.g = g
        self.cands = cands
        self.order = order
        self.limit = limit
        self.deadline_ns = deadline_ns
        self.observer = observer
        self.n = qr.vertex_count
        self.table = DeadEndTable(self.n, g.vertex_count)
        self.track = EmbeddingIdTrack(self.n)
        self.prunes = 0
        self.records = 0
        self.overwrites = 0
        self.embeddings: list[Embedding] = []

    def run(self) -> tuple[list[Embedding], SearchStats, bool]:
        timed_out = False
        try:
            self._search(PartialEmbedding(), self.cands)
        except _Timeout:
            timed_out = True
        stats = SearchStats(
            recursions=self.track.counter,
            prunes=self.prunes,
            records=self.records,
            overwrites=self.overwrites,
            embeddings=len(self.embeddings),
        )
        return self.embeddings, stats, timed_out

    def _search(
        self, emb: PartialEmbedding, cands: CandidateSets
    ) -> frozenset[int] | None:
        k = emb.depth
        if k:
            self.track.enter_call(k)
            if self.deadline_ns is not None and self.track.counter % _DEADLINE_STRIDE == 0:
                if time.monotonic_ns() > self.deadline_ns:
                    raise _Timeout
            if self.observer is not None:
                self.observer(("enter", k, emb.mapping[-1], self.track.ids[k]))
        if k == self.n:
            self.embeddings.append(
                tuple((self.order.order[i], v) for i, v in enumerate(emb.mapping))
            )
            if self.observer is not None:
                self.observer(("report", tuple(emb.mapping)))
            return None

        refined = refine(cands, emb, self.qr, self.g)
        empty_u = next((u for u in range(k, self.n) if not refined[u]), None)
        if empty_u is not None:
            gamma = frozenset(mask_empty_candidate(empty_u, emb, self.qr))
        else:
            reported_before = len(self.embeddings)
            truncated = False
            gamma_star: set[int] = set()
            for v in refined[k]:
                if len(self.embeddings) >= self.limit:
                    truncated = True
                    break
                if v in emb.used:
                    gamma_star |= mask_noninjective(emb, v)
                    continue
                hit = self.table.match(self.track, k + 1, v)
                if hit is not None:
                    self.prunes += 1
                    if self.observer is not None:
                        self.observer(("prune", k + 1, v))
                    gamma_star |= hit
                    continue
                emb.push(v)
                child_mask = self._search(emb, refined)
                emb.pop()
                if child_mask is not None:
                    gamma_star |= child_mask
            if truncated or len(self.embeddings) > reported_before:
                return None
            gamma = frozenset(aggregate_masks(gamma_star, k, self.qr, emb))

        if k == 0:
            # Nothing to key a record on; an empty-prefix dead end simply
            # means the instance has no embeddings at all.
            return gamma
        v_last = emb.mapping[-1]
        rec, overwrote = self.table.record(self.track, k, v_last, gamma)
        self.records += 1
        if overwrote:
            self.overwrites += 1
        if self.observer is not None:
            pattern = frozenset((u, emb.mapping[u]) for u in gamma)
            self.observer(("record", k, v_last, rec, pattern))
        return gamma


def naive_search(
    q: LabeledGraph,
    g: LabeledGraph,
    cands: CandidateSets,
    order: MatchingOrder,
    limit: int | None = 1000,
    deadline_ns: int | None = None,
) -> SearchOutcome:
    """Enumerate embeddings by plain backtracking, stopping after ``limit``.

    ``limit=None`` enumerates exhaustively.  Candidates are tried in
    ascending data-vertex id, so the report sequence is deterministic.
    """
    qr, cr = _reorder(q, cands, order)
    cap = math.inf if limit is None else limit
    start = time.perf_counter_ns()
    engine = _NaiveEngine(qr, g, cr, order, cap, deadline_ns)
    embeddings, recursions, timed_out = engine.run()
    stats = SearchStats(recursions=recursions, embeddings=len(embeddings))
    stats.wall_nanos = time.perf_counter_ns() - start
    return SearchOutcome(embeddings, stats, timed_out)


def guarded_search(
    q: LabeledGraph,
    g: LabeledGraph,
    cands: CandidateSets,
    order: MatchingOrder,
    limit: int | None = 1000,
    deadline_ns: int | None = None,
    observer: Observer | None = None,
) -> SearchOutcome:
    """Enumerate embeddings with dead-end pruning.

    Reports exactly the sequence ``naive_search`` reports, in the same
    order, while skipping subtrees that match a recorded dead-end pattern.
    ``observer`` receives enter/report/prune/record events for tracing.
    """
    qr, cr = _reorder(q, cands, order)
    cap = math.inf if limit is None else limit
    start = time.perf_counter_ns()
    engine = _GuardedEngine(qr, g, cr, order, cap, deadline_ns, observer)
    embeddings, stats, timed_out = engine.run()
    stats.wall_nanos = time.perf_counter_ns() - start
    return SearchOutcome(embeddings, stats, timed_out)
