"""Candidate sets for query vertices and the matching order over them.

A candidate set maps each query vertex to the data vertices it may legally
be assigned.  The initial sets come from the label filter; during search
they are repeatedly narrowed with the edge constraint against the vertices
mapped so far.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import PartialEmbedding
from .graphs import LabeledGraph

# One sorted tuple of admissible data vertices per query vertex id.
CandidateSets = list[tuple[int, ...]]


class DisconnectedQueryError(ValueError):
    """Raised when a matching order is requested for a disconnected query."""


@dataclass(frozen=True)
class MatchingOrder:
    """A permutation of query vertex ids with its inverse.

    ``order[i]`` is the query vertex assigned at depth i+1; ``inverse[u]``
    is the position of query vertex u.  Every non-initial vertex is
    adjacent to an earlier one, so each search prefix induces a connected
    subgraph of the query.
    """

    order: tuple[int, ...]
    inverse: tuple[int, ...]

    @staticmethod
    def from_order(order: tuple[int, ...]) -> "MatchingOrder":
        inverse = [0] * len(order)
        for pos, u in enumerate(order):
            inverse[u] = pos
        return MatchingOrder(order, tuple(inverse))


def label_filter(q: LabeledGraph, g: LabeledGraph) -> CandidateSets:
    """Initial candidates: data vertices carrying the query vertex's label.

    ``q`` and ``g`` must share a label table.
    """
    by_label: dict[int, list[int]] = {}
    for v in range(g.vertex_count):
        by_label.setdefault(g.labels[v], []).append(v)
    empty: tuple[int, ...] = ()
    return [tuple(by_label.get(q.labels[u], empty)) for u in range(q.vertex_count)]


def refine(
    cands: CandidateSets,
    emb: PartialEmbedding,
    q: LabeledGraph,
    g: LabeledGraph,
) -> CandidateSets:
    """Narrow candidates with the edge constraint against mapped vertices.

    For an unmapped query vertex u the result keeps the candidates adjacent
    to the image of every mapped neighbor of u; for a mapped u it is the
    singleton of its image.  The result never grows a set, and refining an
    already refined result with the same embedding is a no-op.
    """
    depth = emb.depth
    out: CandidateSets = []
    for u in range(q.vertex_count):
        if u < depth:
            out.append((emb.mapping[u],))
            continue
        mapped_nbrs = [w for w in q.neighbors(u) if w < depth]
        if not mapped_nbrs:
            out.append(cands[u])
            continue
        images = [g.neighbor_set(emb.mapping[w]) for w in mapped_nbrs]
        out.append(tuple(v for v in cands[u] if all(v in s for s in images)))
    return out


def choose_order(q: LabeledGraph, cands: CandidateSets) -> MatchingOrder:
    """Greedy connected-prefix order, smallest candidate set first.

    The first vertex minimizes |cands[u]|; each later vertex is picked from
    the frontier (vertices adjacent to the chosen prefix), again minimizing
    |cands[u]|.  Ties break toward the smallest query vertex id, so the
    order is deterministic.  A disconnected query has no connected-prefix
    order and is rejected.
    """
    n = q.vertex_count
    if n == 0:
        raise DisconnectedQueryError("query graph has no vertices")

    start = min(range(n), key=lambda u: (len(cands[u]), u))
    order = [start]
    chosen = {start}
    frontier = set(q.neighbors(start))
    while len(order) < n:
        frontier -= chosen
        if not frontier:
            raise DisconnectedQueryError(
                "query graph is disconnected; matching requires a connected query"
            )
        nxt = min(frontier, key=lambda u: (len(cands[u]), u))
        order.append(nxt)
        chosen.add(nxt)
        frontier |= set(q.neighbors(nxt))
    return MatchingOrder.from_order(tuple(order))
