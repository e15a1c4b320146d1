"""Test-side oracles and generators, kept independent of the engine code."""

from __future__ import annotations

import itertools

import numpy as np

from submatch import LabeledGraph, WalkBudgetError, build_graph, random_walk_query


def brute_force_embeddings(q: LabeledGraph, g: LabeledGraph) -> list[frozenset]:
    """Every complete embedding, by filtering all label-compatible tuples.

    Returns frozensets of (query vertex, data vertex) pairs.  No search,
    no pruning: candidates per query vertex are the label matches, and
    each tuple in their product is checked against all three constraints.
    """
    cand_lists = [
        [v for v in range(g.vertex_count) if g.labels[v] == q.labels[u]]
        for u in range(q.vertex_count)
    ]
    found = []
    for combo in itertools.product(*cand_lists):
        if len(set(combo)) != len(combo):
            continue
        if all(g.has_edge(combo[a], combo[b]) for a, b in q.edges()):
            found.append(frozenset(enumerate(combo)))
    return found


def random_labeled_graph(rng, n: int, p: float = 0.3, n_labels: int = 3) -> LabeledGraph:
    labels = ["abc"[int(rng.integers(n_labels))] for _ in range(n)]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(labels, edges)


def sample_walk_query(g: LabeledGraph, size: int, rng, attempts: int = 50):
    """Draw a random-walk query, retrying seeds that strand the walk."""
    for _ in range(attempts):
        seed = int(rng.integers(2**62))
        try:
            return random_walk_query(g, size, seed)
        except WalkBudgetError:
            continue
    return None


def instance_stream(master_seed: int, count: int, n_range=(6, 12), q_range=(2, 5), p=0.3):
    """Deterministic stream of (data graph, query graph) pairs."""
    rng = np.random.default_rng(master_seed)
    made = 0
    while made < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        g = random_labeled_graph(rng, n, p=p)
        size = min(int(rng.integers(q_range[0], q_range[1] + 1)), n)
        q = sample_walk_query(g, size, rng)
        if q is None:
            continue
        made += 1
        yield g, q


class ShadowChecker:
    """Replays guarded-search events against an explicit mirror store.

    Asserts, from the event stream alone:
      * every pruned extension really contains the slot's recorded pattern,
      * no pattern is recorded by a call whose subtree reported an embedding,
      * call ids strictly increase along the active path.
    """

    def __init__(self) -> None:
        self.path: dict[int, int] = {}
        self.ids: dict[int, int] = {0: 0}
        self.slots: dict[tuple[int, int], frozenset] = {}
        self.reports_at_entry: dict[int, int] = {}
        self.reports = 0
        self.hits = 0
        self.patterns: list[frozenset] = []

    def __call__(self, event: tuple) -> None:
        kind = event[0]
        if kind == "enter":
            _, depth, v, call_id = event
            assert call_id > self.ids[depth - 1]
            self.ids[depth] = call_id
            self.path[depth] = v
            self.reports_at_entry[depth] = self.reports
        elif kind == "report":
            self.reports += 1
        elif kind == "record":
            _, depth, v, _rec, pattern = event
            assert self.reports == self.reports_at_entry[depth]
            self.slots[(depth, v)] = pattern
            self.patterns.append(pattern)
        elif kind == "prune":
            _, depth, v = event
            stored = self.slots[(depth, v)]
            extended = {(d - 1, self.path[d]) for d in range(1, depth)}
            extended.add((depth - 1, v))
            assert stored <= extended
            self.hits += 1


def patterns_in_query_ids(patterns, order) -> list[frozenset]:
    """Convert position-space patterns to (query vertex, data vertex) pairs."""
    return [frozenset((order.order[p], v) for p, v in pat) for pat in patterns]
