"""Vertex-labeled undirected graphs and their line-based text format.

A graph file is UTF-8 text with one record per line:

    v <id> <label>    vertex declaration; <label> is a whitespace-free token
    e <id1> <id2>     undirected edge between previously declared vertices

Lines starting with ``#`` and blank lines are ignored.  Vertex ids in files
are arbitrary non-negative integers; they are remapped to dense 0-based ids
in file order, and the original ids are retained for output.
"""

from __future__ import annotations

from typing import Iterable, TextIO


class GraphFormatError(ValueError):
    """Raised for malformed graph input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class LabelTable:
    """Interns label tokens to dense integer ids.

    A single table must be shared between a query graph and a data graph so
    that label equality reduces to integer equality.
    """

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}
        self._tokens: list[str] = []

    def intern(self, token: str) -> int:
        label_id = self._ids.get(token)
        if label_id is None:
            label_id = len(self._tokens)
            self._ids[token] = label_id
            self._tokens.append(token)
        return label_id

    def token(self, label_id: int) -> str:
        return self._tokens[label_id]

    def __len__(self) -> int:
        return len(self._tokens)


class LabeledGraph:
    """Immutable vertex-labeled undirected graph with dense 0-based ids.

    Invariants enforced at construction: adjacency is symmetric, there are
    no self-loops, no duplicate neighbors, and every edge endpoint is a
    declared vertex.  Instances are safe to share across threads.
    """

    __slots__ = ("vertex_count", "labels", "table", "orig_ids", "_adj", "_adj_sets")

    def __init__(
        self,
        labels: Iterable[int],
        edges: Iterable[tuple[int, int]],
        table: LabelTable,
        orig_ids: Iterable[int] | None = None,
    ) -> None:
        self.labels: tuple[int, ...] = tuple(labels)
        self.vertex_count: int = len(self.labels)
        self.table = table
        if orig_ids is None:
            self.orig_ids: tuple[int, ...] = tuple(range(self.vertex_count))
        else:
            self.orig_ids = tuple(orig_ids)
            if len(self.orig_ids) != self.vertex_count:
                raise ValueError("orig_ids length does not match vertex count")

        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for a, b in edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise ValueError(f"edge ({a}, {b}) references an undeclared vertex")
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            adj[a].add(b)
            adj[b].add(a)
        self._adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in adj
        )
        self._adj_sets: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbor ids of ``v``."""
        if not 0 <= v < self.vertex_count:
            raise IndexError(f"vertex id {v} out of range")
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        """Neighbor ids of ``v`` as a frozenset for O(1) membership tests."""
        if not 0 <= v < self.vertex_count:
            raise IndexError(f"vertex id {v} out of range")
        return self._adj_sets[v]

    def label(self, v: int) -> int:
        if not 0 <= v < self.vertex_count:
            raise IndexError(f"vertex id {v} out of range")
        return self.labels[v]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adj_sets[a]

    def edge_count(self) -> int:
        return sum(len(s) for s in self._adj) // 2

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edges(self) -> Iterable[tuple[int, int]]:
        """Each undirected edge once, as (a, b) with a < b, in sorted order."""
        for a in range(self.vertex_count):
            for b in self._adj[a]:
                if a < b:
                    yield a, b


def parse_graph(text: str | TextIO, table: LabelTable | None = None) -> LabeledGraph:
    """Parse the line-based graph format into a LabeledGraph.

    ``table`` lets the caller share one label dictionary across a
    query/data graph pair; a fresh table is created when omitted.
    Duplicate edge lines are deduplicated; edges may be listed in either
    direction.  Malformed input raises GraphFormatError with a line number.
    """
    if table is None:
        table = LabelTable()
    lines = text.splitlines() if isinstance(text, str) else text

    dense_of: dict[int, int] = {}
    orig_ids: list[int] = []
    labels: list[int] = []
    edges: list[tuple[int, int]] = []

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "v":
            if len(parts) != 3:
                raise GraphFormatError(line_no, f"expected 'v <id> <label>', got {line!r}")
            try:
                file_id = int(parts[1])
            except ValueError:
                raise GraphFormatError(line_no, f"vertex id {parts[1]!r} is not an integer") from None
            if file_id < 0:
                raise GraphFormatError(line_no, f"vertex id {file_id} is negative")
            if file_id in dense_of:
                raise GraphFormatError(line_no, f"vertex {file_id} declared twice")
            dense_of[file_id] = len(orig_ids)
            orig_ids.append(file_id)
            labels.append(table.intern(parts[2]))
        elif kind == "e":
            if len(parts) != 3:
                raise GraphFormatError(line_no, f"expected 'e <id1> <id2>', got {line!r}")
            try:
                a, b = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(line_no, f"edge endpoints in {line!r} are not integers") from None
            if a == b:
                raise GraphFormatError(line_no, f"self-loop edge on vertex {a}")
            for endpoint in (a, b):
                if endpoint not in dense_of:
                    raise GraphFormatError(
                        line_no, f"edge references vertex {endpoint} before its declaration"
                    )
            edges.append((dense_of[a], dense_of[b]))
        else:
            raise GraphFormatError(line_no, f"unknown record type {kind!r}")

    return LabeledGraph(labels, edges, table, orig_ids)


def serialize_graph(g: LabeledGraph) -> str:
    """Render a graph in the text format, using its original vertex ids.

    Round-trips: parsing the output yields an identical graph.
    """
    out: list[str] = []
    for v in range(g.vertex_count):
        out.append(f"v {g.orig_ids[v]} {g.table.token(g.labels[v])}")
    for a, b in g.edges():
        out.append(f"e {g.orig_ids[a]} {g.orig_ids[b]}")
    return "\n".join(out) + "\n" if out else ""


def build_graph(
    label_tokens: Iterable[str],
    edges: Iterable[tuple[int, int]],
    table: LabelTable | None = None,
) -> LabeledGraph:
    """Construct a graph from label tokens and dense-id edges."""
    if table is None:
        table = LabelTable()
    return LabeledGraph([table.intern(t) for t in label_tokens], edges, table)
