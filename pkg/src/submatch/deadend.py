"""Fixed-size store of dead-end patterns with a constant-time match check.

A dead-end pattern is a set of (query vertex, data vertex) mappings that no
complete embedding contains.  Rather than keeping explicit mapping sets,
each pattern is keyed by its last mapping and reduced to a single integer:
the search assigns every recursive call a sequential id, so a pattern whose
other mappings form a prefix of the current search path can be recognized
by comparing one stored id against the id of that prefix.

Masks are sets of 0-based query positions in the (renumbered) matching
order.  Depths are 1-based: a record at slot (k, v) was extracted from a
partial embedding of k mappings whose last mapping assigned position k-1
to data vertex v.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple


class EmbeddingIdTrack:
    """Per-search call counter and the ids of the current path's prefixes.

    ``ids[d]`` holds the call id of the in-progress depth-d prefix;
    ``ids[0]`` is the fixed id 0 of the empty prefix.  Along the active
    path ids are strictly increasing, and re-descending after backtracking
    always produces fresh ids, which is what makes a stored id a reliable
    fingerprint of one specific prefix.
    """

    __slots__ = ("ids", "counter")

    def __init__(self, query_size: int) -> None:
        self.ids: list[int] = [0] * (query_size + 1)
        self.counter: int = 0

    def enter_call(self, depth: int) -> None:
        """Register the start of a recursive call at the given depth (>= 1)."""
        self.counter += 1
        self.ids[depth] = self.counter


class DeadEndRecord(NamedTuple):
    phi: int
    mu: int
    gamma: frozenset[int]


class DeadEndTable:
    """Direct-addressed table of one dead-end record per (depth, data vertex).

    Allocated per search with query_size * data_size slots; later records
    for the same key overwrite earlier ones.
    """

    __slots__ = ("_slots", "_data_size")

    def __init__(self, query_size: int, data_size: int) -> None:
        self._slots: list[list[DeadEndRecord | None]] = [
            [None] * data_size for _ in range(query_size)
        ]
        self._data_size = data_size

    def record(
        self,
        track: EmbeddingIdTrack,
        depth: int,
        v: int,
        gamma: frozenset[int] | set[int],
    ) -> tuple[DeadEndRecord, bool]:
        """Store the pattern selected by ``gamma`` out of the current embedding.

        The current embedding has ``depth`` mappings and its last mapping
        assigns position depth-1 to data vertex ``v``.  The slot key already
        names that last mapping, so position depth-1 is dropped from the
        stored mask; what remains is identified by the id of the deepest
        prefix it touches.  An empty remainder stores the sentinel
        (0, 0, empty), which matches under every prefix.

        Returns the stored record and whether it replaced an existing one.
        """
        last = depth - 1
        rest = frozenset(u for u in gamma if u != last)
        if rest:
            mu = max(rest) + 1
            rec = DeadEndRecord(track.ids[mu], mu, rest)
        else:
            rec = DeadEndRecord(0, 0, rest)
        row = self._slots[last]
        overwrote = row[v] is not None
        row[v] = rec
        return rec, overwrote

    def match(self, track: EmbeddingIdTrack, depth: int, v: int) -> frozenset[int] | None:
        """Check the extension of the current path by (position depth-1, v).

        Fires only when the slot's stored prefix id equals the live id of
        the same-length prefix of the current path, i.e. when every mapping
        of the stored pattern is present in the extended embedding.  On a
        hit, returns the full dead-end mask including the slot's own
        position; otherwise returns None.  The check reads one slot and
        compares one integer, so its cost is independent of the query size
        and of the stored mask.
        """
        rec = self._slots[depth - 1][v]
        if rec is None or track.ids[rec.mu] != rec.phi:
            return None
        return rec.gamma | {depth - 1}

    def dump(self) -> Iterator[str]:
        """Occupied slots as text lines, for trace tests and debugging."""
        for last, row in enumerate(self._slots):
            for v, rec in enumerate(row):
                if rec is None:
                    continue
                gamma = ",".join(str(u) for u in sorted(rec.gamma)) or "-"
                yield f"slot {last + 1} {v} phi={rec.phi} mu={rec.mu} gamma={gamma}"
