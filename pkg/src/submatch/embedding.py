"""Partial embeddings: prefix assignments of data vertices to query vertices.

After the matching order is fixed, query vertices are renumbered so the
search assigns them in id order; a partial embedding is then simply the
list of data vertices assigned to positions 0..k-1.
"""

from __future__ import annotations


class PartialEmbedding:
    """Mutable prefix mapping from query positions to data vertices.

    ``mapping[i]`` is the data vertex assigned to query position i;
    ``used`` maps each assigned data vertex back to its position so
    injection checks and collision lookups are O(1).
    """

    __slots__ = ("mapping", "used")

    def __init__(self) -> None:
        self.mapping: list[int] = []
        self.used: dict[int, int] = {}

    @property
    def depth(self) -> int:
        return len(self.mapping)

    def push(self, v: int) -> None:
        """Assign data vertex ``v`` to the next position; ``v`` must be unused."""
        self.used[v] = len(self.mapping)
        self.mapping.append(v)

    def pop(self) -> None:
        del self.used[self.mapping.pop()]

    def dom(self) -> range:
        """Mapped query positions."""
        return range(len(self.mapping))

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """The mapping as (position, data vertex) pairs."""
        return tuple(enumerate(self.mapping))
