"""Disjoint-set forest over dense integer elements, with per-set sizes."""
from __future__ import annotations

__all__ = ["DisjointSetForest", "NotLiveError"]

ABSENT = -1


class NotLiveError(KeyError):
    """Raised when an element that was never made into a set is used."""


class DisjointSetForest:
    """Union by size with full path compression.

    Elements are the integers ``0 .. capacity - 1``. An element only takes
    part in the forest after :meth:`make_set`; until then its parent slot
    holds an absent marker, which is how vertices excluded from a level-set
    graph are represented without a separate membership set.

    The size of a set is stored at its root, which serves both the
    union-by-size balancing and the component size query.
    """

    def __init__(self, capacity: int):
        if capacity < 0:
            raise ValueError("capacity must be non-negative")
        self.capacity = capacity
        self.parent = [ABSENT] * capacity
        self.size = [0] * capacity
        self.n_live = 0
        self.n_sets = 0

    def __len__(self):
        return self.n_live

    def __contains__(self, v):
        return 0 <= v < self.capacity and self.parent[v] != ABSENT

    def _check(self, v):
        if not 0 <= v < self.capacity:
            raise IndexError(f"element {v} outside capacity {self.capacity}")
        if self.parent[v] == ABSENT:
            raise NotLiveError(v)

    def make_set(self, v: int) -> None:
        if not 0 <= v < self.capacity:
            raise IndexError(f"element {v} outside capacity {self.capacity}")
        if self.parent[v] != ABSENT:
            raise ValueError(f"make_set called twice on element {v}")
        self.parent[v] = v
        self.size[v] = 1
        self.n_live += 1
        self.n_sets += 1

    def find(self, v: int) -> int:
        self._check(v)
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(self, a: int, b: int) -> int:
        """Merge the sets of ``a`` and ``b``; return the surviving root."""
        ra = self.find(a)
        rb = self.find(b)
        if ra == rb:
            return ra
        size = self.size
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        size[ra] += size[rb]
        self.n_sets -= 1
        return ra

    def set_size(self, v: int) -> int:
        return self.size[self.find(v)]

    def depth(self, v: int) -> int:
        """Number of parent links from ``v`` to its root, without compressing."""
        self._check(v)
        steps = 0
        while self.parent[v] != v:
            v = self.parent[v]
            steps += 1
        return steps

    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p == v]
