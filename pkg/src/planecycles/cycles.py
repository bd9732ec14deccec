"""GF(2) algebra on edge sets stored as int bitmasks (bit i = edge i)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from operator import xor
from typing import Iterable, Sequence

from .graph import Graph, GraphError


def edge_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def mask_edges(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Cycle:
    """A cycle as an edge mask, its cyclic vertex order, and a 1-based label."""

    edges: int
    vertices: tuple[int, ...]
    label: int = 0

    @property
    def length(self) -> int:
        return popcount(self.edges)

    @property
    def edge_list(self) -> list[int]:
        return mask_edges(self.edges)

    def relabel(self, label: int) -> Cycle:
        return Cycle(self.edges, self.vertices, label)

    def to_json(self) -> dict:
        return {
            "id": self.label,
            "edges": [e + 1 for e in self.edge_list],
            "vertices": [v + 1 for v in self.vertices],
        }


def cycle_from_vertices(g: Graph, seq: Sequence[int], label: int = 0) -> Cycle:
    """Cycle through 0-based vertices in cyclic order."""
    seq = tuple(seq)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        raise GraphError(f"not a simple cycle: {[v + 1 for v in seq]}")
    mask = 0
    for a, b in zip(seq, seq[1:] + seq[:1]):
        mask |= 1 << g.edge_id(a, b)
    return Cycle(mask, seq, label)


def vertex_order(g: Graph, mask: int) -> tuple[int, ...] | None:
    """Cyclic vertex order of a simple cycle edge set, or None if it is not one.

    Starts at the smallest vertex and steps to its smaller neighbour first.
    """
    adj: dict[int, list[int]] = {}
    for e in mask_edges(mask):
        u, v = g.edges[e]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if not adj or any(len(nb) != 2 for nb in adj.values()):
        return None
    start = min(adj)
    order = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(order) != len(adj):
        return None
    return tuple(order)


def cycle_from_edges(g: Graph, edges: Iterable[int], label: int = 0) -> Cycle:
    mask = edge_mask(edges)
    order = vertex_order(g, mask)
    if order is None:
        raise GraphError(f"edges {[e + 1 for e in mask_edges(mask)]} are not a simple cycle")
    return Cycle(mask, order, label)


def cycle_vertices(g: Graph, mask: int) -> set[int]:
    out = set()
    for e in mask_edges(mask):
        out.update(g.edges[e])
    return out


def ring_sum(a: int, b: int, m: int | None = None) -> int:
    if m is not None and (a.bit_length() > m or b.bit_length() > m):
        raise ValueError(f"edge set outside universe of {m} edges")
    return a ^ b


def ring_sum_all(masks: Iterable[int]) -> int:
    return reduce(xor, masks, 0)


class Eliminator:
    """Incremental GF(2) row reduction pivoting on the lowest set edge."""

    def __init__(self) -> None:
        self.pivots: dict[int, int] = {}

    def reduce(self, mask: int) -> int:
        while mask:
            low = mask & -mask
            row = self.pivots.get(low)
            if row is None:
                return mask
            mask ^= row
        return 0

    def add(self, mask: int) -> bool:
        """Insert mask; True if it was independent of the rows so far."""
        r = self.reduce(mask)
        if not r:
            return False
        self.pivots[r & -r] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


@dataclass(frozen=True)
class Extraction:
    selected: list[int]
    rank: int
    target: int

    @property
    def deficient(self) -> bool:
        return self.rank < self.target


def extract_independent(masks: Sequence[int], target_rank: int) -> Extraction:
    """Greedy left-to-right selection of independent masks.

    Returns positions into ``masks``. Stops once ``target_rank`` rows are in.
    A shortfall is reported through ``Extraction.deficient``.
    """
    if target_rank > len(masks):
        raise ValueError("target rank exceeds number of cycles")
    elim = Eliminator()
    chosen = []
    for i, mask in enumerate(masks):
        if elim.rank == target_rank:
            break
        if elim.add(mask):
            chosen.append(i)
    return Extraction(chosen, elim.rank, target_rank)


def gf2_rank(masks: Iterable[int]) -> int:
    elim = Eliminator()
    for mask in masks:
        elim.add(mask)
    return elim.rank


def is_independent(masks: Sequence[int]) -> bool:
    return gf2_rank(masks) == len(masks)
