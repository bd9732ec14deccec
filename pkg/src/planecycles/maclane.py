"""Edge/vertex load vectors and the MacLane functionals."""

from __future__ import annotations

from typing import Iterable, Sequence

from .cycles import Cycle, mask_edges


def edge_load(cycles: Iterable[Cycle], m: int) -> list[int]:
    p = [0] * m
    for c in cycles:
        for e in mask_edges(c.edges):
            p[e] += 1
    return p


def vertex_load(cycles: Iterable[Cycle], n: int) -> list[int]:
    p = [0] * n
    for c in cycles:
        for v in c.vertices:
            p[v] += 1
    return p


def f_quadratic(p: Sequence[int]) -> int:
    return sum(x * x - 3 * x + 2 for x in p)


def f_cubic(p: Sequence[int]) -> int:
    return sum(x * (x - 1) * (x - 2) for x in p)


def _term(x: int) -> int:
    return x * (x - 1) * (x - 2)


class LoadTracker:
    """Edge and vertex loads of a cycle subset, kept up to date under removals."""

    def __init__(self, cycles: Iterable[Cycle], n: int, m: int) -> None:
        self.cycles = {c.label: c for c in cycles}
        self.edges = edge_load(self.cycles.values(), m)
        self.vertices = vertex_load(self.cycles.values(), n)
        self.value = f_cubic(self.edges)

    def removal_value(self, label: int) -> int:
        """f_cubic of the subset without the given cycle."""
        try:
            c = self.cycles[label]
        except KeyError:
            raise KeyError(f"unknown cycle c{label}") from None
        p = self.edges
        delta = 0
        for e in mask_edges(c.edges):
            delta += _term(p[e] - 1) - _term(p[e])
        return self.value + delta

    def remove(self, label: int) -> Cycle:
        c = self.cycles.pop(label)
        for e in mask_edges(c.edges):
            self.value += _term(self.edges[e] - 1) - _term(self.edges[e])
            self.edges[e] -= 1
        for v in c.vertices:
            self.vertices[v] -= 1
        return c

    def add(self, c: Cycle) -> None:
        self.cycles[c.label] = c
        for e in mask_edges(c.edges):
            self.value += _term(self.edges[e] + 1) - _term(self.edges[e])
            self.edges[e] += 1
        for v in c.vertices:
            self.vertices[v] += 1


def removal_value(cycles: Sequence[Cycle], drop: int, m: int) -> int:
    """f_cubic after dropping the cycle labelled ``drop``."""
    if all(c.label != drop for c in cycles):
        raise KeyError(f"unknown cycle c{drop}")
    return f_cubic(edge_load((c for c in cycles if c.label != drop), m))


def bracket(p: Sequence[int]) -> str:
    return "<" + ", ".join(str(x) for x in p) + ">"
