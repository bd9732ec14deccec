"""Reduce a basis to a plane configuration by Euler-rule cycle removals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from .cycles import Cycle, mask_edges
from .embed import EmbeddingError, Rim, rim, rotation_system
from .graph import Graph
from .maclane import LoadTracker, edge_load, f_cubic


@dataclass
class RemovalStep:
    cycle: int
    edge: int
    before: int
    after: int

    def to_json(self) -> dict:
        return {"cycle": self.cycle, "edge": self.edge + 1, "F": self.after}


@dataclass
class PlaneConfiguration:
    basis: list[int]
    cycles: list[Cycle]
    steps: list[RemovalStep]
    removed_edges: list[int]
    value: int
    rim: Rim
    checks: dict = field(default_factory=dict)

    @property
    def n_removed(self) -> int:
        return len(self.removed_edges)

    @property
    def plane(self) -> bool:
        return self.value == 0

    @property
    def sound(self) -> bool:
        return self.plane and all(
            self.checks.get(k) for k in ("connected", "no_articulation", "rotation_closed")
        )

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "cycles": [c.label for c in self.cycles],
            "steps": [s.to_json() for s in self.steps],
            "removed_edges": [e + 1 for e in self.removed_edges],
            "N_u": self.n_removed,
            "F": self.value,
            "rim": self.rim.to_json(),
            "checks": self.checks,
        }


def _loads(cycles: Sequence[Cycle], g: Graph, count_rim: bool) -> list[int]:
    p = edge_load(cycles, g.m)
    if count_rim:
        for e in mask_edges(rim(cycles, g).edges):
            p[e] += 1
    return p


def euler_deletable(tracker: LoadTracker, label: int) -> int | None:
    """The single load-1 edge of the cycle, if removing it uncovers no vertex."""
    c = tracker.cycles[label]
    private = [e for e in mask_edges(c.edges) if tracker.edges[e] == 1]
    if len(private) != 1:
        return None
    if any(tracker.vertices[v] <= 1 for v in c.vertices):
        return None
    return private[0]


def _surviving(cycles, g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges[e] for c in cycles for e in mask_edges(c.edges))
    return h


def _splits(tracker: LoadTracker, label: int, g: Graph) -> bool:
    h = _surviving((c for c in tracker.cycles.values() if c.label != label), g)
    return not nx.is_biconnected(h)


def reduce_to_plane(
    basis: Sequence[Cycle], g: Graph, count_rim: bool = False
) -> PlaneConfiguration:
    """Drop Euler-deletable cycles, smallest resulting F first, until F = 0.

    Ties go to a removal that keeps the surviving edges free of articulation
    points, then to the cycle listed earliest in ``basis``. Stops early when no
    removal lowers F; the result then carries F > 0.
    """
    order = {c.label: i for i, c in enumerate(basis)}
    tracker = LoadTracker(basis, g.n, g.m)

    def value(cycles) -> int:
        return f_cubic(_loads(list(cycles), g, count_rim))

    current = value(tracker.cycles.values())
    steps = []
    while current > 0:
        options = []
        for label in tracker.cycles:
            edge = euler_deletable(tracker, label)
            if edge is None:
                continue
            rest = [c for c in tracker.cycles.values() if c.label != label]
            options.append((value(rest), order[label], label, edge))
        if not options:
            break
        best = min(o[0] for o in options)
        if best >= current:
            break
        tied = [o for o in options if o[0] == best]
        if len(tied) > 1:
            tied.sort(key=lambda o: (_splits(tracker, o[2], g), o[1]))
        after, _, label, edge = tied[0]
        tracker.remove(label)
        steps.append(RemovalStep(label, edge, current, after))
        current = after
    cycles = [c for c in basis if c.label in tracker.cycles]
    config = PlaneConfiguration(
        basis=[c.label for c in basis],
        cycles=cycles,
        steps=steps,
        removed_edges=[e for e in range(g.m) if tracker.edges[e] == 0],
        value=f_cubic(tracker.edges),
        rim=rim(cycles, g),
    )
    config.checks = audit_plane(cycles, g)
    return config


def audit_plane(cycles: Sequence[Cycle], g: Graph) -> dict:
    """Connectivity, articulation points and rotation closure of a configuration."""
    h = _surviving(cycles, g)
    connected = g.n > 0 and nx.is_connected(h)
    cut = sorted(nx.articulation_points(h)) if connected else []
    try:
        rotation_system(list(cycles), g)
        closed = True
    except EmbeddingError:
        closed = False
    return {
        "connected": connected,
        "no_articulation": connected and not cut,
        "articulation_points": [v + 1 for v in cut],
        "rotation_closed": closed,
        "edges": h.number_of_edges(),
    }
