"""Simple undirected graphs with stable edge numbering.

Vertices and edges are 0-based internally. Every text or JSON format
that leaves the package is 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import networkx as nx


class GraphError(ValueError):
    """Malformed or structurally invalid graph input."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u + 1}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u + 1},{v + 1}) outside 1..{self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge ({key[0] + 1},{key[1] + 1})")
            seen.add(key)
        object.__setattr__(
            self, "edges", tuple((min(u, v), max(u, v)) for u, v in self.edges)
        )

    @classmethod
    def from_pairs(cls, pairs, n: int | None = None) -> Graph:
        """Build from 1-based vertex pairs; edge i is the i-th pair."""
        pairs = [(int(u), int(v)) for u, v in pairs]
        for u, v in pairs:
            if u < 1 or v < 1:
                raise GraphError(f"non-positive vertex id in ({u},{v})")
        top = max((max(p) for p in pairs), default=0)
        if n is None:
            n = top
        elif n < top:
            raise GraphError(f"vertex {top} exceeds declared count {n}")
        return cls(n, tuple((u - 1, v - 1) for u, v in pairs))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        index = {}
        for i, (u, v) in enumerate(self.edges):
            index[(u, v)] = i
            index[(v, u)] = i
        return index

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self.edge_index[(u, v)]
        except KeyError:
            raise GraphError(f"no edge between {u + 1} and {v + 1}") from None

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        for i, (u, v) in enumerate(self.edges):
            h.add_edge(u, v, id=i)
        return h

    def to_json(self) -> dict:
        return {"vertices": self.n, "edges": [[u + 1, v + 1] for u, v in self.edges]}


def parse_graph(text: str) -> Graph:
    """Parse the edge-list text format or its JSON equivalent."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
            return Graph.from_pairs(doc["edges"], doc.get("vertices"))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"bad JSON graph: {exc}") from None
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphError(f"line {lineno}: malformed header {line!r}")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
    return Graph.from_pairs(pairs, n)


def serialize_graph(g: Graph) -> str:
    lines = [f"vertices {g.n}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def load_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class NonseparabilityReport:
    connected: bool
    bridges: list[int] = field(default_factory=list)
    articulation_points: list[int] = field(default_factory=list)
    min_degree: int = 0

    @property
    def nonseparable(self) -> bool:
        return (
            self.connected
            and not self.bridges
            and not self.articulation_points
            and self.min_degree >= 3
        )

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "bridges": [e + 1 for e in self.bridges],
            "articulation_points": [v + 1 for v in self.articulation_points],
            "min_degree": self.min_degree,
            "nonseparable": self.nonseparable,
        }


def validate_nonseparable(g: Graph) -> NonseparabilityReport:
    h = g.to_networkx()
    connected = g.n > 0 and nx.is_connected(h)
    bridges = sorted(g.edge_id(u, v) for u, v in nx.bridges(h))
    cut = sorted(nx.articulation_points(h))
    min_degree = min((g.degree(v) for v in range(g.n)), default=0)
    return NonseparabilityReport(connected, bridges, cut, min_degree)


def is_connected(g: Graph) -> bool:
    return g.n > 0 and nx.is_connected(g.to_networkx())


def cyclomatic_number(g: Graph) -> int:
    if not is_connected(g):
        raise GraphError("cyclomatic number needs a connected graph")
    return g.m - g.n + 1


def all_pairs_distance(g: Graph) -> list[list[int]]:
    """Hop-count distance table, dist[u][v]."""
    if not is_connected(g):
        raise GraphError("distance table needs a connected graph")
    dist = [[0] * g.n for _ in range(g.n)]
    for u, row in nx.all_pairs_shortest_path_length(g.to_networkx()):
        for v, d in row.items():
            dist[u][v] = d
    return dist
