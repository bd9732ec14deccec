"""Isometric cycles: simple cycles on which graph distance equals arc distance."""

from __future__ import annotations

from .cycles import Cycle, cycle_from_vertices, mask_edges
from .graph import Graph, GraphError, all_pairs_distance


def is_isometric(g: Graph, c: Cycle, dist: list[list[int]] | None = None) -> bool:
    seq = c.vertices
    if len(seq) < 3 or len(set(seq)) != len(seq) or c.length != len(seq):
        raise GraphError("not a simple cycle")
    if dist is None:
        dist = all_pairs_distance(g)
    size = len(seq)
    for i in range(size):
        row = dist[seq[i]]
        for j in range(i + 1, size):
            gap = j - i
            if row[seq[j]] != min(gap, size - gap):
                return False
    return True


def _geodesics(g: Graph, root: int, dist_root: list[int]) -> dict[int, list[tuple[int, ...]]]:
    """All shortest paths from root that stay on vertices above root."""
    paths: dict[int, list[tuple[int, ...]]] = {root: [(root,)]}
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.adjacency[x]:
                if y <= root or dist_root[y] != dist_root[x] + 1:
                    continue
                if y not in paths:
                    paths[y] = []
                    nxt.append(y)
                paths[y].extend(p + (y,) for p in paths[x])
        frontier = nxt
    return paths


def _candidates(g: Graph, root: int, dist: list[list[int]]):
    """Cycles whose smallest vertex is root, as two geodesics from root."""
    d = dist[root]
    paths = _geodesics(g, root, d)
    # odd length: two geodesics of equal length joined by an edge
    for x, y in g.edges:
        if x <= root or y <= root or d[x] != d[y] or x not in paths or y not in paths:
            continue
        for p in paths[x]:
            inner = set(p[1:])
            for q in paths[y]:
                if inner.isdisjoint(q[1:]):
                    yield p + q[:0:-1]
    # even length: two geodesics meeting at an antipodal vertex
    for a, group in paths.items():
        if d[a] < 2:
            continue
        for i, p in enumerate(group):
            inner = set(p[1:-1])
            for q in group[i + 1 :]:
                if inner.isdisjoint(q[1:-1]):
                    yield p + q[-2:0:-1]


def sort_key(c: Cycle) -> tuple:
    return (c.length, mask_edges(c.edges))


def enumerate_isometric_cycles(g: Graph) -> list[Cycle]:
    """All isometric cycles, sorted by (length, edge list) and labelled 1..k."""
    dist = all_pairs_distance(g)
    found: dict[int, Cycle] = {}
    for root in range(g.n):
        for seq in _candidates(g, root, dist):
            c = cycle_from_vertices(g, seq)
            if c.edges not in found and is_isometric(g, c, dist):
                found[c.edges] = c
    ordered = sorted(found.values(), key=sort_key)
    return [c.relabel(i + 1) for i, c in enumerate(ordered)]


def isometric_listing(g: Graph, cycles: list[Cycle]) -> str:
    lines = [f"Isometric cycles: {len(cycles)}"]
    for c in cycles:
        edges = ", ".join(f"e{e + 1}" for e in c.edge_list)
        verts = ", ".join(f"v{v + 1}" for v in c.vertices)
        lines.append(f"c{c.label} = {{{edges}}} <-> {{{verts}}}")
    return "\n".join(lines)
