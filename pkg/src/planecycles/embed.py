"""Rims, rotation systems and chord re-insertion around the rim."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .cycles import (
    Cycle,
    cycle_from_vertices,
    mask_edges,
    ring_sum_all,
    vertex_order,
)
from .graph import Graph
from .maclane import edge_load, f_cubic


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class Rim:
    edges: int
    vertices: tuple[int, ...] | None  # None when the ring sum is not one simple cycle

    @property
    def simple(self) -> bool:
        return self.vertices is not None

    @property
    def length(self) -> int:
        return bin(self.edges).count("1")

    def arcs(self, g: Graph) -> list[int]:
        """Rim edges in traversal order."""
        if self.vertices is None:
            raise EmbeddingError("rim is not a simple cycle")
        vs = self.vertices
        return [g.edge_id(a, b) for a, b in zip(vs, vs[1:] + vs[:1])]

    def to_json(self) -> dict:
        return {
            "edges": [e + 1 for e in mask_edges(self.edges)],
            "vertices": None if self.vertices is None else [v + 1 for v in self.vertices],
            "simple": self.simple,
        }


def rim(cycles: Sequence[Cycle], g: Graph) -> Rim:
    mask = ring_sum_all(c.edges for c in cycles)
    return Rim(mask, vertex_order(g, mask) if mask else None)


@dataclass
class RotationSystem:
    order: dict[int, tuple[int, ...]]  # vertex -> neighbours in cyclic order
    faces: list[tuple[int, ...]]  # traced faces as vertex sequences

    def face_masks(self, g: Graph) -> list[int]:
        out = []
        for f in self.faces:
            mask = 0
            for a, b in zip(f, f[1:] + f[:1]):
                mask |= 1 << g.edge_id(a, b)
            out.append(mask)
        return out

    def text(self) -> str:
        lines = []
        for v in sorted(self.order):
            nbrs = " ".join(f"v{u + 1}" for u in self.order[v])
            lines.append(f"σ(v{v + 1}): {nbrs}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {str(v + 1): [u + 1 for u in self.order[v]] for v in sorted(self.order)}

    def dot(self, g: Graph, name: str = "drawing") -> str:
        lines = [f"graph {name} {{"]
        for v in sorted(self.order):
            ports = " ".join(str(u + 1) for u in self.order[v])
            lines.append(f"  {v + 1};  // rotation: {ports}")
        seen = set()
        for v in sorted(self.order):
            for u in self.order[v]:
                e = g.edge_id(u, v)
                if e not in seen:
                    seen.add(e)
                    lines.append(f'  {min(u, v) + 1} -- {max(u, v) + 1} [label="e{e + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _orient_faces(cycles: Sequence[Cycle], g: Graph) -> list[tuple[int, ...]]:
    """Orient every cycle so that two cycles sharing an edge run it in opposite directions."""
    by_edge: dict[int, list[int]] = {}
    for i, c in enumerate(cycles):
        for e in mask_edges(c.edges):
            by_edge.setdefault(e, []).append(i)
    oriented: list[tuple[int, ...] | None] = [None] * len(cycles)
    oriented[0] = cycles[0].vertices
    stack = [0]
    while stack:
        i = stack.pop()
        darts = _darts(oriented[i])
        for c_edge in mask_edges(cycles[i].edges):
            for j in by_edge[c_edge]:
                if j == i:
                    continue
                u, v = next(d for d in darts if g.edge_id(*d) == c_edge)
                seq = cycles[j].vertices
                forward = (u, v) in _darts(seq)
                want = seq[::-1] if forward else seq
                if oriented[j] is None:
                    oriented[j] = want
                    stack.append(j)
                elif (u, v) in _darts(oriented[j]):
                    raise EmbeddingError("cycles cannot be oriented consistently")
    if any(o is None for o in oriented):
        raise EmbeddingError("cycles do not form one edge-connected piece")
    return oriented  # type: ignore[return-value]


def _darts(seq: Sequence[int]) -> set[tuple[int, int]]:
    return set(zip(seq, tuple(seq[1:]) + tuple(seq[:1])))


def trace_faces(order: dict[int, tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Faces of a rotation system: from dart u->v continue to v->succ_v(u)."""
    succ = {}
    for v, nbrs in order.items():
        for i, u in enumerate(nbrs):
            succ[(v, u)] = nbrs[(i + 1) % len(nbrs)]
    unused = {(u, v) for v, nbrs in order.items() for u in nbrs}
    faces = []
    for start in sorted(unused):
        if start not in unused:
            continue
        face = []
        dart = start
        while dart in unused:
            unused.discard(dart)
            u, v = dart
            face.append(u)
            dart = (v, succ[(v, u)])
        faces.append(tuple(face))
    return faces


def rotation_system(cycles: Sequence[Cycle], g: Graph) -> RotationSystem:
    """Stitch cycle corners around each vertex into a cyclic order.

    The configuration's cycles plus its rim must trace back as the faces.
    """
    if not cycles:
        raise EmbeddingError("empty configuration")
    if f_cubic(edge_load(cycles, g.m)) != 0:
        raise EmbeddingError("some edge lies on more than two cycles")
    outer = rim(cycles, g)
    if not outer.simple:
        raise EmbeddingError("rim is not a simple cycle")
    faces = _orient_faces(cycles, g)
    inner = set().union(*(_darts(f) for f in faces))
    rim_seq = outer.vertices
    if (rim_seq[0], rim_seq[1]) in inner:
        rim_seq = rim_seq[::-1]
    if _darts(rim_seq) & inner:
        raise EmbeddingError("rim direction clashes with the cycle orientation")
    nxt: dict[int, dict[int, int]] = {}
    for f in faces + [rim_seq]:
        size = len(f)
        for i, v in enumerate(f):
            u, w = f[i - 1], f[(i + 1) % size]
            if u in nxt.setdefault(v, {}):
                raise EmbeddingError(f"two corners at v{v + 1} start from v{u + 1}")
            nxt[v][u] = w
    order = {}
    for v, step in nxt.items():
        start = min(step)
        seq = [start]
        while step[seq[-1]] != start:
            seq.append(step[seq[-1]])
            if len(seq) > len(step):
                break
        if len(seq) != len(step):
            raise EmbeddingError(f"rotation at v{v + 1} does not close")
        order[v] = tuple(seq)
    traced = trace_faces(order)
    want = sorted([c.edges for c in cycles] + [outer.edges])
    got = RotationSystem(order, traced)
    if sorted(got.face_masks(g)) != want:
        raise EmbeddingError("face trace differs from cycles plus rim")
    return got


# chord re-insertion


@dataclass(frozen=True)
class ChordProjection:
    chord: int | None  # graph edge id, if the chord is an edge
    ends: tuple[int, int]
    arcs: tuple[tuple[int, ...], tuple[int, ...]]  # rim edge ids, traversal order
    arc_vertices: tuple[frozenset[int], frozenset[int]]  # interior vertices of each arc

    @property
    def short_arc(self) -> tuple[int, ...]:
        a, b = self.arcs
        return a if len(a) <= len(b) else b

    def to_json(self) -> dict:
        return {
            "chord": None if self.chord is None else self.chord + 1,
            "ends": [v + 1 for v in self.ends],
            "arcs": [[e + 1 for e in arc] for arc in self.arcs],
        }


def project_chord(r: Rim, g: Graph, a: int, b: int) -> ChordProjection:
    if r.vertices is None:
        raise EmbeddingError("rim is not a simple cycle")
    pos = {v: i for i, v in enumerate(r.vertices)}
    if a not in pos or b not in pos:
        raise EmbeddingError(f"chord ({a + 1},{b + 1}) has an end off the rim")
    if a == b:
        raise EmbeddingError("degenerate chord")
    edges = r.arcs(g)
    i, j = sorted((pos[a], pos[b]))
    first = tuple(edges[i:j])
    second = tuple(edges[j:] + edges[:i])
    inner1 = frozenset(r.vertices[i + 1 : j])
    inner2 = frozenset(r.vertices[j + 1 :] + r.vertices[:i])
    chord = g.edge_index.get((a, b))
    return ChordProjection(chord, (r.vertices[i], r.vertices[j]), (first, second), (inner1, inner2))


def chords_cross(p: ChordProjection, q: ChordProjection) -> bool:
    """True when q's ends fall on different arcs of p; shared ends never cross."""
    if set(p.ends) & set(q.ends):
        return False
    inside = [v in p.arc_vertices[0] for v in q.ends]
    return inside[0] != inside[1]


def _label(p: ChordProjection) -> int:
    return p.chord if p.chord is not None else -1


def select_noncrossing(projections: Sequence[ChordProjection]) -> list[ChordProjection]:
    """Greedy: drop the chord with most crossings until none cross.

    Ties drop the higher edge id first.
    """
    alive = list(projections)
    while True:
        counts = [sum(chords_cross(p, q) for q in alive if q is not p) for p in alive]
        if not alive or max(counts) == 0:
            return sorted(alive, key=_label)
        worst = max(range(len(alive)), key=lambda i: (counts[i], _label(alive[i])))
        alive.pop(worst)


def select_noncrossing_exact(
    projections: Sequence[ChordProjection], rim_vertices: Sequence[int]
) -> list[ChordProjection]:
    """Largest pairwise non-crossing subset (interval dynamic programme)."""
    pos = {v: i for i, v in enumerate(rim_vertices)}
    by_pair: dict[tuple[int, int], ChordProjection] = {}
    starts: dict[int, list[int]] = {}
    for p in sorted(projections, key=_label):
        i, j = sorted(pos[v] for v in p.ends)
        if (i, j) in by_pair:
            continue
        by_pair[(i, j)] = p
        starts.setdefault(i, []).append(j)

    @lru_cache(maxsize=None)
    def best(lo: int, hi: int) -> tuple[int, tuple[tuple[int, int], ...]]:
        if hi - lo < 1:
            return 0, ()
        here = ((lo, hi),) if (lo, hi) in by_pair else ()
        top = best(lo + 1, hi)
        for k in sorted(starts.get(lo, [])):
            if k >= hi:
                continue
            left, right = best(lo, k), best(k, hi)
            score = left[0] + right[0]
            if score > top[0]:
                top = (score, left[1] + right[1])
        return top[0] + len(here), here + top[1]

    _, pairs = best(0, len(rim_vertices) - 1)
    return sorted((by_pair[pair] for pair in pairs), key=_label)


@dataclass
class ChordResult:
    kept: list[int]  # edge ids of rim chords put back
    dropped: list[int]
    attached: list[int]  # edge ids placed inside an existing cycle
    cycles: list[Cycle]  # enlarged configuration
    added: list[Cycle] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kept": [e + 1 for e in self.kept],
            "dropped": [e + 1 for e in self.dropped],
            "attached": [e + 1 for e in self.attached],
            "added_cycles": [c.to_json() for c in self.added],
            "edges": len({e for c in self.cycles for e in mask_edges(c.edges)}),
        }


def _split_cycle(c: Cycle, a: int, b: int, g: Graph, labels: list[int]) -> tuple[Cycle, Cycle]:
    seq = c.vertices
    i, j = sorted((seq.index(a), seq.index(b)))
    one = cycle_from_vertices(g, seq[i : j + 1], labels[0])
    two = cycle_from_vertices(g, seq[j:] + seq[: i + 1], labels[1])
    return one, two


def _anchor_edge(r: Rim, g: Graph, kept: Sequence[ChordProjection]) -> int:
    """Rim edge left outside every new cycle, chosen to keep the new cycles short."""
    def cost(e: int) -> int:
        return sum(len(p.arcs[1] if e in p.arcs[0] else p.arcs[0]) for p in kept)

    return min(r.arcs(g), key=cost)


def insert_chords(
    cycles: Sequence[Cycle],
    g: Graph,
    pending: Sequence[int],
    exact: bool = False,
) -> ChordResult:
    """Put deleted edges back without breaking the plane configuration.

    Edges with both ends on the rim are projected onto it; a non-crossing
    subset is kept and each adds the cycle chord + shorter arc. Other edges
    go inside a cycle that holds both ends, splitting it; if none does they
    stay deleted.
    """
    cycles = list(cycles)
    next_label = max((c.label for c in cycles), default=0) + 1
    outer = rim(cycles, g)
    on_rim = set(outer.vertices or ())
    rim_chords = [e for e in pending if set(g.edges[e]) <= on_rim]
    inner = [e for e in pending if e not in rim_chords]
    projections = [project_chord(outer, g, *g.edges[e]) for e in rim_chords]
    if exact:
        kept = select_noncrossing_exact(projections, outer.vertices)
    else:
        kept = select_noncrossing(projections)
    kept_ids = [p.chord for p in kept]
    added: list[Cycle] = []
    if kept:
        anchor = _anchor_edge(outer, g, kept)
        inside = {id(p): p.arcs[1] if anchor in p.arcs[0] else p.arcs[0] for p in kept}
        # innermost first; every arc avoids the anchor so the regions nest
        for p in sorted(kept, key=lambda p: (len(inside[id(p)]), _label(p))):
            q = project_chord(rim(cycles, g), g, *p.ends)
            arc = q.arcs[1] if anchor in q.arcs[0] else q.arcs[0]
            mask = (1 << q.chord) | sum(1 << e for e in arc)
            c = Cycle(mask, vertex_order(g, mask), next_label)
            next_label += 1
            cycles.append(c)
            added.append(c)
    attached = []
    for e in inner:
        a, b = g.edges[e]
        host = next((c for c in cycles if a in c.vertices and b in c.vertices), None)
        if host is None:
            continue
        one, two = _split_cycle(host, a, b, g, [next_label, next_label + 1])
        next_label += 2
        cycles = [c for c in cycles if c is not host] + [one, two]
        added = [c for c in added if c is not host] + [one, two]
        attached.append(e)
    dropped = sorted(set(pending) - set(kept_ids) - set(attached))
    return ChordResult(sorted(kept_ids), dropped, attached, cycles, added)
