"""Hamiltonian cycles as rims of face chains, found by pruning the cycle graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import networkx as nx

from .cycles import Cycle, cycle_from_vertices, mask_edges, popcount, vertex_order
from .embed import rim
from .graph import Graph
from .maclane import LoadTracker, bracket


@dataclass
class CycleGraph:
    """Cycles adjacent through shared non-rim edges; parallel edges are kept."""

    nodes: list[int]
    links: list[tuple[int, int, int]]  # (cycle, cycle, graph edge id)

    def degree(self, label: int) -> int:
        return sum(label in (a, b) for a, b, _ in self.links)

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(self.nodes)
        for a, b, e in self.links:
            h.add_edge(a, b, edge=e)
        return h

    def multiedges(self) -> list[tuple[int, int, list[int]]]:
        shared: dict[tuple[int, int], list[int]] = {}
        for a, b, e in self.links:
            shared.setdefault((a, b), []).append(e)
        return [(a, b, es) for (a, b), es in sorted(shared.items()) if len(es) > 1]

    def bridges(self) -> set[tuple[int, int]]:
        simple = nx.Graph()
        simple.add_nodes_from(self.nodes)
        for a, b, _ in self.links:
            simple.add_edge(a, b)
        parallel = {(a, b) for a, b, _ in self.multiedges()}
        return {tuple(sorted(p)) for p in nx.bridges(simple)} - parallel

    def articulation_points(self) -> list[int]:
        simple = nx.Graph(self.to_networkx())
        return sorted(nx.articulation_points(simple))

    def is_tree(self) -> bool:
        return len(self.nodes) > 0 and nx.is_tree(nx.Graph(self.to_networkx())) and not self.multiedges()

    def to_json(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": [[a, b, e + 1] for a, b, e in self.links],
        }


def build_cycle_graph(cycles: Sequence[Cycle], g: Graph) -> CycleGraph:
    owners: dict[int, list[int]] = {}
    for c in cycles:
        for e in mask_edges(c.edges):
            owners.setdefault(e, []).append(c.label)
    links = []
    for e in sorted(owners):
        labels = owners[e]
        if len(labels) == 2:
            a, b = sorted(labels)
            links.append((a, b, e))
    return CycleGraph(sorted(c.label for c in cycles), links)


@dataclass
class HamiltonStep:
    cycle: int
    edge: int
    degree: int

    def to_json(self) -> dict:
        return {"cycle": self.cycle, "edge": self.edge + 1, "H_degree": self.degree}


@dataclass
class HamiltonResult:
    status: str  # found | not_found | non_hamiltonian_evidence
    cycle: tuple[int, ...] | None = None
    trace: list[HamiltonStep] = field(default_factory=list)
    evidence: dict | None = None
    cycles: list[Cycle] = field(default_factory=list)  # surviving face chain
    alternatives: list[tuple[int, ...]] = field(default_factory=list)
    adopted: list[Cycle] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "found"

    def load_lines(self, g: Graph) -> list[str]:
        p = [0] * g.m
        for c in self.cycles:
            for e in mask_edges(c.edges):
                p[e] += 1
        ones = p.count(1)
        verdict = "rim is Hamiltonian" if ones == g.n and self.found else "rim is not Hamiltonian"
        return [f"P_e = {bracket(p)}", f"ones: {ones}, vertices: {g.n}, {verdict}"]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "cycle": None if self.cycle is None else [v + 1 for v in self.cycle],
            "trace": [s.to_json() for s in self.trace],
            "evidence": self.evidence,
            "faces": [c.label for c in self.cycles],
            "adopted": [c.to_json() for c in self.adopted],
            "found_cycles": [[v + 1 for v in cyc] for cyc in self.alternatives],
        }


def verify_hamiltonian(cycle: Sequence[int], g: Graph) -> bool:
    if len(cycle) != g.n or sorted(cycle) != list(range(g.n)) or g.n < 3:
        return False
    return all((min(a, b), max(a, b)) in g.edge_index for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]))


def _witness(cycles: Sequence[Cycle], g: Graph) -> dict | None:
    covered = {v for c in cycles for v in c.vertices}
    missing = sorted(set(range(g.n)) - covered)
    if missing:
        return {"vertex_uncovered": [v + 1 for v in missing]}
    h = build_cycle_graph(cycles, g)
    multi = h.multiedges()
    if multi:
        return {"H_multiedge": [[a, b, [e + 1 for e in es]] for a, b, es in multi]}
    cut = h.articulation_points()
    if cut:
        return {"H_separable": cut}
    return None


CONFIRM_LIMIT = 200_000


def has_hamiltonian_cycle(g: Graph, limit: int = CONFIRM_LIMIT) -> bool | None:
    """Exhaustive path extension from vertex 0; None once ``limit`` extensions are spent."""
    if g.n < 3:
        return False
    adj = [sorted(nbrs, key=lambda w: len(g.adjacency[w])) for nbrs in g.adjacency]
    if any(len(a) < 2 for a in adj):
        return False
    used = [False] * g.n
    used[0] = True
    steps = 0

    def extend(v: int, depth: int) -> bool | None:
        nonlocal steps
        if depth == g.n:
            return 0 in adj[v]
        for w in adj[v]:
            if used[w]:
                continue
            steps += 1
            if steps > limit:
                return None
            used[w] = True
            found = extend(w, depth + 1)
            used[w] = False
            if found is not False:
                return found
        return False

    return extend(0, 1)


class _State:
    def __init__(self, cycles: Sequence[Cycle], g: Graph) -> None:
        self.g = g
        self.tracker = LoadTracker(cycles, g.n, g.m)
        self.rim = 0
        for c in cycles:
            self.rim ^= c.edges

    def rim_vertices(self) -> set[int]:
        return {v for e in mask_edges(self.rim) for v in self.g.edges[e]}

    def deletable(self, c: Cycle, on_rim: set[int]) -> int | None:
        """Rim edge removed with c, if the new rim stays simple and covers every vertex."""
        outer = [e for e in mask_edges(c.edges) if self.tracker.edges[e] == 1]
        if len(outer) != 1:
            return None
        ends = set(self.g.edges[outer[0]])
        for v in c.vertices:
            if v in ends:
                continue
            if v in on_rim or self.tracker.vertices[v] <= 1:
                return None
        return outer[0]

    def remove(self, c: Cycle) -> None:
        self.tracker.remove(c.label)
        self.rim ^= c.edges

    def restore(self, c: Cycle) -> None:
        self.tracker.add(c)
        self.rim ^= c.edges


def _search(
    cycles: Sequence[Cycle], g: Graph, budget: int, first_only: bool
) -> Iterator[tuple[tuple[int, ...], list[HamiltonStep], list[Cycle]]]:
    """Depth-first face removal; ``budget`` caps the alternative branches tried."""
    state = _State(cycles, g)
    if vertex_order(g, state.rim) is None:
        return
    spent = 0
    trail: list[HamiltonStep] = []

    def options(pivot: Cycle | None) -> list[tuple[Cycle, int, int]]:
        on_rim = state.rim_vertices()
        live = list(state.tracker.cycles.values())
        h = build_cycle_graph(live, g)
        legal = []
        for c in live:
            edge = state.deletable(c, on_rim)
            if edge is not None:
                legal.append((c, edge))
        if pivot is not None:
            marked = [(c, e) for c, e in legal if c.edges & pivot.edges]
            legal = marked or legal
        before = h.bridges()
        ranked = []
        for c, edge in legal:
            rest = build_cycle_graph([x for x in live if x.label != c.label], g)
            new_bridge = bool(rest.bridges() - before)
            degree = h.degree(c.label)
            ranked.append(((-degree, new_bridge, -c.length, -c.label), c, edge, degree))
        ranked.sort(key=lambda r: r[0])
        return [(c, edge, degree) for _, c, edge, degree in ranked]

    def walk(pivot: Cycle | None):
        nonlocal spent
        if popcount(state.rim) == g.n:
            yield vertex_order(g, state.rim), list(trail), list(state.tracker.cycles.values())
            return
        for i, (c, edge, degree) in enumerate(options(pivot)):
            if i > 0:
                if spent >= budget:
                    return
                spent += 1
            state.remove(c)
            trail.append(HamiltonStep(c.label, edge, degree))
            yield from walk(c)
            trail.pop()
            state.restore(c)

    for hit in walk(None):
        yield hit
        if first_only:
            return


def rim_cycles(cycles: Sequence[Cycle], g: Graph) -> list[Cycle]:
    """Simple cycles made only of rim edges, in (length, edge list) order."""
    mask = 0
    for c in cycles:
        mask ^= c.edges
    sub = nx.Graph()
    sub.add_edges_from(g.edges[e] for e in mask_edges(mask))
    if sub.number_of_edges() == 0:
        return []
    found = {}
    for seq in nx.simple_cycles(sub):
        if len(seq) >= 3:
            c = cycle_from_vertices(g, seq)
            found[c.edges] = c
    ordered = sorted(found.values(), key=lambda c: (c.length, mask_edges(c.edges)))
    top = max((c.label for c in cycles), default=0)
    return [c.relabel(top + i + 1) for i, c in enumerate(ordered)]


def _adoptable(cycles: Sequence[Cycle], g: Graph) -> list[Cycle]:
    """Rim cycles whose edges all carry load one, so adding one keeps loads at most two."""
    load = LoadTracker(cycles, g.n, g.m).edges
    return [c for c in rim_cycles(cycles, g) if all(load[e] == 1 for e in mask_edges(c.edges))]


def extract_hamiltonian(
    cycles: Sequence[Cycle],
    g: Graph,
    budget: int = 32,
    adopt_rim_cycles: bool = True,
    collect: bool = False,
    confirm_limit: int = CONFIRM_LIMIT,
) -> HamiltonResult:
    """Delete faces until the rim is a Hamiltonian cycle.

    Each deletion removes one face with exactly one rim edge whose other
    vertices are interior, so the rim stays simple and grows by one vertex.
    Faces touching the last deleted face go first; among them the largest
    cycle-graph degree wins, then avoiding a new cycle-graph bridge, then
    the longer face, then the higher label. Dead ends backtrack, trying at
    most ``budget`` alternative branches. If that fails, each simple cycle
    lying on the rim is tried in turn as an extra face.
    ``collect`` keeps searching for further distinct cycles within budget.
    Evidence is reported only when an exhaustive search, capped at
    ``confirm_limit`` extensions, agrees that no Hamiltonian cycle exists.
    """
    cycles = list(cycles)
    attempts = [(cycles, [])]
    if adopt_rim_cycles:
        attempts += [(cycles + [c], [c]) for c in _adoptable(cycles, g)]
    result = None
    for faces, extra in attempts:
        seen: dict[int, tuple[int, ...]] = {}
        first = None
        for seq, trail, kept in _search(faces, g, budget, first_only=not collect):
            mask = cycle_from_vertices(g, seq).edges
            seen.setdefault(mask, seq)
            if first is None:
                first = (seq, trail, kept)
        if first is not None:
            seq, trail, kept = first
            result = HamiltonResult("found", seq, trail, None, kept, list(seen.values()), extra)
            break
    if result is None:
        # a pinched starting rim means the search never ran; that proves nothing
        witness = _witness(cycles, g) if rim(cycles, g).simple else None
        # a witness on a planarized subgraph is no proof for g; confirm it
        if witness and has_hamiltonian_cycle(g, confirm_limit) is not False:
            witness = None
        status = "non_hamiltonian_evidence" if witness else "not_found"
        result = HamiltonResult(status, None, [], witness, cycles)
    return result


def enumerate_hamiltonian_variants(
    configs: Sequence[Sequence[Cycle]], g: Graph, budget: int = 32
) -> tuple[list[HamiltonResult], list[tuple[int, ...]]]:
    """Run extraction on each configuration; also return the distinct cycles found."""
    results = [extract_hamiltonian(c, g, budget=budget, collect=True) for c in configs]
    distinct: dict[int, tuple[int, ...]] = {}
    for r in results:
        for seq in r.alternatives:
            distinct.setdefault(cycle_from_vertices(g, seq).edges, seq)
    return results, [distinct[k] for k in sorted(distinct)]
