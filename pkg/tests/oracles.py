"""Slow, independent reference implementations used to check the library."""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import numpy as np


def simple_cycles(n: int, edges: list[tuple[int, int]]) -> set[frozenset[int]]:
    """Every simple cycle as a frozenset of edge ids, by DFS from its smallest vertex."""
    index = {}
    adj = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        index[(u, v)] = index[(v, u)] = i
        adj[u].append(v)
        adj[v].append(u)
    found = set()

    def extend(start, path, seen):
        last = path[-1]
        for w in adj[last]:
            if w == start and len(path) >= 3:
                ids = [index[(a, b)] for a, b in zip(path, path[1:])] + [index[(last, start)]]
                found.add(frozenset(ids))
            elif w > start and w not in seen:
                seen.add(w)
                path.append(w)
                extend(start, path, seen)
                path.pop()
                seen.discard(w)

    for s in range(n):
        extend(s, [s], {s})
    return found


def distances(n: int, edges) -> np.ndarray:
    big = n + 1
    d = np.full((n, n), big, dtype=int)
    np.fill_diagonal(d, 0)
    for u, v in edges:
        d[u, v] = d[v, u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def cycle_sequence(edges, ids) -> list[int]:
    adj = {}
    for i in ids:
        u, v = edges[i]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = min(adj)
    seq, prev = [start], None
    while True:
        nxt = [w for w in adj[seq[-1]] if w != prev]
        step = nxt[0] if prev is not None or len(nxt) == 1 else min(nxt)
        if step == start:
            return seq
        prev = seq[-1]
        seq.append(step)


def isometric_cycles(n: int, edges) -> set[frozenset[int]]:
    d = distances(n, edges)
    out = set()
    for c in simple_cycles(n, edges):
        seq = cycle_sequence(edges, c)
        k = len(seq)
        if all(
            d[seq[i], seq[j]] == min(j - i, k - j + i)
            for i in range(k)
            for j in range(i + 1, k)
        ):
            out.add(c)
    return out


def dense_rank(masks, m: int) -> int:
    """GF(2) rank by row reduction of a dense 0/1 matrix."""
    if not masks:
        return 0
    a = np.array([[(x >> j) & 1 for j in range(m)] for x in masks], dtype=np.uint8)
    rank = 0
    for col in range(m):
        rows = np.nonzero(a[rank:, col])[0]
        if rows.size == 0:
            continue
        pivot = rank + rows[0]
        a[[rank, pivot]] = a[[pivot, rank]]
        hits = np.nonzero(a[:, col])[0]
        for r in hits:
            if r != rank:
                a[r] ^= a[rank]
        rank += 1
        if rank == a.shape[0]:
            break
    return rank


def hamiltonian_cycle(n: int, edges) -> list[int] | None:
    """Plain backtracking from vertex 0."""
    if n < 3:
        return None
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    path, used = [0], [False] * n
    used[0] = True

    def go() -> bool:
        if len(path) == n:
            return 0 in adj[path[-1]]
        for w in sorted(adj[path[-1]]):
            if not used[w]:
                used[w] = True
                path.append(w)
                if go():
                    return True
                path.pop()
                used[w] = False
        return False

    return path if go() else None


def min_planarizing_deletions(n: int, edges, limit: int = 3) -> int | None:
    """Fewest edge deletions giving a planar graph, by exhaustive search up to ``limit``."""
    for k in range(limit + 1):
        for drop in combinations(range(len(edges)), k):
            h = nx.Graph()
            h.add_nodes_from(range(n))
            h.add_edges_from(e for i, e in enumerate(edges) if i not in drop)
            if nx.check_planarity(h)[0]:
                return k
    return None
