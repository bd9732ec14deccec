"""Choosing a cycle basis from the isometric pool with a small cubic functional."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cycles import (
    Cycle,
    extract_independent,
    gf2_rank,
    is_independent,
    mask_edges,
)
from .graph import Graph, cyclomatic_number
from .maclane import LoadTracker, edge_load, f_cubic


class BasisError(ValueError):
    pass


@dataclass
class BasisCandidate:
    cycles: list[Cycle]
    f_cubic: int
    sum_of_lengths: int
    method: str
    trial: int | None = None
    complete: bool = True

    @property
    def labels(self) -> list[int]:
        return [c.label for c in self.cycles]

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "trial": self.trial,
            "cycles": self.labels,
            "F": self.f_cubic,
            "sum_of_lengths": self.sum_of_lengths,
            "complete": self.complete,
        }


def make_candidate(cycles: Sequence[Cycle], m: int, method: str, **kw) -> BasisCandidate:
    cycles = list(cycles)
    value = f_cubic(edge_load(cycles, m))
    return BasisCandidate(cycles, value, sum(c.length for c in cycles), method, **kw)


def check_basis(b: BasisCandidate, g: Graph) -> list[str]:
    """Violated basis invariants, empty when the candidate is sound."""
    problems = []
    masks = [c.edges for c in b.cycles]
    if len(masks) != cyclomatic_number(g):
        problems.append(f"size {len(masks)} != {cyclomatic_number(g)}")
    if not is_independent(masks):
        problems.append("dependent")
    if 0 in edge_load(b.cycles, g.m):
        problems.append("uncovered edge")
    covered = {v for c in b.cycles for v in c.vertices}
    if len(covered) != g.n:
        problems.append("uncovered vertex")
    return problems


def trial_order(seed: int, trial: int, k: int) -> list[int]:
    """Shuffled positions 0..k-1 for one trial; the stream depends only on (seed, trial)."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))
    return [int(i) for i in rng.permutation(k)]


@dataclass
class MonteCarloResult:
    best: BasisCandidate
    log: list[tuple[int, int, int]]  # (trial, F, sum of lengths)
    ranked: list[BasisCandidate] = field(default_factory=list)  # distinct bases, best first


def monte_carlo_basis(
    pool: Sequence[Cycle], g: Graph, trials: int, seed: int, threads: int = 1
) -> MonteCarloResult:
    if trials < 1:
        raise BasisError("trials must be >= 1")
    target = cyclomatic_number(g)
    pool = list(pool)
    if len(pool) < target:
        raise BasisError(f"cycle pool has {len(pool)} cycles < {target}")

    def run(trial: int) -> BasisCandidate:
        order = trial_order(seed, trial, len(pool))
        shuffled = [pool[i] for i in order]
        ext = extract_independent([c.edges for c in shuffled], target)
        if ext.deficient:
            raise BasisError(f"cycle pool has rank {ext.rank} < {target}")
        chosen = sorted((shuffled[i] for i in ext.selected), key=lambda c: c.label)
        return make_candidate(chosen, g.m, "mc", trial=trial)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(run, range(trials)))
    else:
        results = [run(t) for t in range(trials)]
    ordered = sorted(results, key=lambda b: (b.f_cubic, b.sum_of_lengths, b.trial))
    ranked, seen = [], set()
    for b in ordered:
        key = frozenset(c.label for c in b.cycles)
        if key not in seen:
            seen.add(key)
            ranked.append(b)
    log = [(b.trial, b.f_cubic, b.sum_of_lengths) for b in results]
    return MonteCarloResult(ordered[0], log, ranked)


@dataclass
class DescentStep:
    label: int
    value: int
    rate: int
    length: int

    def to_json(self) -> dict:
        return {"cycle": self.label, "F": self.value, "rate": self.rate}


@dataclass
class DescentResult:
    basis: BasisCandidate
    steps: list[DescentStep]
    excluded: list[int] = field(default_factory=list)
    initial_value: int = 0
    zero_pool: list[Cycle] | None = None

    def trace_lines(self) -> list[str]:
        lines = []
        for t, s in enumerate(self.steps, 1):
            lines.append(f"δ^{t} C_τ / δc{s.label} → {s.value}")
        return lines


TIE_ORDERS = ("rate", "length")


def seed_exclusions(pool: Sequence[Cycle], k: int, target: int) -> list[int]:
    """Labels of the k longest cycles, ties going to the higher label."""
    if not 0 <= k <= len(pool) - target:
        raise BasisError(f"cannot pre-exclude {k} of {len(pool)} cycles")
    ranked = sorted(pool, key=lambda c: (c.length, c.label), reverse=True)
    return [c.label for c in ranked[:k]]


def coloops(cycles: Sequence[Cycle]) -> set[int]:
    """Labels of cycles whose removal lowers the rank of the set.

    A cycle is a coloop iff it lies in no circuit: it is a pivot row that no
    other cycle needs when reduced.
    """
    rows: dict[int, tuple[int, int]] = {}  # low bit -> (vector, pivot rows used)
    needed = 0
    pivots = []
    for c in cycles:
        v, used = c.edges, 0
        while v:
            low = v & -v
            if low not in rows:
                break
            rv, ru = rows[low]
            v ^= rv
            used ^= ru
        if v:
            bit = 1 << len(pivots)
            rows[v & -v] = (v, used ^ bit)
            pivots.append(c.label)
        else:
            needed |= used
    return {label for i, label in enumerate(pivots) if not needed >> i & 1}


def _removable(tracker: LoadTracker, c: Cycle, locked: set[int]) -> bool:
    if c.label in locked:
        return False
    if any(tracker.edges[e] <= 1 for e in mask_edges(c.edges)):
        return False
    return all(tracker.vertices[v] > 1 for v in c.vertices)


def steepest_descent_basis(
    pool: Sequence[Cycle],
    g: Graph,
    exclude: Sequence[int] = (),
    tie_order: str = "rate",
) -> DescentResult:
    """Drop cycles one at a time, each time taking the smallest resulting F.

    A drop is legal only if every edge and vertex stays covered and the
    remainder keeps full rank. Ties go to the larger rate of change (last
    round's value minus this round's), then the longer cycle, then the
    higher label; ``tie_order="length"`` checks length before rate.
    """
    if tie_order not in TIE_ORDERS:
        raise ValueError(f"tie_order must be one of {TIE_ORDERS}")
    target = cyclomatic_number(g)
    pool = list(pool)
    tracker = LoadTracker(pool, g.n, g.m)
    initial = tracker.value
    prev = {c.label: tracker.removal_value(c.label) for c in pool}
    if not exclude:
        prev = {label: initial for label in prev}
    for label in exclude:
        tracker.remove(label)
    if gf2_rank(c.edges for c in tracker.cycles.values()) < target:
        raise BasisError("pool does not span the cycle space")

    steps: list[DescentStep] = []
    zero_pool = list(tracker.cycles.values()) if tracker.value == 0 else None
    complete = True
    while len(tracker.cycles) > target:
        options = []
        values = {}
        locked = coloops(list(tracker.cycles.values()))
        for c in tracker.cycles.values():
            value = tracker.removal_value(c.label)
            values[c.label] = value
            if not _removable(tracker, c, locked):
                continue
            rate = prev[c.label] - value
            if tie_order == "rate":
                key = (value, -rate, -c.length, -c.label)
            else:
                key = (value, -c.length, -rate, -c.label)
            options.append((key, c, value, rate))
        if not options:
            complete = False
            break
        _, c, value, rate = min(options, key=lambda o: o[0])
        tracker.remove(c.label)
        steps.append(DescentStep(c.label, value, rate, c.length))
        prev = values
        if value == 0 and zero_pool is None:
            zero_pool = list(tracker.cycles.values())
    cycles = sorted(tracker.cycles.values(), key=lambda c: c.label)
    basis = make_candidate(cycles, g.m, "sd", complete=complete)
    if complete and not is_independent([c.edges for c in cycles]):
        basis.complete = False
    return DescentResult(basis, steps, list(exclude), initial, zero_pool)
