"""End-to-end runs: isometric pool, basis, plane configuration, drawing, Hamiltonian cycle."""

from __future__ import annotations

import json
import re
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .basis import (
    BasisCandidate,
    BasisError,
    monte_carlo_basis,
    seed_exclusions,
    steepest_descent_basis,
)
from .cycles import Cycle, cycle_from_edges
from .embed import EmbeddingError, insert_chords, rotation_system
from .graph import Graph, GraphError, cyclomatic_number, validate_nonseparable
from .hamilton import HamiltonResult, enumerate_hamiltonian_variants
from .isometric import enumerate_isometric_cycles
from .maclane import edge_load, f_cubic, f_quadratic, vertex_load
from .planarize import PlaneConfiguration, audit_plane, reduce_to_plane

METHODS = ("sd", "mc")


@dataclass
class Options:
    method: str = "sd"
    trials: int = 1000
    seed: int = 0
    threads: int = 1
    pre_exclude_longest: int = 0
    tie_order: str = "rate"
    stage3: bool = False
    exact_chords: bool = False
    count_rim_as_cycle: bool = False
    budget: int = 32
    candidates: int = 8  # distinct Monte-Carlo bases handed to planarization


_LABEL = re.compile(r"^\s*c(\d+)\s*=")


def read_cycles(text: str, g: Graph) -> list[Cycle]:
    """Cycles from a listing: JSON, "c3 = {e1, e4, e7} ..." lines, or bare edge ids."""
    stripped = text.lstrip()
    if stripped.startswith(("[", "{")):
        doc = json.loads(text)
        if isinstance(doc, dict):
            doc = doc.get("cycles", [])
        out = []
        for i, item in enumerate(doc, 1):
            edges = item["edges"] if isinstance(item, dict) else item
            label = item.get("id", i) if isinstance(item, dict) else i
            out.append(_cycle(g, edges, label))
        return out
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line[0].isalpha() and not _LABEL.match(line):
            continue
        match = _LABEL.match(line)
        label = int(match.group(1)) if match else len(out) + 1
        body = line[match.end():] if match else line
        body = body.split("<->")[0]
        ids = [int(x) for x in re.findall(r"\d+", body)]
        if not ids:
            raise GraphError(f"line {lineno}: no edge ids")
        out.append(_cycle(g, ids, label, lineno))
    return out


def _cycle(g: Graph, ids, label: int, lineno: int | None = None) -> Cycle:
    where = f"line {lineno}: " if lineno else ""
    if any(e < 1 or e > g.m for e in ids):
        raise GraphError(f"{where}edge id out of range 1..{g.m}")
    try:
        return cycle_from_edges(g, [e - 1 for e in ids], label)
    except GraphError as exc:
        raise GraphError(f"{where}{exc}") from None


def load_cycles(path: str | Path, g: Graph) -> list[Cycle]:
    return read_cycles(Path(path).read_text(encoding="utf-8"), g)


@dataclass
class Run:
    """Lazily computed pipeline stages with their JSON sections."""

    g: Graph
    options: Options = field(default_factory=Options)
    pool: list[Cycle] | None = None
    pool_source: str = "isometric"
    counters: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    _bases: list[BasisCandidate] | None = None
    _basis_info: dict | None = None
    _planes: list[PlaneConfiguration] | None = None

    def _timed(self, name: str, fn):
        start = time.perf_counter()
        out = fn()
        self.timings[name] = round(time.perf_counter() - start, 6)
        return out

    def graph_section(self) -> dict:
        report = validate_nonseparable(self.g)
        return {
            "vertices": self.g.n,
            "edges": self.g.m,
            "cyclomatic": cyclomatic_number(self.g) if report.connected else None,
            "checks": report.to_json(),
        }

    def cycles(self) -> list[Cycle]:
        if self.pool is None:
            self.pool = self._timed("isometric", lambda: enumerate_isometric_cycles(self.g))
        self.counters["pool_cycles"] = len(self.pool)
        return self.pool

    def cycles_section(self) -> dict:
        pool = self.cycles()
        p = edge_load(pool, self.g.m)
        return {
            "source": self.pool_source,
            "count": len(pool),
            "cycles": [c.to_json() for c in pool],
            "edge_load": p,
            "vertex_load": vertex_load(pool, self.g.n),
            "f_quadratic": f_quadratic(p),
            "f_cubic": f_cubic(p),
        }

    def bases(self) -> list[BasisCandidate]:
        if self._bases is not None:
            return self._bases
        if cyclomatic_number(self.g) < 1:
            raise GraphError("graph has no cycles")
        opts = self.options
        pool = self.cycles()
        if opts.method == "mc":
            mc = self._timed(
                "basis", lambda: monte_carlo_basis(pool, self.g, opts.trials, opts.seed, opts.threads)
            )
            self._bases = mc.ranked[: max(1, opts.candidates)]
            self.counters["mc_trials"] = opts.trials
            self._basis_info = {
                "distinct_bases": len(mc.ranked),
                "zero_F_trials": sum(1 for _, value, _ in mc.log if value == 0),
            }
        elif opts.method == "sd":
            target = cyclomatic_number(self.g)
            exclude = seed_exclusions(pool, opts.pre_exclude_longest, target)
            sd = self._timed(
                "basis",
                lambda: steepest_descent_basis(pool, self.g, exclude, tie_order=opts.tie_order),
            )
            self._bases = [sd.basis]
            self.counters["descent_steps"] = len(sd.steps)
            self._basis_info = {
                "excluded": sd.excluded,
                "initial_F": sd.initial_value,
                "trace": [s.to_json() for s in sd.steps],
                "trace_lines": sd.trace_lines(),
                "zero_pool": None if sd.zero_pool is None else sorted(c.label for c in sd.zero_pool),
            }
        else:
            raise BasisError(f"unknown method {opts.method!r}")
        return self._bases

    def basis_section(self) -> dict:
        best = self.bases()[0]
        out = best.to_json()
        out["edge_load"] = edge_load(best.cycles, self.g.m)
        out.update(self._basis_info or {})
        return out

    def planes(self) -> list[PlaneConfiguration]:
        """Plane configurations of the candidate bases, best first (F, then N_u)."""
        if self._planes is None:

            def run():
                done = [
                    reduce_to_plane(b.cycles, self.g, self.options.count_rim_as_cycle)
                    for b in self.bases()
                ]
                order = sorted(
                    range(len(done)),
                    key=lambda i: (done[i].value, not done[i].sound, done[i].n_removed, i),
                )
                return [done[i] for i in order]

            self._planes = self._timed("planarize", run)
            self.counters["planarize_steps"] = sum(len(p.steps) for p in self._planes)
        return self._planes

    def plane_section(self) -> dict:
        planes = self.planes()
        out = planes[0].to_json()
        out["edge_load"] = edge_load(planes[0].cycles, self.g.m)
        out["candidates"] = [{"N_u": p.n_removed, "F": p.value} for p in planes]
        return out

    def stage3_section(self) -> dict:
        best = self.planes()[0]
        if not best.plane:
            return {"error": "no plane configuration to extend"}
        try:
            res = self._timed(
                "stage3",
                lambda: insert_chords(best.cycles, self.g, best.removed_edges, self.options.exact_chords),
            )
        except EmbeddingError as exc:
            return {"error": str(exc)}
        out = res.to_json()
        out["F"] = f_cubic(edge_load(res.cycles, self.g.m))
        out["checks"] = audit_plane(res.cycles, self.g)
        return out

    def hamilton(self, configs: list[list[Cycle]] | None = None) -> tuple[HamiltonResult, list]:
        if configs is None:
            configs = [p.cycles for p in self.planes() if p.plane]
        if not configs:
            return HamiltonResult("not_found", evidence=None), []
        results, distinct = self._timed(
            "hamilton",
            lambda: enumerate_hamiltonian_variants(configs, self.g, self.options.budget),
        )
        self.counters["hamilton_configurations"] = len(configs)
        found = [r for r in results if r.found]
        if found:
            best = found[0]
        elif all(r.status == "non_hamiltonian_evidence" for r in results):
            best = results[0]
        else:
            best = next(r for r in results if r.status == "not_found")
        return best, distinct


def rotation_section(cycles: list[Cycle], g: Graph) -> dict:
    try:
        rs = rotation_system(cycles, g)
    except EmbeddingError as exc:
        return {"closed": False, "error": str(exc)}
    return {
        "closed": True,
        "rotation": rs.to_json(),
        "faces": [[v + 1 for v in f] for f in rs.faces],
        "euler": g.n - len({e for c in cycles for e in c.edge_list}) + len(rs.faces),
    }


def options_json(opts: Options) -> dict:
    return asdict(opts)
