"""Isomorph-free generation of small graphs and the exhaustive theorem sweep."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from pathlib import Path
from typing import Iterator, Optional

from .bisplit import BisplitPartition, find_max_partition
from .graph import CANON_BOUND, Graph, bits, canonical_form, is_connected, parse_graph6, to_graph6
from .lines import Fails, has_dbe_property

THEOREM_ONLY, FULL_PROOF = "theorem_only", "full_proof"
MAX_SWEEP_N = CANON_BOUND


def _check_n(n: int, lo: int, hi: int, what: str) -> None:
    if not lo <= n <= hi:
        raise ValueError(f"{what}: n must be in [{lo}, {hi}], got {n}")


def gen_bisplit_witnessed(n: int) -> Iterator[tuple[Graph, BisplitPartition]]:
    """One (graph, construction partition) per isomorphism class of connected
    bisplit graphs with a witness partition whose Y and Z are both nonempty.

    Vertices 0..|X|-1 form X, then Y, then Z. Y-Z is complete, X is stable by
    construction, and each X vertex picks a nonempty neighbourhood in Y u Z.
    Since X vertices are interchangeable the neighbourhoods are chosen as a
    multiset, and |Y| <= |Z| by symmetry.
    """
    _check_n(n, 2, MAX_SWEEP_N, "gen_bisplit_graphs")
    seen: set[bytes] = set()
    for nx in range(n - 1):
        rest = n - nx
        for ny in range(1, rest // 2 + 1):
            nz = rest - ny
            ymask = ((1 << ny) - 1) << nx
            zmask = ((1 << nz) - 1) << (nx + ny)
            core = [0] * n
            for y in bits(ymask):
                core[y] |= zmask
            for z in bits(zmask):
                core[z] |= ymask
            choices = range(1, 1 << rest)
            for nbhds in combinations_with_replacement(choices, nx):
                adj = list(core)
                for x, code in enumerate(nbhds):
                    nb = code << nx
                    adj[x] = nb
                    for w in bits(nb):
                        adj[w] |= 1 << x
                g = Graph(n, tuple(adj))
                key = canonical_form(g)
                if key in seen:
                    continue
                seen.add(key)
                yield g, BisplitPartition.from_masks((1 << nx) - 1, ymask, zmask)


def gen_bisplit_graphs(n: int) -> Iterator[Graph]:
    for g, _ in gen_bisplit_witnessed(n):
        yield g


def _extend(n: int, parents, allowed) -> Iterator[Graph]:
    """Add vertex n-1 to each parent with every admissible nonempty neighbourhood.

    Every connected graph has a vertex whose removal leaves it connected, so
    extending all connected (n-1)-vertex classes reaches every n-vertex class.
    """
    seen: set[bytes] = set()
    for parent in parents:
        for nb in allowed(parent):
            adj = list(parent.adj) + [nb]
            for w in bits(nb):
                adj[w] |= 1 << (n - 1)
            g = Graph(n, tuple(adj))
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                yield g


def gen_all_connected_graphs(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs."""
    _check_n(n, 2, 7, "gen_all_connected_graphs")
    level = [Graph(1, (0,))]
    for k in range(2, n + 1):
        level = list(_extend(k, level, lambda p: range(1, 1 << p.n)))
    yield from level


def _bipartite_neighbourhoods(p: Graph) -> Iterator[int]:
    side = [0] * p.n
    side_mask = [0, 0]
    stack, seen = [0], 1
    while stack:
        u = stack.pop()
        side_mask[side[u]] |= 1 << u
        for w in bits(p.adj[u] & ~seen):
            seen |= 1 << w
            side[w] = 1 - side[u]
            stack.append(w)
    for s in side_mask:
        sub = s
        while sub:
            yield sub
            sub = (sub - 1) & s


def gen_connected_bipartite_graphs(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected bipartite graphs."""
    _check_n(n, 2, MAX_SWEEP_N, "gen_connected_bipartite_graphs")
    level = [Graph(1, (0,))]
    for k in range(2, n + 1):
        level = list(_extend(k, level, _bipartite_neighbourhoods))
    yield from level


def gen_by_filtering(n: int, keep=lambda g: True) -> list[Graph]:
    """Brute force over all labeled graphs; used to cross-check the generators."""
    pairs = list(combinations(range(n), 2))
    seen: dict[bytes, Graph] = {}
    for code in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if code >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        g = Graph(n, tuple(adj))
        if not is_connected(g) or not keep(g):
            continue
        seen.setdefault(canonical_form(g), g)
    return list(seen.values())


# ----------------------------------------------------------------------
# Sweep
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    max_n: int = 8
    mode: str = THEOREM_ONLY
    workers: int = 1
    output: Optional[str] = None
    graph6_dir: Optional[str] = None

    def __post_init__(self) -> None:
        _check_n(self.max_n, 2, MAX_SWEEP_N, "SweepConfig.max_n")
        if self.mode not in (THEOREM_ONLY, FULL_PROOF):
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass
class NTally:
    graphs: int = 0
    verdicts: Counter = field(default_factory=Counter)
    proof: Counter = field(default_factory=Counter)
    branches: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        return {"graphs": self.graphs, "verdicts": dict(sorted(self.verdicts.items())),
                "proof": dict(sorted(self.proof.items())),
                "branches": dict(sorted(self.branches.items()))}


@dataclass
class SweepReport:
    max_n: int
    mode: str
    per_n: dict[int, NTally] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)
    mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.mismatches

    @property
    def total(self) -> int:
        return sum(t.graphs for t in self.per_n.values())

    def to_json(self) -> dict:
        return {"max_n": self.max_n, "mode": self.mode,
                "per_n": {str(n): t.to_json() for n, t in sorted(self.per_n.items())},
                "total": self.total, "counterexamples": self.counterexamples,
                "mismatches": self.mismatches, "ok": self.ok}

    @classmethod
    def from_json(cls, data: dict) -> "SweepReport":
        report = cls(data["max_n"], data["mode"],
                     counterexamples=list(data["counterexamples"]),
                     mismatches=list(data["mismatches"]))
        for n, t in data["per_n"].items():
            report.per_n[int(n)] = NTally(t["graphs"], Counter(t["verdicts"]),
                                          Counter(t["proof"]), Counter(t["branches"]))
        return report


_REDUCTIONS = {"bipartite", "bridge", "one_two_metric"}


def _check_one(job: tuple[str, str]) -> dict:
    mode, code = job
    g = parse_graph6(code)
    verdict = has_dbe_property(g)
    out = {"graph6": code, "verdict": verdict.to_json()}
    if mode == FULL_PROOF:
        from .proof import verify_proof_on_graph

        report = verify_proof_on_graph(g)
        out["status"] = report.status
        out["branch"] = report.branch.split(":")[0]
        out["mismatches"] = report.mismatches
    return out


def _aggregate(report: SweepReport, n: int, results: list[dict]) -> None:
    tally = report.per_n.setdefault(n, NTally())
    for res in results:
        tally.graphs += 1
        tally.verdicts[res["verdict"]["kind"]] += 1
        if res["verdict"]["kind"] == Fails.kind:
            report.counterexamples.append({"n": n, "graph6": res["graph6"],
                                           "lines": res["verdict"]["count"]})
        if "status" in res:
            tally.branches[res["branch"]] += 1
            if res["mismatches"]:
                tally.proof["mismatch"] += 1
                report.mismatches.append({"n": n, "graph6": res["graph6"],
                                          "failed": res["mismatches"]})
            elif res["branch"] in _REDUCTIONS:
                tally.proof["vacuous"] += 1
            else:
                tally.proof["pass"] += 1


def dump_graph6(graphs, path) -> None:
    Path(path).write_text("".join(to_graph6(g) + "\n" for g in graphs))


def verify_theorem(cfg: SweepConfig) -> SweepReport:
    """Check every connected bisplit graph with 2..max_n vertices.

    Results are aggregated in generation order, so the report does not depend
    on the number of workers.
    """
    report = SweepReport(cfg.max_n, cfg.mode)
    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        for n in range(2, cfg.max_n + 1):
            graphs = list(gen_bisplit_graphs(n))
            if cfg.graph6_dir:
                Path(cfg.graph6_dir).mkdir(parents=True, exist_ok=True)
                dump_graph6(graphs, Path(cfg.graph6_dir) / f"bisplit-n{n}.g6")
            jobs = [(cfg.mode, to_graph6(g)) for g in graphs]
            if pool is None:
                results = [_check_one(j) for j in jobs]
            else:
                results = list(pool.map(_check_one, jobs, chunksize=32))
            _aggregate(report, n, results)
    finally:
        if pool is not None:
            pool.shutdown()
    if cfg.output:
        Path(cfg.output).write_text(json.dumps(report.to_json(), indent=2) + "\n")
    return report


def is_bisplit_with_sides(g: Graph) -> bool:
    p = find_max_partition(g)
    return p is not None and bool(p.Y) and bool(p.Z)


__all__ = [
    "SweepConfig", "SweepReport", "NTally", "verify_theorem",
    "gen_bisplit_graphs", "gen_bisplit_witnessed", "gen_all_connected_graphs",
    "gen_connected_bipartite_graphs", "gen_by_filtering", "dump_graph6",
    "is_bisplit_with_sides",
]
