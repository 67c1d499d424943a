"""Betweenness, lines and the de Bruijn-Erdos verdict for graph metrics.

Everything here is brute force over the distance matrix and serves as the
ground truth the bisplit-specific checks are compared against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .graph import DistanceMatrix, Graph, GraphError, all_pairs_distances, bits


def _distinct(*vs: int) -> None:
    if len(set(vs)) != len(vs):
        raise GraphError(f"vertices must be pairwise distinct, got {vs}")


def is_between(d: DistanceMatrix, a: int, b: int, c: int) -> bool:
    """True when b lies on a geodesic from a to c."""
    _distinct(a, b, c)
    return d(a, b) + d(b, c) == d(a, c)


def are_collinear(d: DistanceMatrix, a: int, b: int, c: int) -> bool:
    _distinct(a, b, c)
    ab, bc, ac = d(a, b), d(b, c), d(a, c)
    return ab + bc == ac or ab + ac == bc or ac + bc == ab


def line_mask(d: DistanceMatrix, a: int, b: int) -> int:
    """Bitmask of the line through a and b, built from distance spheres."""
    if a == b:
        raise GraphError("a line needs two distinct generators")
    k = d(a, b)
    sa, sb = d.spheres[a], d.spheres[b]
    top = len(sa)
    members = (1 << a) | (1 << b)
    # v between a and b
    for i in range(1, k):
        members |= sa[i] & sb[k - i]
    # b between a and v, or a between b and v
    for j in range(1, top - k):
        members |= sb[j] & sa[k + j]
        members |= sa[j] & sb[k + j]
    return members


@dataclass(frozen=True)
class Line:
    generators: tuple[int, int]
    members: frozenset[int]

    @property
    def mask(self) -> int:
        m = 0
        for v in self.members:
            m |= 1 << v
        return m


def line(d: DistanceMatrix, a: int, b: int) -> Line:
    return Line((min(a, b), max(a, b)), frozenset(bits(line_mask(d, a, b))))


@dataclass(frozen=True)
class LineSet:
    """All lines of a graph metric.

    ``generator_index`` maps every unordered pair (a < b) to the member bitmask;
    ``lines`` holds the distinct member bitmasks.
    """

    n: int
    generator_index: dict[tuple[int, int], int]
    lines: frozenset[int]

    def __len__(self) -> int:
        return len(self.lines)

    def member_sets(self) -> list[frozenset[int]]:
        return sorted((frozenset(bits(m)) for m in self.lines), key=lambda s: (len(s), sorted(s)))

    def universal_pairs(self) -> list[tuple[int, int]]:
        full = (1 << self.n) - 1
        return [p for p, m in self.generator_index.items() if m == full]

    def generators_of(self, mask: int) -> list[tuple[int, int]]:
        return [p for p, m in self.generator_index.items() if m == mask]


def lines_from_distances(d: DistanceMatrix) -> LineSet:
    index = {(a, b): line_mask(d, a, b) for a, b in combinations(range(d.n), 2)}
    return LineSet(d.n, index, frozenset(index.values()))


def all_lines(g: Graph) -> LineSet:
    if g.n < 2:
        raise GraphError("lines need at least two vertices")
    return lines_from_distances(all_pairs_distances(g))


def has_universal_line(g: Graph) -> Optional[tuple[int, int]]:
    if g.n < 2:
        raise GraphError("lines need at least two vertices")
    d = all_pairs_distances(g)
    full = g.full_mask
    for a, b in combinations(range(g.n), 2):
        if line_mask(d, a, b) == full:
            return (a, b)
    return None


@dataclass(frozen=True)
class Universal:
    pair: tuple[int, int]
    kind = "universal"

    def ok(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"kind": self.kind, "pair": list(self.pair)}


@dataclass(frozen=True)
class EnoughLines:
    count: int
    kind = "enough_lines"

    def ok(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"kind": self.kind, "count": self.count}


@dataclass(frozen=True)
class Fails:
    """No universal line and fewer than n lines: a counterexample candidate."""

    count: int
    kind = "fails"

    def ok(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"kind": self.kind, "count": self.count}


Verdict = Union[Universal, EnoughLines, Fails]


def dbe_verdict(lines: LineSet) -> Verdict:
    universal = lines.universal_pairs()
    if universal:
        return Universal(min(universal))
    if len(lines) >= lines.n:
        return EnoughLines(len(lines))
    return Fails(len(lines))


def has_dbe_property(g: Graph) -> Verdict:
    return dbe_verdict(all_lines(g))


def tight_triples(max_d: int) -> set[tuple[int, int, int]]:
    """Sorted distance triples (p <= q <= r <= max_d) on which the triangle inequality is tight."""
    if max_d < 1:
        raise ValueError("max_d must be at least 1")
    return {
        (p, q, p + q)
        for p in range(1, max_d + 1)
        for q in range(p, max_d + 1)
        if p + q <= max_d
    }
