"""Bisplit partitions (X, Y, Z), the maximum |Y u Z| search, and the refined classes.

A partition is valid when X, Y and Z are stable and every Y vertex is adjacent
to every Z vertex. The refinement splits X by the side(s) its neighbours lie on
and Y, Z by adjacency to the one-sided part of X.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .graph import DistanceMatrix, Graph, GraphError, all_pairs_distances, bits, mask_of

PARTITION_BOUND = 12


def _fs(vs: Iterable[int]) -> frozenset[int]:
    return frozenset(vs)


@dataclass(frozen=True)
class BisplitPartition:
    X: frozenset[int]
    Y: frozenset[int]
    Z: frozenset[int]

    @classmethod
    def of(cls, X: Iterable[int], Y: Iterable[int], Z: Iterable[int]) -> "BisplitPartition":
        return cls(_fs(X), _fs(Y), _fs(Z))

    @classmethod
    def from_masks(cls, x: int, y: int, z: int) -> "BisplitPartition":
        return cls(_fs(bits(x)), _fs(bits(y)), _fs(bits(z)))

    def mirrored(self) -> "BisplitPartition":
        return BisplitPartition(self.X, self.Z, self.Y)

    def relabel(self, perm: list[int]) -> "BisplitPartition":
        return BisplitPartition.of(
            (perm[v] for v in self.X), (perm[v] for v in self.Y), (perm[v] for v in self.Z)
        )

    def to_json(self) -> dict:
        return {"X": sorted(self.X), "Y": sorted(self.Y), "Z": sorted(self.Z)}


def _check_covers(g: Graph, p: BisplitPartition) -> None:
    parts = (p.X, p.Y, p.Z)
    if sum(map(len, parts)) != g.n or set().union(*parts) != set(range(g.n)):
        raise GraphError("X, Y, Z must be disjoint and cover all vertices")


def validate_partition(g: Graph, p: BisplitPartition) -> bool:
    _check_covers(g, p)
    x, y, z = mask_of(p.X), mask_of(p.Y), mask_of(p.Z)
    if not (g.induced_is_stable(x) and g.induced_is_stable(y) and g.induced_is_stable(z)):
        return False
    return all(g.adj[v] & z == z for v in p.Y)


def find_max_partition(g: Graph, bound: int = PARTITION_BOUND) -> Optional[BisplitPartition]:
    """A valid partition maximizing |Y u Z|, or None.

    Among maximizers, partitions with Y and Z both nonempty come first, then
    the lexicographically smallest sorted Y, then sorted Z. The search assigns
    vertices in index order and cuts a branch as soon as a class stops being
    stable or Y-Z completeness breaks.
    """
    if g.n > bound:
        raise GraphError(f"find_max_partition: n={g.n} exceeds the bound {bound}")
    n, adj = g.n, g.adj
    best: list = [None]  # (key, ymask, zmask)

    def visit(v: int, x: int, y: int, z: int, size: int) -> None:
        if best[0] is not None and size + (n - v) < -best[0][0][0]:
            return
        if v == n:
            key = (-size, not (y and z), bits(y), bits(z))
            if best[0] is None or key < best[0][0]:
                best[0] = (key, y, z)
            return
        nb, bit = adj[v], 1 << v
        if not nb & y and z & ~nb == 0:
            visit(v + 1, x, y | bit, z, size + 1)
        if not nb & z and y & ~nb == 0:
            visit(v + 1, x, y, z | bit, size + 1)
        if not nb & x:
            visit(v + 1, x | bit, y, z, size)

    visit(0, 0, 0, 0, 0)
    if best[0] is None:
        return None
    _, y, z = best[0]
    return BisplitPartition.from_masks(g.full_mask & ~(y | z), y, z)


def has_proper_partition(g: Graph) -> bool:
    """True when some valid partition has both Y and Z nonempty."""
    n, adj = g.n, g.adj

    def visit(v: int, x: int, y: int, z: int) -> bool:
        if v == n:
            return bool(y and z)
        nb, bit = adj[v], 1 << v
        return (
            (not nb & y and z & ~nb == 0 and visit(v + 1, x, y | bit, z))
            or (not nb & z and y & ~nb == 0 and visit(v + 1, x, y, z | bit))
            or (not nb & x and visit(v + 1, x | bit, y, z))
        )

    return visit(0, 0, 0, 0)


CLASS_NAMES = ("Xp", "XY", "XZ", "Y1", "Y2", "Z1", "Z2")


@dataclass(frozen=True)
class RefinedPartition:
    Xp: frozenset[int]
    XY: frozenset[int]
    XZ: frozenset[int]
    Y1: frozenset[int]
    Y2: frozenset[int]
    Z1: frozenset[int]
    Z2: frozenset[int]
    base: BisplitPartition

    @property
    def X(self) -> frozenset[int]:
        return self.base.X

    @property
    def Y(self) -> frozenset[int]:
        return self.base.Y

    @property
    def Z(self) -> frozenset[int]:
        return self.base.Z

    @cached_property
    def masks(self) -> dict[str, int]:
        out = {name: mask_of(getattr(self, name)) for name in CLASS_NAMES}
        out.update(X=mask_of(self.X), Y=mask_of(self.Y), Z=mask_of(self.Z))
        return out

    def mirrored(self) -> "RefinedPartition":
        """Swap the roles of Y and Z (and with them X_Y/X_Z, Y1/Z1, Y2/Z2)."""
        return RefinedPartition(
            Xp=self.Xp, XY=self.XZ, XZ=self.XY,
            Y1=self.Z1, Y2=self.Z2, Z1=self.Y1, Z2=self.Y2,
            base=self.base.mirrored(),
        )

    def to_json(self) -> dict:
        return {name: sorted(getattr(self, name)) for name in CLASS_NAMES}


def refine(g: Graph, p: BisplitPartition) -> RefinedPartition:
    if not validate_partition(g, p):
        raise GraphError("refine: not a valid bisplit partition")
    y, z = mask_of(p.Y), mask_of(p.Z)
    xp, xy, xz = set(), set(), set()
    for v in p.X:
        to_y, to_z = g.adj[v] & y, g.adj[v] & z
        if to_y and to_z:
            xp.add(v)
        elif to_y:
            xy.add(v)
        elif to_z:
            xz.add(v)
        else:
            # isolated vertex; it has no class in a connected graph
            raise GraphError(f"refine: vertex {v} of X has no neighbour in Y or Z")
    xy_mask, xz_mask = mask_of(xy), mask_of(xz)
    y1 = {v for v in p.Y if g.adj[v] & xy_mask}
    z1 = {v for v in p.Z if g.adj[v] & xz_mask}
    return RefinedPartition(
        Xp=_fs(xp), XY=_fs(xy), XZ=_fs(xz),
        Y1=_fs(y1), Y2=p.Y - y1, Z1=_fs(z1), Z2=p.Z - z1,
        base=p,
    )


def check_nofull(g: Graph, r: RefinedPartition) -> bool:
    """True when no X_Y vertex is adjacent to all of Y."""
    y = r.masks["Y"]
    return all(g.adj[v] & y != y for v in r.XY)


# Allowed distances between (or within) refined classes.
DISTANCE_PATTERN: dict[tuple[str, str], frozenset[int]] = {
    ("Xp", "Xp"): frozenset({2, 3}),
    ("XY", "XY"): frozenset({2, 4}),
    ("XZ", "XZ"): frozenset({2, 4}),
    ("Y", "Y"): frozenset({2}),
    ("Z", "Z"): frozenset({2}),
    ("Xp", "Y"): frozenset({1, 2}),
    ("Xp", "Z"): frozenset({1, 2}),
    ("Xp", "XY"): frozenset({2, 3}),
    ("Xp", "XZ"): frozenset({2, 3}),
    ("XY", "Y1"): frozenset({1, 3}),
    ("XY", "Y2"): frozenset({3}),
    ("XY", "Z"): frozenset({2}),
    ("XZ", "Z1"): frozenset({1, 3}),
    ("XZ", "Z2"): frozenset({3}),
    ("XZ", "Y"): frozenset({2}),
    ("XY", "XZ"): frozenset({3}),
    ("Y", "Z"): frozenset({1}),
}


@dataclass(frozen=True)
class PatternViolation:
    u: int
    v: int
    classes: tuple[str, str]
    distance: int
    allowed: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "pair": [self.u, self.v],
            "classes": list(self.classes),
            "distance": self.distance,
            "allowed": list(self.allowed),
        }


def check_distance_pattern(
    g: Graph, r: RefinedPartition, d: Optional[DistanceMatrix] = None
) -> list[PatternViolation]:
    """Every vertex pair whose distance is not allowed by the class table.

    Rows over an empty class are vacuous. With Y or Z empty none of the bounds
    apply (they all route through a Y-Z edge), so the report is empty.
    """
    if not r.Y or not r.Z:
        return []
    if d is None:
        d = all_pairs_distances(g)
    out = []
    for (ca, cb), allowed in DISTANCE_PATTERN.items():
        A, B = getattr(r, ca), getattr(r, cb)
        if ca == cb:
            pairs = combinations(sorted(A), 2)
        else:
            pairs = ((u, v) for u in sorted(A) for v in sorted(B))
        for u, v in pairs:
            if d(u, v) not in allowed:
                out.append(PatternViolation(u, v, (ca, cb), d(u, v), tuple(sorted(allowed))))
    return out
