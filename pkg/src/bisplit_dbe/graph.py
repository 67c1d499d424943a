"""Simple undirected graphs on vertices 0..n-1, their I/O, and the shortest-path metric.

Vertex sets are handled as integer bitmasks internally (bit v set <=> vertex v
in the set); the public helpers ``bits`` and ``mask_of`` convert both ways.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input or an operation outside its domain."""


class NotConnectedError(GraphError):
    pass


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """An immutable simple graph. ``adj[v]`` is the neighbourhood bitmask of v."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbour out of range")
            if nb >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric on ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree(v) for v in range(self.n)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex v renamed to perm[v]."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced_is_stable(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ----------------------------------------------------------------------
# Edge-list text format
# ----------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: a header ``n m`` then m lines ``u v``.

    Lines whose first non-blank character is ``#`` and blank lines are skipped.
    Duplicate edges are collapsed.
    """
    header = None
    edges: list[tuple[int, int]] = []
    expected = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}") from None
        if header is None:
            if a < 1 or b < 0:
                raise GraphError(f"line {lineno}: bad header {raw!r}")
            header = (a, b)
            expected = b
            continue
        n = header[0]
        if len(edges) >= expected:
            raise GraphError(f"line {lineno}: more edge lines than the header's m={expected}")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"line {lineno}: vertex index out of range 0..{n - 1}")
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at vertex {a}")
        edges.append((a, b))
    if header is None:
        raise GraphError("missing 'n m' header line")
    if len(edges) != expected:
        raise GraphError(f"header announces {expected} edges but {len(edges)} were given")
    return Graph.from_edges(header[0], edges)


def serialize_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# graph6
# ----------------------------------------------------------------------

def _g6_pairs(n: int) -> Iterator[tuple[int, int]]:
    # column-major upper triangle: (0,1),(0,2),(1,2),(0,3),...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(data: bytes | str) -> Graph:
    """Decode a graph6 string (n <= 62, optional ``>>graph6<<`` header)."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise GraphError("empty graph6 string")
    for ch in data:
        if not 63 <= ch <= 126:
            raise GraphError(f"graph6: byte {ch!r} outside the printable range 63..126")
    n = data[0] - 63
    if n == 63:
        raise GraphError("graph6: only n <= 62 is supported")
    body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6: n={n} needs {need} data bytes, found {len(body)}")
    if n == 0:
        raise GraphError("graph6: empty graph has no vertices")
    bitstream = []
    for ch in body:
        x = ch - 63
        bitstream.extend((x >> k) & 1 for k in range(5, -1, -1))
    edges = [pair for pair, bit in zip(_g6_pairs(n), bitstream) if bit]
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphError("graph6: only n <= 62 is supported")
    bitstream = [1 if g.has_edge(i, j) else 0 for i, j in _g6_pairs(g.n)]
    bitstream += [0] * (-len(bitstream) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bitstream), 6):
        x = 0
        for b in bitstream[k:k + 6]:
            x = x << 1 | b
        out.append(chr(63 + x))
    return "".join(out)


# ----------------------------------------------------------------------
# Metric
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    d: tuple[tuple[int, ...], ...]

    def __call__(self, u: int, v: int) -> int:
        return self.d[u][v]

    @cached_property
    def max_distance(self) -> int:
        return max((max(row) for row in self.d), default=0)

    @cached_property
    def spheres(self) -> tuple[tuple[int, ...], ...]:
        """spheres[u][k] = bitmask of vertices at distance exactly k from u."""
        top = self.max_distance
        out = []
        for row in self.d:
            levels = [0] * (2 * top + 2)
            for v, k in enumerate(row):
                levels[k] |= 1 << v
            out.append(tuple(levels))
        return tuple(out)

    def sphere(self, u: int, k: int) -> int:
        levels = self.spheres[u]
        return levels[k] if 0 <= k < len(levels) else 0


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from source; -1 marks unreachable vertices."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in bits(g.adj[u]):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    rows = []
    for s in range(g.n):
        row = bfs_distances(g, s)
        if -1 in row:
            raise NotConnectedError("graph is not connected")
        rows.append(tuple(row))
    return DistanceMatrix(g.n, tuple(rows))


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == g.full_mask


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in bits(g.adj[u]):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def diameter(g: Graph) -> int:
    return all_pairs_distances(g).max_distance


def bridges(g: Graph) -> list[tuple[int, int]]:
    """Edges whose removal disconnects their component (brute force, n is small)."""
    out = []
    for u, v in g.edges():
        adj = list(g.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        h = Graph(g.n, tuple(adj))
        if bfs_distances(h, u)[v] < 0:
            out.append((u, v))
    return out


# ----------------------------------------------------------------------
# Canonical form
# ----------------------------------------------------------------------

CANON_BOUND = 10


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Split cells until every vertex of a cell sees each cell equally often.

    Splitting and ordering only use counts, so the result is isomorphism-invariant.
    """
    while True:
        masks = [mask_of(c) for c in cells]
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(popcount(g.adj[v] & m) for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        cells = new_cells
        if not changed:
            return cells


def _encode(g: Graph, order: list[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        row = g.adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def canonical_form(g: Graph, bound: int = CANON_BOUND) -> bytes:
    """Bytes identifying the isomorphism class of g.

    The minimum adjacency encoding over all vertex orders reachable by
    individualize-and-refine from the degree partition. Interchangeable twins are
    individualized once, since swapping two twins is an automorphism.
    """
    if g.n > bound:
        raise GraphError(f"canonical_form: n={g.n} exceeds the bound {bound}")
    n = g.n
    best: list[int | None] = [None]

    def twins(u: int, v: int) -> bool:
        return (g.adj[u] & ~(1 << v)) == (g.adj[v] & ~(1 << u))

    def search(cells: list[list[int]]) -> None:
        cells = _refine(g, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code = _encode(g, [c[0] for c in cells])
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        cell = cells[target]
        chosen: list[int] = []
        for v in cell:
            if any(twins(u, v) for u in chosen):
                continue
            chosen.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    degree_cells: dict[int, list[int]] = {}
    for v in range(n):
        degree_cells.setdefault(g.degree(v), []).append(v)
    search([degree_cells[k] for k in sorted(degree_cells)])
    width = (n * (n - 1) // 2 + 7) // 8
    return bytes([n]) + best[0].to_bytes(width, "big")
