"""Graph construction, edge-list/graph6 I/O, BFS distances and structural statistics."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DisconnectedGraphError, GraphFormatError, InvalidParameterError

MAX_DISTANCE_ORDER = 4096
MAX_GRAPH6_ORDER = 62
MAX_CLIQUE_ORDER = 64


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``. Instances are
    immutable and hashable; build them with :meth:`from_edges`.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        require_connected: bool = True,
    ) -> "Graph":
        if n < 1:
            raise GraphFormatError(f"vertex count must be at least 1, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex index out of range in edge ({u}, {v}) for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphFormatError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        g = cls(n, tuple(tuple(sorted(s)) for s in nbrs))
        if require_connected and not g.is_connected():
            raise DisconnectedGraphError(f"graph is disconnected ({g.component_count()} components)")
        return g

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbor_mask(self, v: int, closed: bool = False) -> int:
        mask = 0
        for u in self.adjacency[v]:
            mask |= 1 << u
        if closed:
            mask |= 1 << v
        return mask

    def component_count(self) -> int:
        seen = [False] * self.n
        count = 0
        for s in range(self.n):
            if seen[s]:
                continue
            count += 1
            seen[s] = True
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
        return count

    def is_connected(self) -> bool:
        return self.component_count() == 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidParameterError("relabelling must be a permutation of 0..n-1")
        return Graph.from_edges(
            self.n, [(perm[u], perm[v]) for u, v in self.edges()], require_connected=False
        )


def require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError(
            f"metric operations need a connected graph; this one has {g.component_count()} components"
        )


# ---------------------------------------------------------------------------
# Edge-list format


def parse_edge_list(text: str | bytes, require_connected: bool = True) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format. ``#`` starts a comment."""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"edge list is not ASCII: {exc}") from None
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphFormatError("empty edge list: expected header line 'n m'")

    def ints(lineno: int, parts: list[str]) -> tuple[int, int]:
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {' '.join(parts)!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {' '.join(parts)!r}") from None

    n, m = ints(*rows[0])
    if n < 1 or m < 0:
        raise GraphFormatError(f"line {rows[0][0]}: invalid header n={n} m={m}")
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges but {len(body)} edge lines follow")
    edges = [ints(lineno, parts) for lineno, parts in body]
    return Graph.from_edges(n, edges, require_connected=require_connected)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graph6 (short form only, n <= 62)


def _graph6_bit_order(n: int):
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str | bytes, require_connected: bool = True) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r} at position {pos}")
    if s[0] == "~":
        raise GraphFormatError("graph6 long size form (n > 62) is not supported")
    n = ord(s[0]) - 63
    if n == 0:
        raise GraphFormatError("graph6 string encodes the null graph (n = 0)")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = s[1:]
    if len(payload) < need:
        raise GraphFormatError(f"truncated graph6 bit field: need {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise GraphFormatError(f"graph6 bit field too long: need {need} bytes, got {len(payload)}")
    bits = []
    for ch in payload:
        val = ord(ch) - 63
        bits.extend((val >> (5 - b)) & 1 for b in range(6))
    edges = [e for e, bit in zip(_graph6_bit_order(n), bits) if bit]
    return Graph.from_edges(n, edges, require_connected=require_connected)


def encode_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_ORDER:
        raise InvalidParameterError(f"graph6 short form supports n <= {MAX_GRAPH6_ORDER}, got n={g.n}")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _graph6_bit_order(g.n)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


# ---------------------------------------------------------------------------
# Distances


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances of a connected graph as a read-only uint16 array."""

    n: int
    dist: np.ndarray

    def __getitem__(self, key):
        return self.dist[key]

    @property
    def diameter(self) -> int:
        return int(self.dist.max()) if self.n > 1 else 0


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    if g.n > MAX_DISTANCE_ORDER:
        raise InvalidParameterError(f"distance matrices are capped at n={MAX_DISTANCE_ORDER}, got n={g.n}")
    require_connected(g)
    dist = np.empty((g.n, g.n), dtype=np.uint16)
    for s in range(g.n):
        dist[s] = bfs_distances(g, s)
    dist.flags.writeable = False
    return DistanceMatrix(g.n, dist)


# ---------------------------------------------------------------------------
# Structural statistics


@dataclass(frozen=True)
class StructuralStats:
    n: int
    m: int
    min_degree: int
    max_degree: int
    girth: Optional[int]
    clique_number: int
    diameter: int
    is_path: bool
    is_cycle: bool
    is_tree: bool

    @property
    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or ``None`` for a forest."""
    best: Optional[int] = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def max_clique(g: Graph) -> list[int]:
    """Exact maximum clique by branch and bound over neighbour bitsets.

    Returns the clique as a sorted vertex list. Bounded by greedy colouring of
    the candidate set (Tomita-style); limited to ``n <= 64``.
    """
    if g.n > MAX_CLIQUE_ORDER:
        raise InvalidParameterError(f"clique solver is limited to n <= {MAX_CLIQUE_ORDER}, got n={g.n}")
    nbr = [g.neighbor_mask(v) for v in range(g.n)]
    best: list[int] = [0] if g.n else []
    best_size = len(best)

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        # greedy sequential colouring; returns (vertex, colour) in colour order
        out = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v)
                avail &= ~nbr[v]
                rest &= ~(1 << v)
                out.append((v, colour))
        return out

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best, best_size
        for v, colour in reversed(colour_bound(cand)):
            if len(clique) + colour <= best_size:
                return
            clique.append(v)
            sub = cand & nbr[v]
            if sub:
                expand(clique, sub)
            elif len(clique) > best_size:
                best, best_size = sorted(clique), len(clique)
            clique.pop()
            cand &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return best


def structural_stats(g: Graph, dm: Optional[DistanceMatrix] = None) -> StructuralStats:
    if dm is None:
        dm = all_pairs_distances(g)
    degrees = [g.degree(v) for v in range(g.n)]
    m = g.m
    is_tree = m == g.n - 1
    is_path = is_tree and max(degrees) <= 2
    is_cycle = g.n >= 3 and m == g.n and all(d == 2 for d in degrees)
    return StructuralStats(
        n=g.n,
        m=m,
        min_degree=min(degrees),
        max_degree=max(degrees),
        girth=girth(g),
        clique_number=len(max_clique(g)),
        diameter=dm.diameter,
        is_path=is_path,
        is_cycle=is_cycle,
        is_tree=is_tree,
    )
