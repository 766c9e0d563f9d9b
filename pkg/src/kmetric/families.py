"""Deterministic generators for the graph families used by the tests and the auditor."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import DisconnectedGraphError, InvalidParameterError
from .graph import Graph

FAMILIES = (
    "path", "cycle", "complete", "empty", "complete_bipartite", "star", "wheel", "fan",
    "spider", "join", "union", "cartesian_product", "strong_product", "random_tree",
    "generalized_tree", "figure_fixture",
)

# operand graphs of joins/products may be disconnected (e.g. empty graphs)
_OPERATOR_FAMILIES = {"join", "union", "cartesian_product", "strong_product"}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()
    operands: tuple["FamilySpec", ...] = field(default=())
    seed: Optional[int] = None

    def label(self) -> str:
        if self.operands:
            inner = ",".join(op.label() for op in self.operands)
            return f"{self.family}({inner})"
        args = ",".join(str(p) for p in self.params)
        seed = f";seed={self.seed}" if self.seed is not None else ""
        return f"{self.family}({args}{seed})"


# Figure fixtures with 0-based labels (vertex v_i -> i-1).
# Figure 6 is labelled w, u1, u2, u3, v, w', u1', u2', u3' -> 0..8.
FIGURE_EDGES: dict[int, tuple[int, list[tuple[int, int]]]] = {
    1: (5, [(0, 1), (1, 4), (4, 3), (3, 0), (0, 2), (2, 4), (1, 2), (2, 3)]),
    2: (7, [(0, 1), (1, 3), (3, 5), (5, 6), (1, 2), (2, 4)]),
    3: (18, [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
        (7, 8), (8, 2), (2, 11),
        (2, 12), (12, 13), (13, 14), (14, 15), (15, 16),
        (10, 14), (14, 4), (4, 9),
        (3, 13),
        (10, 17),
    ]),
    5: (8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (5, 6), (6, 7), (7, 0)]),
    6: (9, [(3, 2), (2, 0), (0, 4), (4, 5), (5, 7), (7, 8), (0, 1), (5, 6)]),
}


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty(n: int) -> Graph:
    """Edgeless graph; disconnected for n >= 2, meant as a join operand."""
    if n < 1:
        raise InvalidParameterError("empty graph needs n >= 1")
    return Graph.from_edges(n, [], require_connected=False)


def join(g: Graph, h: Graph, require_connected: bool = True) -> Graph:
    off = g.n
    edges = g.edges() + [(u + off, v + off) for u, v in h.edges()]
    edges += [(u, v + off) for u in range(g.n) for v in range(h.n)]
    return Graph.from_edges(g.n + h.n, edges, require_connected=require_connected)


def union(g: Graph, h: Graph) -> Graph:
    off = g.n
    edges = g.edges() + [(u + off, v + off) for u, v in h.edges()]
    return Graph.from_edges(g.n + h.n, edges, require_connected=False)


def complete_bipartite(r: int, s: int) -> Graph:
    if r < 1 or s < 1:
        raise InvalidParameterError("complete bipartite graph needs both parts non-empty")
    return join(empty(r), empty(s))


def star(leaves: int) -> Graph:
    if leaves < 1:
        raise InvalidParameterError("star needs at least one leaf")
    return join(empty(leaves), complete(1))


def wheel(rim: int) -> Graph:
    if rim < 3:
        raise InvalidParameterError("wheel needs at least 3 rim vertices")
    return join(cycle(rim), complete(1))


def fan(n: int) -> Graph:
    if n < 2:
        raise InvalidParameterError("fan needs a path of at least 2 vertices")
    return join(path(n), complete(1))


def spider(*legs: int) -> Graph:
    """Centre 0 with legs laid out consecutively."""
    if not legs or any(length < 1 for length in legs):
        raise InvalidParameterError("spider needs at least one leg, each of length >= 1")
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    n2 = h.n
    edges = []
    for i in range(g.n):
        for j, jj in h.edges():
            edges.append((i * n2 + j, i * n2 + jj))
    for i, ii in g.edges():
        for j in range(n2):
            edges.append((i * n2 + j, ii * n2 + j))
    return Graph.from_edges(g.n * n2, edges, require_connected=False)


def strong_product(g: Graph, h: Graph) -> Graph:
    n2 = h.n
    edges = []
    for i in range(g.n):
        for j, jj in h.edges():
            edges.append((i * n2 + j, i * n2 + jj))
    for i, ii in g.edges():
        for j in range(n2):
            edges.append((i * n2 + j, ii * n2 + j))
        for j, jj in h.edges():
            edges.append((i * n2 + j, ii * n2 + jj))
            edges.append((i * n2 + jj, ii * n2 + j))
    return Graph.from_edges(g.n * n2, edges, require_connected=False)


def prufer_decode(seq: list[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = next(u for u in range(n) if degree[u] == 1)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return edges


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree on ``n`` vertices via a seeded Pruefer sequence."""
    if n < 1:
        raise InvalidParameterError("random tree needs n >= 1")
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Graph.from_edges(n, prufer_decode(seq, n))


def generalized_tree(sizes: tuple[int, ...], seed: int = 0) -> Graph:
    """Block graph: glue ``K_{sizes[i]}`` onto a seeded random vertex of the graph so far."""
    if len(sizes) < 2 or any(s < 2 for s in sizes):
        raise InvalidParameterError("generalized tree needs at least two cliques, each of order >= 2")
    rng = random.Random(seed)
    n = sizes[0]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for s in sizes[1:]:
        anchor = rng.randrange(n)
        block = [anchor] + list(range(n, n + s - 1))
        edges += [(block[i], block[j]) for i in range(s) for j in range(i + 1, s)]
        n += s - 1
    return Graph.from_edges(n, edges)


def figure_fixture(number: int) -> Graph:
    if number not in FIGURE_EDGES:
        raise InvalidParameterError(f"no figure fixture {number}; available: {sorted(FIGURE_EDGES)}")
    n, edges = FIGURE_EDGES[number]
    return Graph.from_edges(n, edges)


def generate(spec: FamilySpec, require_connected: bool = True) -> Graph:
    fam, p = spec.family, spec.params
    if fam not in FAMILIES:
        raise InvalidParameterError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    if fam in _OPERATOR_FAMILIES:
        if len(spec.operands) != 2:
            raise InvalidParameterError(f"{fam} takes exactly two operand graphs")
        g, h = (generate(op, require_connected=False) for op in spec.operands)
        builder = {"join": join, "union": union, "cartesian_product": cartesian_product,
                   "strong_product": strong_product}[fam]
        out = join(g, h, require_connected=False) if fam == "join" else builder(g, h)
    else:
        _arity(spec)
        if fam == "spider":
            out = spider(*p)
        elif fam == "complete_bipartite":
            out = complete_bipartite(*p)
        elif fam == "random_tree":
            out = random_tree(p[0], spec.seed if spec.seed is not None else 0)
        elif fam == "generalized_tree":
            out = generalized_tree(p, spec.seed if spec.seed is not None else 0)
        elif fam == "empty":
            out = empty(p[0])
        else:
            out = {"path": path, "cycle": cycle, "complete": complete, "star": star, "wheel": wheel,
                   "fan": fan, "figure_fixture": figure_fixture}[fam](p[0])
    if require_connected and not out.is_connected():
        raise DisconnectedGraphError(f"{spec.label()} is disconnected")
    return out


def _arity(spec: FamilySpec) -> None:
    fam, p = spec.family, spec.params
    if fam in ("spider", "generalized_tree"):
        if not p:
            raise InvalidParameterError(f"{fam} needs at least one integer parameter")
        return
    want = 2 if fam == "complete_bipartite" else 1
    if len(p) != want:
        raise InvalidParameterError(f"{fam} takes {want} integer parameter(s), got {len(p)}")


def parse_family_token(token: str) -> FamilySpec:
    """Parse an operand token such as ``path:3``, ``complete_bipartite:2,3`` or ``random_tree:8@5``."""
    seed = None
    if "@" in token:
        token, seed_text = token.rsplit("@", 1)
        seed = int(seed_text)
    fam, _, args = token.partition(":")
    params = tuple(int(x) for x in args.split(",")) if args else ()
    return FamilySpec(fam, params, seed=seed)
