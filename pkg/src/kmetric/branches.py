"""Legs hanging off exterior major vertices, the bounds built from them, and the tree formulas.

A *major* vertex has degree at least three. A leaf is a *terminal* of a
major ``w`` when it is strictly closer to ``w`` than to every other major;
a leaf tied between two majors belongs to neither. Only majors with at least
two terminals are recorded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidParameterError
from .graph import DistanceMatrix, Graph, all_pairs_distances, require_connected


@dataclass(frozen=True)
class Leg:
    leaf: int
    path: tuple[int, ...]  # leaf first, major last

    @property
    def length(self) -> int:
        return len(self.path) - 1


@dataclass(frozen=True)
class MajorBranch:
    vertex: int
    legs: tuple[Leg, ...]  # sorted by (length, leaf); legs[0] is the designated shortest leg

    @property
    def terminal_degree(self) -> int:
        return len(self.legs)

    @property
    def shortest_leg(self) -> int:
        return self.legs[0].length

    @property
    def shortest_leg_pair(self) -> int:
        return self.legs[0].length + self.legs[1].length


@dataclass(frozen=True)
class BranchStructure:
    majors: tuple[MajorBranch, ...]

    @property
    def shortest_leg_pair(self) -> Optional[int]:
        """Minimum over recorded majors of the two shortest legs' total length."""
        if not self.majors:
            return None
        return min(w.shortest_leg_pair for w in self.majors)

    @property
    def terminal_total(self) -> int:
        return sum(w.terminal_degree for w in self.majors)

    def to_dict(self) -> dict:
        return {
            "majors": [
                {
                    "vertex": w.vertex,
                    "terminal_degree": w.terminal_degree,
                    "shortest_leg": w.shortest_leg,
                    "shortest_leg_pair": w.shortest_leg_pair,
                    "legs": [{"leaf": leg.leaf, "length": leg.length, "path": list(leg.path)} for leg in w.legs],
                }
                for w in self.majors
            ],
            "shortest_leg_pair": self.shortest_leg_pair,
            "terminal_total": self.terminal_total,
        }


def _shortest_path(g: Graph, dm: DistanceMatrix, src: int, dst: int) -> tuple[int, ...]:
    path = [src]
    cur = src
    while cur != dst:
        cur = min(w for w in g.adjacency[cur] if dm[w, dst] + 1 == dm[cur, dst])
        path.append(cur)
    return tuple(path)


def branch_structure(g: Graph, dm: Optional[DistanceMatrix] = None) -> BranchStructure:
    require_connected(g)
    if dm is None:
        dm = all_pairs_distances(g)
    majors = [v for v in range(g.n) if g.degree(v) >= 3]
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    terminals: dict[int, list[int]] = {w: [] for w in majors}
    for u in leaves:
        if not majors:
            break
        ranked = sorted(majors, key=lambda w: (int(dm[u, w]), w))
        if len(ranked) == 1 or dm[u, ranked[0]] < dm[u, ranked[1]]:
            terminals[ranked[0]].append(u)
    records = []
    for w in majors:
        if len(terminals[w]) < 2:
            continue
        legs = sorted(
            (Leg(u, _shortest_path(g, dm, u, w)) for u in terminals[w]),
            key=lambda leg: (leg.length, leg.leaf),
        )
        records.append(MajorBranch(w, tuple(legs)))
    return BranchStructure(tuple(records))


def major_contribution(w: MajorBranch, r: int) -> int:
    """Vertices of ``w``'s legs any r-metric generator must contain.

    Lower bound on a general graph, exact contribution on a tree.
    """
    if w.terminal_degree < 2:
        raise InvalidParameterError(f"major {w.vertex} has terminal degree {w.terminal_degree} < 2")
    if r < 1:
        raise InvalidParameterError(f"r must be positive, got {r}")
    ter, short = w.terminal_degree, w.shortest_leg
    half_down, half_up = r // 2, (r + 1) // 2
    if short <= half_down:
        return (ter - 1) * (r - short) + short
    return (ter - 1) * half_up + half_down


def contribution_total(bs: BranchStructure, r: int) -> int:
    return sum(major_contribution(w, r) for w in bs.majors)


# ---------------------------------------------------------------------------
# Trees and paths


def _require_tree(t: Graph) -> None:
    require_connected(t)
    if t.m != t.n - 1:
        raise InvalidParameterError("input is not a tree")


def _is_path(t: Graph) -> bool:
    return t.m == t.n - 1 and all(t.degree(v) <= 2 for v in range(t.n))


def dim_k_path(n: int, k: int) -> int:
    """k-metric dimension of the path on ``n`` vertices."""
    if n < 2:
        raise InvalidParameterError(f"paths need n >= 2, got {n}")
    kmax = 2 if n == 2 else n - 1
    if not 1 <= k <= kmax:
        raise InvalidParameterError(f"P_{n} is {kmax}-metric dimensional; no {k}-metric generator exists")
    return k if k <= 2 else k + 1


def path_basis(n: int, k: int) -> list[int]:
    """Positions along the path: one end for k = 1, both ends for k = 2, and for
    k >= 3 (where every (k+1)-set works) the far end plus the first k positions."""
    size = dim_k_path(n, k)
    if size == 1:
        return [0]
    return list(range(size - 1)) + [n - 1]


def tree_dimensional_k(t: Graph) -> int:
    _require_tree(t)
    if _is_path(t):
        raise InvalidParameterError("input is a path; use dim_k_path (P_n is (n-1)-metric dimensional)")
    return branch_structure(t).shortest_leg_pair


@dataclass(frozen=True)
class TreeDimension:
    r: int
    dim: int
    basis: tuple[int, ...]


def _leg_prefix(leg: Leg, count: int) -> list[int]:
    return list(leg.path[:count])


def dim_r_tree(t: Graph, r: int) -> TreeDimension:
    """Closed-form r-metric dimension of a tree, with a constructive basis.

    From each recorded major the designated shortest leg contributes
    ``min(l, r//2)`` vertices counted from its leaf and every other leg
    ``r - l`` or ``ceil(r/2)`` vertices, matching :func:`major_contribution`.
    Paths are answered by :func:`dim_k_path`.
    """
    _require_tree(t)
    if _is_path(t):
        basis = path_basis(t.n, r)
        if t.n > 1:
            ends = [v for v in range(t.n) if t.degree(v) == 1]
            order = _path_order(t, ends[0])
            basis = [order[i] for i in basis]
        return TreeDimension(r, len(basis), tuple(sorted(basis)))
    bs = branch_structure(t)
    limit = bs.shortest_leg_pair
    if not 1 <= r <= limit:
        raise InvalidParameterError(f"tree is {limit}-metric dimensional; no {r}-metric generator exists")
    chosen: list[int] = []
    half_down, half_up = r // 2, (r + 1) // 2
    for w in bs.majors:
        short = w.shortest_leg
        first, rest = w.legs[0], w.legs[1:]
        if short <= half_down:
            chosen += _leg_prefix(first, short)
            for leg in rest:
                chosen += _leg_prefix(leg, r - short)
        else:
            chosen += _leg_prefix(first, half_down)
            for leg in rest:
                chosen += _leg_prefix(leg, half_up)
    return TreeDimension(r, contribution_total(bs, r), tuple(sorted(chosen)))


def _path_order(t: Graph, start: int) -> list[int]:
    order = [start]
    prev = -1
    cur = start
    while len(order) < t.n:
        nxt = next(w for w in t.adjacency[cur] if w != prev)
        prev, cur = cur, nxt
        order.append(cur)
    return order
