"""Distinctive sets, the dimensional value, forced vertices, twins and generator checks.

Vertex sets are Python ints used as bitsets (bit ``v`` set means vertex ``v``
is a member); public functions return ``frozenset`` where a caller is likely
to iterate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import InvalidParameterError
from .graph import DistanceMatrix, Graph


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def pair_index(x: int, y: int, n: int) -> int:
    """Position of the pair ``x < y`` in lexicographic pair order."""
    return x * (2 * n - x - 1) // 2 + (y - x - 1)


@dataclass(frozen=True)
class PairProfile:
    """Distinctive set of every unordered pair, in lexicographic pair order."""

    n: int
    pairs: tuple[tuple[int, int], ...]
    masks: tuple[int, ...]

    def distinctive(self, x: int, y: int) -> int:
        if x == y:
            raise InvalidParameterError("distinctive sets are defined for distinct vertices")
        if x > y:
            x, y = y, x
        return self.masks[pair_index(x, y, self.n)]

    def distinctive_set(self, x: int, y: int) -> frozenset[int]:
        return frozenset(members(self.distinctive(x, y)))

    def size(self, x: int, y: int) -> int:
        return popcount(self.distinctive(x, y))

    def sizes(self) -> list[int]:
        return [popcount(m) for m in self.masks]

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return zip(self.pairs, self.masks)


def pair_profile(dm: DistanceMatrix) -> PairProfile:
    n = dm.n
    if n < 2:
        raise InvalidParameterError("pair profiles need at least two vertices")
    dist = np.asarray(dm.dist)
    weights = [1 << z for z in range(n)]
    pairs = tuple(combinations(range(n), 2))
    masks = []
    for x, y in pairs:
        differs = np.flatnonzero(dist[x] != dist[y])
        masks.append(sum(weights[z] for z in differs))
    return PairProfile(n, pairs, tuple(masks))


def dimensional_k(pp: PairProfile) -> int:
    """Largest k admitting a k-metric generator: the smallest distinctive-set size."""
    if pp.n < 2:
        raise InvalidParameterError("the dimensional value is undefined for a single vertex")
    return min(pp.sizes())


def forced_vertices(pp: PairProfile, k: int) -> frozenset[int]:
    """Union of the distinctive sets of size exactly ``k``.

    Only ``k == dimensional_k(pp)`` gives a set contained in every k-metric
    basis; for smaller k no pair has a distinctive set that small and the
    result is empty.
    """
    mask = 0
    for m in pp.masks:
        if popcount(m) == k:
            mask |= m
    return frozenset(members(mask))


class TwinKind(str, Enum):
    SINGLETON = "singleton"
    FALSE_TWIN = "false-twin"
    TRUE_TWIN = "true-twin"


@dataclass(frozen=True)
class TwinClass:
    vertices: tuple[int, ...]
    kind: TwinKind


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[TwinClass, ...]

    def non_singleton(self) -> list[TwinClass]:
        return [c for c in self.classes if c.kind is not TwinKind.SINGLETON]

    def true_twin_classes(self) -> list[TwinClass]:
        return [c for c in self.classes if c.kind is TwinKind.TRUE_TWIN]

    def twin_vertex_count(self) -> int:
        return sum(len(c.vertices) for c in self.non_singleton())

    def all_twins(self) -> bool:
        return all(c.kind is not TwinKind.SINGLETON for c in self.classes)


def are_twins(g: Graph, x: int, y: int) -> bool:
    return g.neighbor_mask(x) == g.neighbor_mask(y) or g.neighbor_mask(x, True) == g.neighbor_mask(y, True)


def twin_partition(g: Graph) -> TwinPartition:
    """Classes of the twin relation. Works on disconnected graphs too."""
    # open and closed neighbourhood equality are each equivalences, and a vertex
    # cannot have both a false twin and a true twin, so grouping by either key suffices
    by_open: dict[int, list[int]] = {}
    by_closed: dict[int, list[int]] = {}
    for v in range(g.n):
        by_open.setdefault(g.neighbor_mask(v), []).append(v)
        by_closed.setdefault(g.neighbor_mask(v, True), []).append(v)
    assigned: dict[int, TwinClass] = {}
    for groups, kind in ((by_open, TwinKind.FALSE_TWIN), (by_closed, TwinKind.TRUE_TWIN)):
        for group in groups.values():
            if len(group) > 1:
                cls = TwinClass(tuple(group), kind)
                for v in group:
                    assigned[v] = cls
    for v in range(g.n):
        assigned.setdefault(v, TwinClass((v,), TwinKind.SINGLETON))
    seen = set()
    classes = []
    for v in range(g.n):
        cls = assigned[v]
        if cls.vertices[0] not in seen:
            seen.add(cls.vertices[0])
            classes.append(cls)
    return TwinPartition(tuple(classes))


@dataclass(frozen=True)
class GeneratorVerdict:
    ok: bool
    witness: Optional[tuple[int, int]] = None
    achieved: Optional[int] = None


def is_k_metric_generator(pp: PairProfile, vertices: Iterable[int], k: int) -> GeneratorVerdict:
    """Check that every pair is distinguished by at least ``k`` members of the set.

    On failure the lexicographically first offending pair and its count are returned.
    """
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    s = mask_of(vertices)
    for pair, m in pp.items():
        count = popcount(s & m)
        if count < k:
            return GeneratorVerdict(False, pair, count)
    return GeneratorVerdict(True)
