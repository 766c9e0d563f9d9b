"""Exact k-metric dimension by set-multicover branch and bound.

Every pair ``(x, y)`` becomes a covering constraint ``|S & D(x, y)| >= k``.
The search deepens on the basis size starting from the best available lower
bound. Each level first runs a feasibility search with vertices ordered by how
many constraints they touch; at the first feasible level a second search in
plain index order returns the lexicographically least basis of that size.
"""

from __future__ import annotations

import os
from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Iterator, Optional, Sequence

from .branches import BranchStructure, branch_structure, contribution_total
from .errors import InvalidParameterError, NoGeneratorError, SolverLimitError
from .graph import DistanceMatrix, Graph, all_pairs_distances, require_connected
from .kernel import (
    PairProfile,
    TwinPartition,
    dimensional_k,
    forced_vertices,
    mask_of,
    members,
    pair_profile,
    popcount,
    twin_partition,
)

DEFAULT_MAX_N = 24
# below this order the process-pool start-up costs more than the search
PARALLEL_MIN_N = 16


def default_threads() -> int:
    env = os.environ.get("KMETRIC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass(frozen=True)
class GraphAnalysis:
    """Everything the solver and the bounds derive from a connected graph."""

    graph: Graph
    dm: DistanceMatrix
    pp: PairProfile
    k_max: int
    branches: BranchStructure
    twins: TwinPartition
    is_path: bool

    @classmethod
    def of(cls, g: Graph) -> "GraphAnalysis":
        require_connected(g)
        if g.n < 2:
            raise InvalidParameterError("the k-metric dimension needs at least two vertices")
        dm = all_pairs_distances(g)
        pp = pair_profile(dm)
        return cls(
            graph=g,
            dm=dm,
            pp=pp,
            k_max=dimensional_k(pp),
            branches=branch_structure(g, dm),
            twins=twin_partition(g),
            is_path=g.m == g.n - 1 and all(g.degree(v) <= 2 for v in range(g.n)),
        )


@dataclass(frozen=True)
class SolveReport:
    k: int
    dim_k: int
    basis: tuple[int, ...]
    nodes_explored: int
    lower_bound_used: int
    forced_count: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["basis"] = list(self.basis)
        return d


@dataclass(frozen=True)
class DimProfile:
    k_max: int
    dims: tuple[int, ...]

    def dim(self, r: int) -> int:
        return self.dims[r - 1]


def lower_bounds(g: Graph, r: int, analysis: Optional[GraphAnalysis] = None) -> dict[str, int]:
    """Every lower bound on dim_r that applies, keyed by name."""
    a = analysis or GraphAnalysis.of(g)
    out = {"cardinality": r}
    if not a.is_path:
        out["not_a_path"] = r + 1
    if a.branches.majors:
        out["leg_contributions"] = contribution_total(a.branches, r)
    if r == 2:
        out["terminal_total"] = a.branches.terminal_total
        out["twin_classes"] = a.twins.twin_vertex_count()
    if r == 3 and a.k_max >= 3:
        out["terminal_total_r3"] = 2 * a.branches.terminal_total - len(a.branches.majors)
    if r == a.k_max:
        out["forced_set"] = len(forced_vertices(a.pp, r))
    return out


def lower_bound(g: Graph, r: int, analysis: Optional[GraphAnalysis] = None) -> int:
    if r < 1:
        raise InvalidParameterError(f"r must be positive, got {r}")
    return max(lower_bounds(g, r, analysis).values())


# ---------------------------------------------------------------------------
# Search core (module-level so worker processes can import it)

Constraint = tuple[int, int]  # (candidate mask, still-needed count)


def reduce_constraints(pp: PairProfile, k: int, forced: int) -> list[Constraint]:
    """Residual constraints after seeding ``forced``, with dominated ones dropped.

    ``(d1, n1)`` dominates ``(d2, n2)`` when ``d1`` is a subset of ``d2`` and
    ``n1 >= n2``: covering the first covers the second.
    """
    best: dict[int, int] = {}
    for m in pp.masks:
        need = k - popcount(m & forced)
        if need <= 0:
            continue
        dom = m & ~forced
        if best.get(dom, 0) < need:
            best[dom] = need
    kept: list[Constraint] = []
    for dom, need in sorted(best.items(), key=lambda t: (popcount(t[0]), -t[1], t[0])):
        if not any(kn >= need and kd & ~dom == 0 for kd, kn in kept):
            kept.append((dom, need))
    kept.sort(key=lambda t: (popcount(t[0]) - t[1], t[0]))
    return kept


def _suffix_masks(order: Sequence[int]) -> list[int]:
    suffix = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << order[i])
    return suffix


def _evaluate(constraints: Sequence[Constraint], chosen: int, budget: int, avail: int) -> Optional[int]:
    """Union of unsatisfied constraint masks, 0 when all hold, ``None`` when pruned."""
    open_union = 0
    for dom, need in constraints:
        miss = need - popcount(chosen & dom)
        if miss > 0:
            if miss > budget or popcount(dom & avail) < miss:
                return None
            open_union |= dom
    return open_union


def _next_useful(order: Sequence[int], i: int, open_union: int) -> int:
    while i < len(order) and not (open_union >> order[i]) & 1:
        i += 1
    return i


def search_subtree(
    constraints: Sequence[Constraint], order: Sequence[int], i: int, chosen: int, budget: int
) -> tuple[Optional[int], int]:
    """Depth-first include-before-exclude search; returns (solution mask or None, nodes)."""
    suffix = _suffix_masks(order)
    nodes = 0

    def dfs(i: int, chosen: int, budget: int) -> Optional[int]:
        nonlocal nodes
        nodes += 1
        open_union = _evaluate(constraints, chosen, budget, suffix[i])
        if open_union is None:
            return None
        if open_union == 0:
            return chosen
        j = _next_useful(order, i, open_union)
        if j == len(order) or budget == 0:
            return None
        v = order[j]
        found = dfs(j + 1, chosen | (1 << v), budget - 1)
        if found is not None:
            return found
        return dfs(j + 1, chosen, budget)

    return dfs(i, chosen, budget), nodes


def _search_task(args) -> tuple[Optional[int], int]:
    return search_subtree(*args)


def _split_root(
    constraints: Sequence[Constraint], order: Sequence[int], chosen: int, budget: int
) -> tuple[Optional[int], list[tuple], int]:
    """Unroll the exclude chain at the root into independent include subtrees.

    Running the returned tasks in order and stopping at the first success
    visits exactly the nodes the plain recursion would. Returns
    ``(solution-at-root, tasks, chain_nodes)``.
    """
    suffix = _suffix_masks(order)
    tasks = []
    i = 0
    chain_nodes = 0
    while True:
        chain_nodes += 1
        open_union = _evaluate(constraints, chosen, budget, suffix[i])
        if open_union is None:
            break
        if open_union == 0:
            return chosen, [], chain_nodes
        j = _next_useful(order, i, open_union)
        if j == len(order) or budget == 0:
            break
        tasks.append((constraints, order, j + 1, chosen | (1 << order[j]), budget - 1))
        i = j + 1
    return None, tasks, chain_nodes


def run_split_search(
    constraints: Sequence[Constraint],
    order: Sequence[int],
    chosen: int,
    budget: int,
    executor: Optional[Executor] = None,
) -> tuple[Optional[int], int]:
    """Search with the root split into subtrees, optionally run on an executor.

    The answer and the node count do not depend on whether an executor is
    used or how many workers it has.
    """
    at_root, tasks, chain_nodes = _split_root(constraints, order, chosen, budget)
    if at_root is not None:
        return at_root, chain_nodes
    nodes = 0
    if executor is None or len(tasks) < 2:
        for t, task in enumerate(tasks):
            found, sub = _search_task(task)
            nodes += sub
            if found is not None:
                return found, nodes + t + 1
        return None, nodes + chain_nodes
    futures = [executor.submit(_search_task, task) for task in tasks]
    try:
        for t, fut in enumerate(futures):
            found, sub = fut.result()
            nodes += sub
            if found is not None:
                return found, nodes + t + 1
    finally:
        for fut in futures:
            fut.cancel()
    return None, nodes + chain_nodes


@contextmanager
def solver_pool(threads: int, n: int = PARALLEL_MIN_N, min_n: int = PARALLEL_MIN_N) -> Iterator[Optional[Executor]]:
    """Process pool when parallel search pays off, otherwise ``None``."""
    if threads <= 1 or n < min_n:
        yield None
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield pool


def _check_guard(g: Graph, max_n: int) -> None:
    if g.n > max_n:
        hint = ""
        if g.m == g.n - 1:
            hint = "; the input is a tree, use the closed-form tree formulas (tree-dim) instead"
        raise SolverLimitError(f"exact search is limited to n <= {max_n}, got n={g.n}{hint}")


def dim_k_exact(
    g: Graph,
    k: int,
    *,
    max_n: int = DEFAULT_MAX_N,
    threads: int = 1,
    executor: Optional[Executor] = None,
    start_at: Optional[int] = None,
    analysis: Optional[GraphAnalysis] = None,
    parallel_min_n: int = PARALLEL_MIN_N,
) -> SolveReport:
    """Exact k-metric dimension and the lexicographically least k-metric basis."""
    _check_guard(g, max_n)
    a = analysis or GraphAnalysis.of(g)
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    if k > a.k_max:
        raise NoGeneratorError(
            f"no {k}-metric generator exists: the graph is {a.k_max}-metric dimensional"
        )
    if executor is None and threads > 1 and g.n >= parallel_min_n:
        with solver_pool(threads, g.n, parallel_min_n) as pool:
            return dim_k_exact(g, k, max_n=max_n, executor=pool, start_at=start_at, analysis=a)

    forced = mask_of(forced_vertices(a.pp, k)) if k == a.k_max else 0
    n_forced = popcount(forced)
    constraints = reduce_constraints(a.pp, k, forced)
    free = [v for v in range(g.n) if not (forced >> v) & 1]
    freq = {v: sum(1 for dom, _ in constraints if (dom >> v) & 1) for v in free}
    by_frequency = sorted(free, key=lambda v: (-freq[v], v))

    start = max(lower_bound(g, k, a), n_forced, start_at or 0)
    nodes = 0
    for size in range(start, g.n + 1):
        found, sub = run_split_search(constraints, by_frequency, forced, size - n_forced, executor)
        nodes += sub
        if found is None:
            continue
        canonical, sub = run_split_search(constraints, free, forced, size - n_forced, executor)
        nodes += sub
        assert canonical is not None
        return SolveReport(
            k=k,
            dim_k=popcount(canonical),
            basis=tuple(members(canonical)),
            nodes_explored=nodes,
            lower_bound_used=start,
            forced_count=n_forced,
        )
    raise AssertionError("the full vertex set is always a generator for k <= k_max")


def dim_profile(
    g: Graph,
    *,
    max_n: int = DEFAULT_MAX_N,
    threads: int = 1,
    executor: Optional[Executor] = None,
    parallel_min_n: int = PARALLEL_MIN_N,
) -> tuple[DimProfile, list[SolveReport]]:
    """dim_r for every r up to the dimensional value.

    Monotony lets each level start one above the previous optimum.
    """
    _check_guard(g, max_n)
    a = GraphAnalysis.of(g)
    reports: list[SolveReport] = []
    with (
        solver_pool(threads, g.n, parallel_min_n) if executor is None else _passthrough(executor)
    ) as pool:
        prev = 0
        for r in range(1, a.k_max + 1):
            rep = dim_k_exact(
                g, r, max_n=max_n, executor=pool, start_at=prev + 1, analysis=a,
                parallel_min_n=parallel_min_n,
            )
            reports.append(rep)
            prev = rep.dim_k
    return DimProfile(a.k_max, tuple(rep.dim_k for rep in reports)), reports


@contextmanager
def _passthrough(executor: Executor) -> Iterator[Executor]:
    yield executor
