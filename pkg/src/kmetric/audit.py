"""Check every known bound and characterization against exact values for one graph.

The claim registry is plain data: each :class:`Claim` carries an id, a short
statement and an evaluator. An evaluator returns a string (the reason) when
the claim's hypotheses do not hold, otherwise the two sides and the relation.
"""

from __future__ import annotations

from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Callable, Optional

from . import families
from .branches import BranchStructure, contribution_total, dim_k_path, dim_r_tree
from .errors import SolverLimitError
from .families import FamilySpec
from .graph import Graph, StructuralStats, encode_graph6, structural_stats
from .kernel import (
    TwinKind,
    forced_vertices,
    is_k_metric_generator,
    twin_partition,
)
from .solver import DEFAULT_MAX_N, PARALLEL_MIN_N, GraphAnalysis, dim_profile

RELATIONS = ("<=", ">=", "=", "<=>")


@dataclass(frozen=True)
class Check:
    claim_id: str
    applicable: bool
    lhs: Optional[int]
    rhs: Optional[int]
    relation: str
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "applicable": self.applicable,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "pass": self.passed,
            "note": self.note,
        }


@dataclass(frozen=True)
class AuditContext:
    graph: Graph
    family: Optional[FamilySpec]
    analysis: GraphAnalysis
    stats: StructuralStats
    dims: tuple[int, ...]
    source: str  # "solver" or "closed_form"

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return self.analysis.k_max

    @property
    def branches(self) -> BranchStructure:
        return self.analysis.branches

    def dim(self, r: int) -> int:
        return self.dims[r - 1]

    @property
    def nonpath_tree(self) -> bool:
        return self.stats.is_tree and not self.stats.is_path


Outcome = tuple[Optional[int], Optional[int], str, str]  # lhs, rhs, relation, note
Evaluator = Callable[[AuditContext], "Outcome | str"]


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    evaluate: Evaluator


def _holds(lhs: int, rhs: int, relation: str) -> bool:
    if relation == "<=":
        return lhs <= rhs
    if relation == ">=":
        return lhs >= rhs
    return lhs == rhs  # "=" and "<=>" (both sides are 0/1 truth values)


def _iff(a: bool, b: bool, note: str = "") -> Outcome:
    return int(a), int(b), "<=>", note


# ---------------------------------------------------------------------------
# structural helpers


def cut_vertices(g: Graph) -> set[int]:
    out = set()
    for v in range(g.n):
        rest = [u for u in range(g.n) if u != v]
        if not rest:
            continue
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w != v and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) < len(rest):
            out.add(v)
    return out


def extreme_vertices(g: Graph) -> set[int]:
    """Vertices whose closed neighbourhood induces a complete graph."""
    out = set()
    for v in range(g.n):
        nb = g.adjacency[v]
        if all(g.has_edge(a, b) for i, a in enumerate(nb) for b in nb[i + 1:]):
            out.add(v)
    return out


def _support_with_two_leaves(g: Graph) -> bool:
    return any(sum(1 for u in g.adjacency[v] if g.degree(u) == 1) >= 2 for v in range(g.n))


def _operands(ctx: AuditContext, family: str) -> Optional[tuple[Graph, Graph]]:
    spec = ctx.family
    if spec is None or spec.family != family or len(spec.operands) != 2:
        return None
    g, h = (families.generate(op, require_connected=False) for op in spec.operands)
    return g, h


# ---------------------------------------------------------------------------
# evaluators; a returned string is the reason the claim does not apply


def _k_range(ctx):
    if ctx.n >= 3:
        return ctx.k, ctx.n - 1, "<=", ""
    return ctx.k, ctx.n, "=", "order 2: K2 is n-metric dimensional"


def _k_range_lower(ctx):
    return ctx.k, 2, ">=", ""


def _n_dimensional(ctx):
    return _iff(ctx.k == ctx.n, ctx.n == 2 and ctx.graph.m == 1)


def _dimensional_maximal(ctx):
    everything = range(ctx.n)
    pp = ctx.analysis.pp
    largest = 0
    while is_k_metric_generator(pp, everything, largest + 1).ok:
        largest += 1
    return ctx.k, largest, "=", "largest k for which V itself is a k-metric generator"


def _twins_iff_two(ctx):
    return _iff(ctx.k == 2, bool(ctx.analysis.twins.non_singleton()))


def _tree_support(ctx):
    if not ctx.stats.is_tree or ctx.n < 4:
        return "needs a tree of order >= 4"
    return _iff(ctx.k == 2, _support_with_two_leaves(ctx.graph))


def _generalized_tree(ctx):
    if ctx.family is None or ctx.family.family != "generalized_tree":
        return "only checked on constructed generalized trees"
    g = ctx.graph
    cuts, ext = cut_vertices(g), extreme_vertices(g)
    literal = corrected = False
    for c in cuts:
        nb = [v for v in g.adjacency[c] if v in ext]
        for i, x in enumerate(nb):
            for y in nb[i + 1:]:
                literal = True
                same_block = g.neighbor_mask(x, True) == g.neighbor_mask(y, True)
                if same_block or (g.degree(x) == 1 and g.degree(y) == 1):
                    corrected = True
    return _iff(ctx.k == 2, corrected, f"literal wording (any two extreme neighbours of a cut vertex) gives {int(literal)}")


def _cartesian(ctx):
    ops = _operands(ctx, "cartesian_product")
    if ops is None:
        return "only checked on constructed Cartesian products"
    g, h = ops
    if not (g.is_connected() and h.is_connected()):
        return "factors must be connected"
    small, large = sorted((g.n, h.n))
    if small < 2 or large < 3:
        return "factors need orders >= 2 and >= 3"
    return ctx.k, 3, ">=", ""


def _cycle_parity(ctx):
    if not ctx.stats.is_cycle:
        return "not a cycle"
    return ctx.k, ctx.n - 1 if ctx.n % 2 else ctx.n - 2, "=", "odd: n-1, even: n-2"


def _n_minus_one(ctx):
    if ctx.n < 3:
        return "needs n >= 3"
    s = ctx.stats
    return _iff(ctx.k == ctx.n - 1, s.is_path or (s.is_cycle and ctx.n % 2 == 1))


def _leg_pair_bound(ctx):
    if not ctx.branches.majors:
        return "no exterior major vertex with two terminals"
    return ctx.k, ctx.branches.shortest_leg_pair, "<=", ""


def _clique_bound(ctx):
    if ctx.stats.is_complete:
        return "complete graph"
    return ctx.k, ctx.n - ctx.stats.clique_number + 1, "<=", ""


def girth_bound_value(stats: StructuralStats) -> int:
    delta, big = stats.min_degree, stats.max_degree
    terms = sum((delta - 1) ** i for i in range(stats.girth // 2 - 1))
    return stats.n - 1 - (big - 2) * terms


def _girth_bound(ctx):
    s = ctx.stats
    if s.girth is None or s.min_degree < 2 or s.max_degree < 3 or s.girth < 4:
        return "needs min degree >= 2, max degree >= 3 and girth >= 4"
    return ctx.k, girth_bound_value(s), "<=", ""


def _monotony(ctx):
    steps = sum(1 for a, b in zip(ctx.dims, ctx.dims[1:]) if a < b)
    return steps, ctx.k - 1, "=", "strict increases between consecutive levels"


def _profile_gap(ctx):
    margins = [ctx.dim(r) - (r - 1) for r in range(1, ctx.k + 1)]
    return min(margins), ctx.dim(1), ">=", "min over r of dim_r - (r-1) vs dim_1"


def _profile_below_order(ctx):
    if ctx.k < 2:
        return "needs k >= 2"
    return max(ctx.dims[:-1]), ctx.n - 1, "<=", "max dim_r over r < k"


def _profile_not_path(ctx):
    if ctx.stats.is_path:
        return "graph is a path"
    worst = min(range(1, ctx.k + 1), key=lambda r: (ctx.dim(r) - r, r))
    return ctx.dim(worst), worst + 1, ">=", f"tightest at r={worst}"


def _dim1_path(ctx):
    return _iff(ctx.dim(1) == 1, ctx.stats.is_path)


def _dim2_path(ctx):
    return _iff(ctx.dim(2) == 2, ctx.stats.is_path)


def _forced_bound(ctx):
    return ctx.dim(ctx.k), len(forced_vertices(ctx.analysis.pp, ctx.k)), ">=", ""


def _full_iff_forced(ctx):
    forced = forced_vertices(ctx.analysis.pp, ctx.k)
    return _iff(ctx.dim(ctx.k) == ctx.n, len(forced) == ctx.n)


def _dim2_full(ctx):
    return _iff(ctx.dim(2) == ctx.n, ctx.analysis.twins.all_twins())


def _join(ctx):
    ops = _operands(ctx, "join")
    if ops is None:
        return "only checked on constructed joins"
    g, h = ops
    if g.n < 2 or h.n < 2:
        return "operands must be non-trivial"
    if not (twin_partition(g).all_twins() and twin_partition(h).all_twins()):
        return "not every operand vertex is a twin"
    if ctx.k != 2:
        return ctx.k, 2, "=", "join should be 2-metric dimensional"
    return ctx.dim(2), g.n + h.n, "=", ""


def _twin_classes(ctx):
    return ctx.dim(2), ctx.analysis.twins.twin_vertex_count(), ">=", ""


def _strong(ctx):
    ops = _operands(ctx, "strong_product")
    if ops is None:
        return "only checked on constructed strong products"
    g, h = ops
    if g.n < 2 or h.n < 2 or not (g.is_connected() and h.is_connected()):
        return "factors must be non-trivial and connected"
    bound = 0
    equality = False
    for a, b in ((g, h), (h, g)):
        tp = twin_partition(a)
        bound = max(bound, b.n * sum(len(c.vertices) for c in tp.true_twin_classes()))
        equality |= all(c.kind is TwinKind.TRUE_TWIN for c in tp.classes)
    if equality:
        return ctx.dim(2), g.n * h.n, "=", "a factor consists of true twins"
    return ctx.dim(2), bound, ">=", ""


def _leg_contributions(ctx):
    if not ctx.branches.majors:
        return "no exterior major vertex with two terminals"
    worst = min(range(1, ctx.k + 1), key=lambda r: (ctx.dim(r) - contribution_total(ctx.branches, r), r))
    return ctx.dim(worst), contribution_total(ctx.branches, worst), ">=", f"tightest at r={worst}"


def _terminal_total_r2(ctx):
    return ctx.dim(2), ctx.branches.terminal_total, ">=", ""


def _terminal_total_r3(ctx):
    if ctx.k < 3:
        return "needs k >= 3"
    return ctx.dim(3), 2 * ctx.branches.terminal_total - len(ctx.branches.majors), ">=", ""


def _tree_k(ctx):
    if not ctx.nonpath_tree:
        return "needs a tree that is not a path"
    return ctx.k, ctx.branches.shortest_leg_pair, "=", ""


def _tree_formula(ctx):
    if not ctx.nonpath_tree:
        return "needs a tree that is not a path"
    top = ctx.branches.shortest_leg_pair
    good = 0
    bad = []
    for r in range(1, top + 1):
        witness = dim_r_tree(ctx.graph, r)
        valid = (
            is_k_metric_generator(ctx.analysis.pp, witness.basis, r).ok
            and len(witness.basis) == witness.dim
            and r <= ctx.k
            and ctx.dim(r) == witness.dim
        )
        if valid:
            good += 1
        else:
            bad.append(r)
    note = "value and constructive basis for every r" + (f"; failing r: {bad}" if bad else "")
    return good, top, "=", note


def _tree_dim2(ctx):
    if not ctx.nonpath_tree:
        return "needs a tree that is not a path"
    return ctx.dim(2), ctx.branches.terminal_total, "=", ""


def _tree_dim3(ctx):
    if not ctx.nonpath_tree or ctx.branches.shortest_leg_pair < 3:
        return "needs a non-path tree whose two shortest legs total >= 3"
    return ctx.dim(3), 2 * ctx.branches.terminal_total - len(ctx.branches.majors), "=", ""


def _tree_forced(ctx):
    if not ctx.nonpath_tree:
        return "needs a tree that is not a path"
    majors = ctx.branches.majors
    if ctx.k < 2 or any(w.terminal_degree != 2 or w.shortest_leg_pair != ctx.k for w in majors):
        return "needs terminal degree 2 and leg-pair length k at every major"
    return ctx.dim(ctx.k), len(forced_vertices(ctx.analysis.pp, ctx.k)), "=", f"k*|M| = {ctx.k * len(majors)}"


def _path_formula(ctx):
    if not ctx.stats.is_path:
        return "not a path"
    good = sum(1 for r in range(1, ctx.k + 1) if ctx.dim(r) == dim_k_path(ctx.n, r))
    return good, ctx.k, "=", "levels matching 1, 2, k+1"


REGISTRY: tuple[Claim, ...] = (
    Claim("k_range_upper", "k <= n-1 for n >= 3 (k = n only for K2)", _k_range),
    Claim("k_range_lower", "every graph is at least 2-metric dimensional", _k_range_lower),
    Claim("n_dimensional_iff_k2", "n-metric dimensional iff K2", _n_dimensional),
    Claim("dimensional_value_maximal", "k = min |D(x,y)| is the largest k admitting a generator", _dimensional_maximal),
    Claim("twins_iff_2_dimensional", "2-metric dimensional iff twin vertices exist", _twins_iff_two),
    Claim("tree_two_leaf_support", "tree (n >= 4) is 2-dimensional iff a support vertex has two leaves", _tree_support),
    Claim("generalized_tree_extremes", "block graph is 2-dimensional iff twin extreme vertices share a cut vertex", _generalized_tree),
    Claim("cartesian_k_at_least_3", "Cartesian product of orders >= 2, >= 3 has k >= 3", _cartesian),
    Claim("cycle_parity", "C_n is (n-1)-dimensional for odd n, (n-2) for even n", _cycle_parity),
    Claim("n_minus_1_iff_path_or_odd_cycle", "(n-1)-dimensional iff path or odd cycle", _n_minus_one),
    Claim("leg_pair_bound", "k <= shortest two-leg length over exterior majors", _leg_pair_bound),
    Claim("clique_bound", "k <= n - clique number + 1 for non-complete graphs", _clique_bound),
    Claim("girth_bound", "k <= n - 1 - (Delta-2) sum (delta-1)^i, i <= g/2 - 2", _girth_bound),
    Claim("monotony", "dim_r strictly increasing in r", _monotony),
    Claim("profile_gap", "dim_r >= dim_1 + (r-1)", _profile_gap),
    Claim("profile_below_order", "dim_r < n for r < k", _profile_below_order),
    Claim("profile_not_path", "dim_r >= r+1 when not a path", _profile_not_path),
    Claim("dim1_iff_path", "dim_1 = 1 iff path", _dim1_path),
    Claim("dim2_iff_path", "dim_2 = 2 iff path", _dim2_path),
    Claim("forced_set_bound", "dim_k >= |D_k|", _forced_bound),
    Claim("full_dim_iff_forced_all", "dim_k = n iff D_k = V", _full_iff_forced),
    Claim("dim2_full_iff_all_twins", "dim_2 = n iff every vertex is a twin", _dim2_full),
    Claim("join_all_twins", "join of all-twin operands has dim_2 = n1 + n2", _join),
    Claim("twin_class_bound", "dim_2 >= total size of non-singleton twin classes", _twin_classes),
    Claim("strong_product_twins", "dim_2(G x H) >= n' * |true twins of G|, = n n' if all true twins", _strong),
    Claim("leg_contribution_bound", "dim_r >= sum of per-major leg contributions", _leg_contributions),
    Claim("terminal_total_r2", "dim_2 >= total terminal degree", _terminal_total_r2),
    Claim("terminal_total_r3", "dim_3 >= 2 * total terminal degree - |M|", _terminal_total_r3),
    Claim("tree_k_equals_leg_pair", "non-path tree: k = shortest two-leg length", _tree_k),
    Claim("tree_dim_formula", "non-path tree: dim_r = sum of leg contributions, with witness", _tree_formula),
    Claim("tree_dim2", "non-path tree: dim_2 = total terminal degree", _tree_dim2),
    Claim("tree_dim3", "non-path tree with leg-pair length >= 3: dim_3 = 2 mu - |M|", _tree_dim3),
    Claim("tree_forced_tight", "tree with ter = 2 and leg pair = k everywhere: dim_k = |D_k|", _tree_forced),
    Claim("path_formula", "dim_k(P_n) = 1, 2, k+1", _path_formula),
)


@dataclass(frozen=True)
class AuditReport:
    graph: Graph
    family: Optional[FamilySpec]
    k_max: int
    dims: tuple[int, ...]
    source: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.applicable and not c.passed]

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "graph": {
                "n": g.n,
                "m": g.m,
                "graph6": encode_graph6(g) if g.n <= 62 else None,
                "family": self.family.label() if self.family else None,
            },
            "k_max": self.k_max,
            "dims": list(self.dims),
            "source": self.source,
            "checks": [c.to_dict() for c in self.checks],
        }


def closed_form_profile(g: Graph, analysis: GraphAnalysis) -> tuple[int, ...]:
    """dim_r for every r of a tree, from the tree and path formulas."""
    return tuple(dim_r_tree(g, r).dim for r in range(1, analysis.k_max + 1))


def audit(
    g: Graph,
    family: Optional[FamilySpec] = None,
    *,
    max_n: int = DEFAULT_MAX_N,
    threads: int = 1,
    closed_form_trees: Optional[bool] = None,
    executor: Optional[Executor] = None,
    parallel_min_n: int = PARALLEL_MIN_N,
) -> AuditReport:
    """Evaluate every registered claim on ``g``.

    Ground truth comes from the exact solver, except for trees when
    ``closed_form_trees`` is set (default: when ``g`` exceeds ``max_n``).
    """
    analysis = GraphAnalysis.of(g)
    is_tree = g.m == g.n - 1
    if closed_form_trees is None:
        closed_form_trees = is_tree and g.n > max_n
    if closed_form_trees and is_tree:
        dims, source = closed_form_profile(g, analysis), "closed_form"
    else:
        if g.n > max_n:
            raise SolverLimitError(f"audit needs exact values; n={g.n} exceeds the solver guard {max_n}")
        prof, _ = dim_profile(g, max_n=max_n, threads=threads, executor=executor, parallel_min_n=parallel_min_n)
        dims, source = prof.dims, "solver"
    ctx = AuditContext(g, family, analysis, structural_stats(g, analysis.dm), dims, source)
    checks = []
    for claim in REGISTRY:
        out = claim.evaluate(ctx)
        if isinstance(out, str):
            checks.append(Check(claim.claim_id, False, None, None, "", True, out))
            continue
        lhs, rhs, relation, note = out
        checks.append(Check(claim.claim_id, True, lhs, rhs, relation, _holds(lhs, rhs, relation), note))
    return AuditReport(g, family, analysis.k_max, dims, source, tuple(checks))
