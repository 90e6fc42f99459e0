"""Strong resolving graph, independence number and strong metric dimension.

The strong metric dimension of a connected graph is the vertex cover number
of its strong resolving graph (Oellermann), and the vertex cover number is
the order minus the independence number (Gallai).  Both sides are computed
here: the reduction through an exact maximum independent set, and a
definition-level search over strong resolving sets for small graphs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import BudgetExceededError, DisconnectedGraphError, SpecOutOfTheoremScopeError
from .graph import DistanceMatrix, IdealGraph, _dot, vertex_label
from .ring import Family, Ideal, RingSpec, comparable, complement, is_in_m, minimal_ideal

DEFAULT_MIS_BUDGET = 10**7
DEFAULT_ORACLE_CAP = 16


@dataclass(frozen=True, eq=False)
class StrongResolvingGraph:
    """Subgraph-free description: ``vertices`` are base indices, ``edges`` pairs ``u < v``."""

    base: IdealGraph
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def neighbors(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def same_as(self, other: StrongResolvingGraph) -> bool:
        return self.vertices == other.vertices and self.edges == other.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def _finite(D: DistanceMatrix):
    if not D.connected:
        raise DisconnectedGraphError("the strong resolving graph needs a connected graph")
    return D.finite


def mutually_maximally_distant(u: int, v: int, graph: IdealGraph, D: DistanceMatrix | None = None) -> bool:
    """No neighbour of ``u`` is farther from ``v`` than ``u`` is, and vice versa."""
    dist = _finite(graph.distances if D is None else D)
    duv = dist[u, v]
    nbrs = graph.neighbors
    return all(dist[v, w] <= duv for w in nbrs[u]) and all(dist[u, w] <= duv for w in nbrs[v])


def build_srg_definitional(graph: IdealGraph, D: DistanceMatrix | None = None) -> StrongResolvingGraph:
    dist = _finite(graph.distances if D is None else D)
    # u, v are MMD iff d(u, v) bounds the distance from v to every neighbour of u
    # and symmetrically; ``reach[u, v]`` = max over w in N(u) of d(w, v).
    n = len(graph)
    adj = graph.adjacency
    reach = [[0] * n for _ in range(n)]
    for u in range(n):
        nbrs = adj[u]
        if nbrs.any():
            reach[u] = dist[nbrs].max(axis=0).tolist()
    edges = set()
    for u in range(n):
        ru = reach[u]
        du = dist[u]
        for v in range(u + 1, n):
            if ru[v] <= du[v] and reach[v][u] <= du[v]:
                edges.add((u, v))
    vertices = tuple(sorted({x for e in edges for x in e}))
    return StrongResolvingGraph(graph, vertices, frozenset(edges))


def _srg_edge_rule(spec: RingSpec, a: Ideal, b: Ideal) -> bool:
    a_in, b_in = is_in_m(spec, a), is_in_m(spec, b)
    if comparable(a, b):
        return False
    if a_in and b_in:
        return a == complement(spec, b) or not comparable(a, complement(spec, b))
    if not a_in and not b_in:
        return True
    inside = a if a_in else b
    other = b if a_in else a
    return not comparable(other, complement(spec, inside))


def structural_exclusions(spec: RingSpec) -> list[Ideal]:
    """Vertices with no mutually maximally distant partner, for one chain ring plus fields."""
    if spec.family is not Family.MIXED or spec.num_chain != 1:
        return []
    (p,) = spec.chain_positions
    # I_1 x 0 x .. x 0 and I_{n_1} x F_1 x .. x F_n
    lowest = tuple(1 if i == p else 0 for i in range(len(spec)))
    highest = tuple(spec.chain_lengths[p] if i == p else (1 if k == 0 else 0) for i, k in enumerate(spec.chain_lengths))
    return [lowest, highest]


def build_srg_structural(spec: RingSpec, graph: IdealGraph) -> StrongResolvingGraph:
    """Strong resolving graph from the case rules on M-membership and complements.

    For field products, products of chain rings, and mixed products the
    edges are decided purely from comparability of ideals and complements,
    without distances.
    """
    if spec.family is None:
        raise SpecOutOfTheoremScopeError(f"no structural description of the strong resolving graph of {spec}")
    excluded = {graph.index[x] for x in structural_exclusions(spec)}
    vertices = tuple(i for i in range(len(graph)) if i not in excluded)
    ideals = graph.vertices
    edges = frozenset(
        (u, v) for u, v in combinations(vertices, 2) if _srg_edge_rule(spec, ideals[u], ideals[v])
    )
    return StrongResolvingGraph(graph, vertices, edges)


# -- structure ---------------------------------------------------------------


@dataclass(frozen=True)
class SrgStructureReport:
    k2_count: int
    h_vertices: int
    h_connected: bool | None  # None when every component is a K2
    components: tuple[tuple[int, ...], ...]

    @property
    def component_sizes(self) -> list[int]:
        return sorted((len(c) for c in self.components), reverse=True)


def connected_components(srg: StrongResolvingGraph) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    comps = []
    for start in srg.vertices:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in srg.neighbors[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def _is_k2(srg: StrongResolvingGraph, comp: tuple[int, ...]) -> bool:
    return len(comp) == 2 and (comp[0], comp[1]) in srg.edges


def srg_structure(srg: StrongResolvingGraph) -> SrgStructureReport:
    comps = connected_components(srg)
    k2 = [c for c in comps if _is_k2(srg, c)]
    rest = [c for c in comps if not _is_k2(srg, c)]
    h_vertices = sum(len(c) for c in rest)
    return SrgStructureReport(
        k2_count=len(k2),
        h_vertices=h_vertices,
        h_connected=None if not rest else len(rest) == 1,
        components=tuple(comps),
    )


def is_complete(srg: StrongResolvingGraph, comp: Iterable[int]) -> bool:
    comp = sorted(comp)
    return all((u, v) in srg.edges for u, v in combinations(comp, 2))


# -- independence number -----------------------------------------------------


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _clique_cover_bound(cand: int, adj: list[int]) -> int:
    """Number of cliques in a greedy clique cover of ``cand``; bounds any independent set."""
    count = 0
    while cand:
        low = cand & -cand
        clique = low
        common = adj[low.bit_length() - 1] & cand
        while common:
            nxt = common & -common
            clique |= nxt
            common &= adj[nxt.bit_length() - 1]
        cand &= ~clique
        count += 1
    return count


def _max_independent_set(n: int, adj: list[int], cand: int, work) -> tuple[int, int]:
    """Exact maximum independent set inside ``cand``; returns ``(size, bitset)``."""
    best = [0, 0]

    # greedy min-degree start gives the initial lower bound
    rest, greedy = cand, 0
    while rest:
        v = min(_bits(rest), key=lambda x: ((adj[x] & rest).bit_count(), x))
        greedy |= 1 << v
        rest &= ~(adj[v] | (1 << v))
    best[:] = [greedy.bit_count(), greedy]

    def branch(cand: int, chosen: int, size: int) -> None:
        work.spend(1)
        # vertices of degree <= 1 can always be taken
        changed = True
        while changed and cand:
            changed = False
            for v in _bits(cand):
                if (adj[v] & cand).bit_count() <= 1:
                    chosen |= 1 << v
                    size += 1
                    cand &= ~(adj[v] | (1 << v))
                    changed = True
                    break
        if not cand:
            if size > best[0]:
                best[:] = [size, chosen]
            return
        if size + _clique_cover_bound(cand, adj) <= best[0]:
            return
        pivot = max(_bits(cand), key=lambda x: ((adj[x] & cand).bit_count(), -x))
        bit = 1 << pivot
        branch(cand & ~(adj[pivot] | bit), chosen | bit, size + 1)
        branch(cand & ~bit, chosen, size)

    branch(cand, 0, 0)
    return best[0], best[1]


class _Work:
    def __init__(self, budget: int, what: str):
        self.left = budget
        self.budget = budget
        self.what = what

    def spend(self, amount: int) -> None:
        self.left -= amount
        if self.left < 0:
            raise BudgetExceededError(self.what, self.budget)


def independence_number(srg: StrongResolvingGraph, budget: int = DEFAULT_MIS_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Exact independence number and the lexicographically smallest maximum independent set.

    Branch and bound with a max-degree pivot, a greedy initial solution and
    a clique-cover upper bound.  The witness is then fixed vertex by vertex:
    the smallest vertex that still extends to a maximum independent set
    using only larger vertices is taken each time.
    """
    order = list(srg.vertices)
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    adj = [0] * n
    for u, v in srg.edges:
        adj[pos[u]] |= 1 << pos[v]
        adj[pos[v]] |= 1 << pos[u]
    work = _Work(budget, f"independence number of the strong resolving graph of {srg.base.spec}")
    full = (1 << n) - 1
    beta, _ = _max_independent_set(n, adj, full, work)

    witness = []
    cand, need = full, beta
    while need:
        for v in _bits(cand):
            bit = 1 << v
            later = cand & ~((bit << 1) - 1) & ~adj[v]
            if need == 1 or _max_independent_set(n, adj, later, work)[0] >= need - 1:
                witness.append(v)
                cand, need = later, need - 1
                break
        else:  # pragma: no cover - beta is attained
            raise AssertionError("independence number not attained")
    return beta, tuple(order[i] for i in witness)


def is_independent(srg: StrongResolvingGraph, vertices: Iterable[int]) -> bool:
    vs = sorted(set(vertices))
    return all(v in srg.neighbors for v in vs) and not any((u, v) in srg.edges for u, v in combinations(vs, 2))


def is_vertex_cover(srg: StrongResolvingGraph, vertices: Iterable[int]) -> bool:
    cover = set(vertices)
    return all(u in cover or v in cover for u, v in srg.edges)


# -- strong metric dimension -------------------------------------------------


@dataclass(frozen=True)
class StrongDimension:
    sdim: int
    srg_order: int
    beta: int
    independent_set: tuple[int, ...]
    basis: tuple[int, ...]  # complement of the independent set: a strong metric basis


def strong_metric_dimension_full(graph: IdealGraph, budget: int = DEFAULT_MIS_BUDGET) -> StrongDimension:
    srg = build_srg_definitional(graph)
    beta, independent = independence_number(srg, budget)
    basis = tuple(sorted(set(srg.vertices) - set(independent)))
    return StrongDimension(len(srg) - beta, len(srg), beta, independent, basis)


def strong_metric_dimension(graph: IdealGraph, budget: int = DEFAULT_MIS_BUDGET) -> int:
    """``|V(G_SR)| - beta(G_SR)``."""
    return strong_metric_dimension_full(graph, budget).sdim


def strongly_resolves(w: int, u: int, v: int, dist) -> bool:
    return dist[w, u] == dist[w, v] + dist[v, u] or dist[w, v] == dist[w, u] + dist[u, v]


def is_strong_resolving_set(W: Iterable[int], graph: IdealGraph, D: DistanceMatrix | None = None) -> bool:
    dist = _finite(graph.distances if D is None else D)
    W = list(W)
    n = len(graph)
    return all(any(strongly_resolves(w, u, v, dist) for w in W) for u, v in combinations(range(n), 2))


def strong_metric_dimension_oracle(
    graph: IdealGraph, D: DistanceMatrix | None = None, cap: int = DEFAULT_ORACLE_CAP
) -> tuple[int, tuple[int, ...]]:
    """Smallest strong resolving set by ascending-size lexicographic enumeration."""
    dist = _finite(graph.distances if D is None else D)
    n = len(graph)
    if n > cap:
        raise BudgetExceededError(f"definitional sdim oracle on {n} vertices (cap {cap})", cap)
    # pair p is strongly resolved by the vertices in resolvers[p]
    resolvers = [
        sum(1 << w for w in range(n) if strongly_resolves(w, u, v, dist))
        for u, v in combinations(range(n), 2)
    ]
    for k in range(n + 1):
        for W in combinations(range(n), k):
            mask = sum(1 << w for w in W)
            if all(r & mask for r in resolvers):
                return k, W
    raise AssertionError("the whole vertex set is strongly resolving")


# -- closed forms ------------------------------------------------------------


def _family(spec: RingSpec) -> Family:
    if spec.family is None:
        raise SpecOutOfTheoremScopeError(
            f"no closed form for the strong resolving graph of {spec} "
            f"(m={spec.num_chain} chain rings, n={spec.num_fields} fields)"
        )
    return spec.family


def predicted_beta(spec: RingSpec) -> int:
    family = _family(spec)
    m, n = spec.num_chain, spec.num_fields
    total = sum(spec.chain_lengths)
    if family is Family.FIELDS:
        return 2 * n - 3
    if family is Family.PIR:
        return total + m - 1
    if m == 1:
        return 2 * n + total - 2
    return total + 2 * n + m - 1


def predicted_sdim(spec: RingSpec) -> int:
    family = _family(spec)
    m, n = spec.num_chain, spec.num_fields
    total = sum(spec.chain_lengths)
    chain_product = math.prod(k + 2 for k in spec.chain_lengths if k > 0)
    if family is Family.FIELDS:
        return 2**n - 2 * n + 1
    if family is Family.PIR:
        return chain_product - total - m - 1
    if m == 1:
        return (total + 2) * 2**n - 2 * n - total - 2
    return chain_product * 2**n - total - 2 * n - m - 1


def predicted_srg_order(spec: RingSpec) -> int:
    family = _family(spec)
    count = spec.ideal_count - 2
    if family is Family.MIXED and spec.num_chain == 1:
        return count - 2
    return count


def _with(spec: RingSpec, assignments: dict[int, int]) -> Ideal:
    return tuple(assignments.get(i, 0) for i in range(len(spec)))


def _staircase(spec: RingSpec, with_tops: bool) -> list[Ideal]:
    """Chain-ring staircase, last chain component first.

    For each chain component ``p`` (taken from the last to the first), the
    ideals ``0 x .. x I_{p,j} x R x .. x R`` for ``j = 1..n_p``, zero in every
    field slot; with ``with_tops`` also ``0 x .. x R_p x .. x R`` between steps.
    """
    chains = spec.chain_positions
    tops = spec.tops
    out = []
    for idx in range(len(chains) - 1, -1, -1):
        p = chains[idx]
        suffix = {q: tops[q] for q in chains[idx + 1 :]}
        for level in range(1, tops[p]):
            out.append(_with(spec, {**suffix, p: level}))
        if with_tops and idx > 0:
            out.append(_with(spec, {**suffix, p: tops[p]}))
    return out


def predicted_max_independent_set(spec: RingSpec) -> list[Ideal]:
    """Explicit independent set of size :func:`predicted_beta` in the strong resolving graph."""
    family = _family(spec)
    fields = spec.field_positions
    xs = [minimal_ideal(spec, f + 1) for f in fields]
    if family is Family.FIELDS:
        n = len(fields)
        nested = [_with(spec, {f: 1 for f in fields[: j + 2]}) for j in range(n - 3)]
        return nested + xs
    if family is Family.PIR:
        chains = spec.chain_positions
        tops = spec.tops
        tops_only = [_with(spec, {q: tops[q] for q in chains[idx:]}) for idx in range(len(chains) - 1, 0, -1)]
        return _staircase(spec, with_tops=False) + tops_only
    chains = spec.chain_positions
    tops = spec.tops
    first = chains[0]
    if spec.num_chain == 1:
        # I_{1,j} x 0 for j >= 2 (I_{1,1} x 0 is not in the strong resolving graph),
        # then I_{1,n1} x F_1 x .. x F_j x 0 .. for j = 1..n-1
        head = [_with(spec, {first: level}) for level in range(2, tops[first])]
        base = {first: tops[first] - 1}
    else:
        head = _staircase(spec, with_tops=True)
        base = {q: tops[q] for q in chains}
        base[first] = tops[first] - 1
    reach = len(fields) - 1 if spec.num_chain == 1 else len(fields)
    tail = [_with(spec, {**base, **{f: 1 for f in fields[: j + 1]}}) for j in range(reach)]
    return head + tail + xs


def covers_strong(spec: RingSpec) -> bool:
    return spec.family is not None


# -- serialization -----------------------------------------------------------


def srg_to_dict(srg: StrongResolvingGraph) -> dict:
    pos = {v: i for i, v in enumerate(srg.vertices)}
    return {
        "spec": list(srg.base.spec.chain_lengths),
        "base_spec": str(srg.base.spec),
        "vertices": [list(srg.base.vertices[v]) for v in srg.vertices],
        "base_index": list(srg.vertices),
        "edges": [[pos[u], pos[v]] for u, v in srg.sorted_edges()],
    }


def export_srg_json(srg: StrongResolvingGraph) -> str:
    return json.dumps(srg_to_dict(srg))


def export_srg_dot(srg: StrongResolvingGraph) -> str:
    pos = {v: i for i, v in enumerate(srg.vertices)}
    labels = [vertex_label(srg.base.spec, srg.base.vertices[v]) for v in srg.vertices]
    return _dot("InR_SR", labels, [(pos[u], pos[v]) for u, v in srg.sorted_edges()])
