"""Resolving sets and metric dimension of inclusion ideal graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceededError,
    DisconnectedGraphError,
    SpecOutOfTheoremScopeError,
    VertexInSetError,
)
from .graph import DistanceMatrix, IdealGraph
from .ring import Ideal, RingSpec, complement, minimal_ideal

#: Default cap on pair-mask tests performed by :func:`metric_dimension_exact`.
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class ResolvingResult:
    dimension: int
    basis: tuple[int, ...]  # lexicographically smallest minimum resolving set


def _finite(D: DistanceMatrix) -> np.ndarray:
    if not D.connected:
        raise DisconnectedGraphError("resolving sets are undefined on a disconnected graph")
    return D.finite


def representation(v: int, S: Sequence[int], D: DistanceMatrix) -> tuple[int, ...]:
    """``(d(v, s_1), ..., d(v, s_k))`` for a vertex outside the landmark set."""
    if v in S:
        raise VertexInSetError(f"vertex {v} is one of the landmarks")
    return tuple(D[v, s] for s in S)


def is_resolving(S: Iterable[int], D: DistanceMatrix) -> bool:
    """Distinct vertices outside ``S`` get distinct representation vectors."""
    dist = _finite(D)
    S = list(dict.fromkeys(S))
    inside = set(S)
    seen = set()
    for v in range(len(D)):
        if v in inside:
            continue
        key = tuple(dist[v, S].tolist())
        if key in seen:
            return False
        seen.add(key)
    return True


def metric_dimension_naive(graph: IdealGraph, max_size: int | None = None) -> ResolvingResult:
    """Plain ascending-size, lexicographic subset enumeration.

    Kept as an independent cross-check for :func:`metric_dimension_exact`.
    """
    D = graph.distances
    _finite(D)
    n = len(graph)
    limit = n if max_size is None else min(n, max_size)
    for k in range(0 if n <= 1 else 1, limit + 1):
        for S in combinations(range(n), k):
            if is_resolving(S, D):
                return ResolvingResult(k, S)
    raise BudgetExceededError(f"no resolving set of size <= {limit}", limit)


def _minimal_masks(masks) -> list[int]:
    """Drop every mask that contains another one; sort the rest by size."""
    kept: list[int] = []
    for mask in sorted(set(masks), key=lambda m: (m.bit_count(), m)):
        if not any(k & mask == k for k in kept):
            kept.append(mask)
    return kept


def _pair_masks(dist: np.ndarray) -> list[int]:
    """For every vertex pair, the bitset of vertices that tell them apart.

    A set resolves the graph iff it meets every one of these bitsets.  Only
    inclusion-minimal bitsets are kept (meeting a subset implies meeting its
    supersets), sorted by size.
    """
    n = dist.shape[0]
    masks = set()
    weights = 1 << np.arange(n, dtype=object)
    for u in range(n - 1):
        differs = dist[:, u, None] != dist[:, u + 1 :]
        for col in differs.T:
            masks.add(int(weights[col].sum()))
    return _minimal_masks(masks)


def _kernel(masks: list[int], n: int) -> list[int]:
    """Reduce a hitting-set instance without changing its optimum size.

    A vertex that meets only masks also met by some other vertex can be
    replaced by that vertex, so it is deleted; deleting vertices can make
    masks nested again, so both steps repeat until nothing changes.
    """
    alive = (1 << n) - 1
    while True:
        columns = {}
        for idx, mask in enumerate(masks):
            for v in _iter_bits(mask):
                columns[v] = columns.get(v, 0) | (1 << idx)
        dead = 0
        verts = sorted(columns)
        for a in verts:
            ca = columns[a]
            for b in verts:
                if b == a or (dead >> b) & 1:
                    continue
                cb = columns[b]
                if ca & ~cb == 0 and (ca != cb or b < a):
                    dead |= 1 << a
                    break
        if not dead:
            return masks
        alive &= ~dead
        masks = _minimal_masks(mask & alive for mask in masks)


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Counter:
    def __init__(self, budget: int, what: str):
        self.left = budget
        self.budget = budget
        self.what = what

    def spend(self, amount: int) -> None:
        self.left -= amount
        if self.left < 0:
            raise BudgetExceededError(self.what, self.budget)


def _packing_bound(unhit: list[int], avail: int) -> int:
    """Size of a greedy family of pairwise disjoint masks (restricted to ``avail``)."""
    used = 0
    packed = 0
    for mask in unhit:
        a = mask & avail
        if not a & used:
            used |= a
            packed += 1
    return packed


def _hitting_set_exists(masks: list[int], n: int, k: int, work: _Counter) -> bool:
    """Is there a set of at most ``k`` vertices meeting every mask?

    Branches on the outstanding mask with the fewest usable vertices, trying
    its most useful vertex first and forbidding each vertex once tried.
    Branches are cut by two bounds: a greedy packing of disjoint masks, and
    the ``r`` largest per-vertex hit counts falling short of the number of
    outstanding masks.
    """
    rows = np.array([[(mask >> v) & 1 for v in range(n)] for mask in masks], dtype=bool)
    ints = np.array(masks, dtype=object)

    def search(rows: np.ndarray, ints: np.ndarray, avail: np.ndarray, avail_int: int, r: int) -> bool:
        count = rows.shape[0]
        if count == 0:
            return True
        if r == 0:
            return False
        work.spend(count)
        usable = rows & avail
        sizes = usable.sum(axis=1)
        if sizes.min() == 0:
            return False
        hits = usable.sum(axis=0)
        if r < n and np.partition(hits, n - r)[n - r :].sum() < count:
            return False
        if _packing_bound(ints.tolist(), avail_int) > r:
            return False
        pick = int(sizes.argmin())
        order = np.flatnonzero(usable[pick])
        order = order[np.argsort(-hits[order], kind="stable")]
        avail = avail.copy()
        for v in order:
            v = int(v)
            keep = ~rows[:, v]
            avail[v] = False
            if search(rows[keep], ints[keep], avail, avail_int & ~(1 << v), r - 1):
                return True
            avail_int &= ~(1 << v)
        return False

    return search(rows, ints, np.ones(n, dtype=bool), (1 << n) - 1, k)


def _first_hitting_set(masks: list[int], n: int, k: int, work: _Counter) -> tuple[int, ...] | None:
    """Lexicographically first ``k``-subset of ``range(n)`` meeting every mask.

    Subsets are generated in lexicographic order; a branch is cut when some
    mask can no longer be met or when a packing of pairwise disjoint masks
    needs more picks than remain.  Assumes no smaller hitting set exists,
    which lets vertices that meet no outstanding mask be skipped.
    """
    full = (1 << n) - 1
    chosen: list[int] = []

    def search(unhit: list[int], start: int, r: int) -> bool:
        if not unhit:
            return True
        if r == 0:
            return False
        work.spend(len(unhit))
        avail = full & ~((1 << start) - 1)
        cap = n - 1
        for mask in unhit:
            a = mask & avail
            if not a:
                return False
            top = a.bit_length() - 1
            if top < cap:
                cap = top
        if _packing_bound(unhit, avail) > r:
            return False
        for v in range(start, cap + 1):
            bit = 1 << v
            rest = [mask for mask in unhit if not mask & bit]
            if len(rest) == len(unhit):
                continue
            chosen.append(v)
            if search(rest, v + 1, r - 1):
                return True
            chosen.pop()
        return False

    if search(masks, 0, k):
        return tuple(chosen)
    return None


def metric_dimension_exact(graph: IdealGraph, budget: int = DEFAULT_BUDGET) -> ResolvingResult:
    """Metric dimension and the lexicographically first metric basis.

    Same answer as trying every ``k``-subset in lexicographic order for
    ``k = 1, 2, ...`` and returning the first resolving one.  The size is
    settled first by a hitting-set branch and bound; the lexicographic
    search then runs only at that size.
    """
    dist = _finite(graph.distances)
    n = len(graph)
    if n <= 1:
        return ResolvingResult(0, ())
    masks = _pair_masks(dist)
    work = _Counter(budget, f"metric dimension of {graph.spec}")
    kernel = _kernel(masks, n)
    k = max(1, _packing_bound(kernel, (1 << n) - 1))
    while not _hitting_set_exists(kernel, n, k, work):
        k += 1
    found = _first_hitting_set(masks, n, k, work)
    assert found is not None and len(found) == k
    return ResolvingResult(k, found)


# -- closed forms ------------------------------------------------------------


def _scope_error(spec: RingSpec, what: str) -> SpecOutOfTheoremScopeError:
    return SpecOutOfTheoremScopeError(
        f"no closed form for the {what} of {spec} "
        f"(m={spec.num_chain} chain rings, n={spec.num_fields} fields)"
    )


def _metric_case(spec: RingSpec) -> str:
    m, n = spec.num_chain, spec.num_fields
    if m == 0 and n >= 3:
        return "fields"
    if m >= 2 and n == 0:
        return "pir"
    if m == 1 and n == 1:
        return "one-one"
    if m == 1 and n == 2:
        return "one-two"
    if m >= 1 and n >= 3:
        return "mixed"
    raise _scope_error(spec, "metric dimension")


def predicted_metric_dimension(spec: RingSpec) -> int:
    case = _metric_case(spec)
    m, n = spec.num_chain, spec.num_fields
    total = sum(spec.chain_lengths)
    if case == "fields":
        return n - 1 if n <= 4 else n
    if case == "pir":
        return total + m - 1
    if case == "one-one":
        return total
    if case == "one-two":
        return total + 2
    return total + m + n


def _unit(spec: RingSpec, position: int, level: int) -> Ideal:
    return tuple(level if i == position else 0 for i in range(len(spec)))


def _chi(spec: RingSpec, position: int, lowest: int = 1) -> list[Ideal]:
    """Non-zero ideals of one component, padded with zeros elsewhere."""
    return [_unit(spec, position, level) for level in range(lowest, spec.tops[position] + 1)]


def predicted_basis(spec: RingSpec) -> list[Ideal]:
    """The constructive resolving set matching :func:`predicted_metric_dimension`."""
    case = _metric_case(spec)
    chains, fields = spec.chain_positions, spec.field_positions
    xs = [minimal_ideal(spec, f + 1) for f in fields]
    if case == "fields":
        n = len(fields)
        if n == 3:
            return [xs[0], complement(spec, xs[1])]
        if n == 4:
            return xs[:3]
        return xs
    if case == "pir":
        basis = [v for p in chains for v in _chi(spec, p)]
        basis.remove(_unit(spec, chains[0], 1))
        return basis
    if case == "one-one":
        return _chi(spec, chains[0], lowest=2)
    if case == "one-two":
        return _chi(spec, chains[0], lowest=2) + xs
    return [v for p in chains for v in _chi(spec, p)] + xs


def covers_metric(spec: RingSpec) -> bool:
    try:
        _metric_case(spec)
    except SpecOutOfTheoremScopeError:
        return False
    return True


__all__ = [
    "DEFAULT_BUDGET",
    "ResolvingResult",
    "covers_metric",
    "is_resolving",
    "metric_dimension_exact",
    "metric_dimension_naive",
    "predicted_basis",
    "predicted_metric_dimension",
    "representation",
]
