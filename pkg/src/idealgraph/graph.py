"""Inclusion ideal graph: construction, hop distances and serialization."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DisconnectedGraphError, EmptyGraphError
from .ring import (
    DEFAULT_MAX_VERTICES,
    Ideal,
    RingSpec,
    check_vertex_bound,
    enumerate_ideals,
    render_ideal,
)


class _Unreachable:
    """Distance marker for vertices in different components."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


@dataclass(frozen=True, eq=False)
class IdealGraph:
    spec: RingSpec
    vertices: tuple[Ideal, ...]
    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.adjacency.setflags(write=False)

    @cached_property
    def index(self) -> dict[Ideal, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in self.adjacency)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Neighbourhoods as Python-int bitsets."""
        return tuple(sum(1 << j for j in nbrs) for nbrs in self.neighbors)

    @cached_property
    def distances(self) -> DistanceMatrix:
        return _bfs_all_pairs(self)

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        us, vs = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])


class DistanceMatrix:
    """All-pairs hop distances with an explicit marker for unreachable pairs.

    ``finite`` gives the raw integer matrix, and refuses to do so for a
    disconnected graph so that no arithmetic ever touches a missing distance.
    """

    def __init__(self, hops: np.ndarray, reachable: np.ndarray):
        self._hops = hops
        self._reachable = reachable
        self._hops.setflags(write=False)
        self._reachable.setflags(write=False)
        self.connected = bool(reachable.all())

    def __len__(self) -> int:
        return self._hops.shape[0]

    def __getitem__(self, uv: tuple[int, int]):
        u, v = uv
        if not self._reachable[u, v]:
            return UNREACHABLE
        return int(self._hops[u, v])

    @property
    def finite(self) -> np.ndarray:
        if not self.connected:
            raise DisconnectedGraphError("distance matrix has unreachable pairs")
        return self._hops

    @property
    def reachable(self) -> np.ndarray:
        return self._reachable

    def rows(self) -> list[list]:
        return [[self[u, v] for v in range(len(self))] for u in range(len(self))]


def build_graph(spec: RingSpec, max_vertices: int = DEFAULT_MAX_VERTICES) -> IdealGraph:
    check_vertex_bound(spec, max_vertices)
    vertices = enumerate_ideals(spec)
    levels = np.array(vertices, dtype=np.int32).reshape(len(vertices), len(spec))
    # below[u, v]: ideal u is contained in ideal v (not necessarily properly)
    below = (levels[:, None, :] <= levels[None, :, :]).all(axis=2)
    adjacency = below | below.T
    np.fill_diagonal(adjacency, False)
    return IdealGraph(spec, tuple(vertices), adjacency)


def _bfs_all_pairs(graph: IdealGraph) -> DistanceMatrix:
    n = len(graph)
    hops = np.zeros((n, n), dtype=np.int32)
    reachable = np.zeros((n, n), dtype=bool)
    nbrs = graph.neighbors
    for source in range(n):
        seen = [False] * n
        seen[source] = True
        row = hops[source]
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = row[u] + 1
            for w in nbrs[u]:
                if not seen[w]:
                    seen[w] = True
                    row[w] = du
                    queue.append(w)
        reachable[source] = seen
    return DistanceMatrix(hops, reachable)


def all_pairs_distances(graph: IdealGraph) -> DistanceMatrix:
    return graph.distances


def is_connected(graph: IdealGraph) -> bool:
    if len(graph) == 0:
        return True
    return graph.distances.connected


def diameter(graph: IdealGraph) -> int:
    if len(graph) == 0:
        raise EmptyGraphError(f"{graph.spec} has no non-trivial ideals")
    if len(graph) == 1:
        return 0
    return int(graph.distances.finite.max())


def eccentricities(graph: IdealGraph) -> np.ndarray:
    return graph.distances.finite.max(axis=1)


# -- serialization ---------------------------------------------------------


def vertex_label(spec: RingSpec, ideal: Ideal) -> str:
    return render_ideal(spec, ideal, sep="x")


def _dot(name: str, labels: list[str], edges: list[tuple[int, int]]) -> str:
    lines = [f"graph {name} {{"]
    lines += [f'  {i} [label="{label}"];' for i, label in enumerate(labels)]
    lines += [f"  {u} -- {v};" for u, v in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(graph: IdealGraph) -> str:
    labels = [vertex_label(graph.spec, v) for v in graph.vertices]
    return _dot("InR", labels, graph.edges())


def graph_to_dict(graph: IdealGraph) -> dict:
    return {
        "spec": list(graph.spec.chain_lengths),
        "vertices": [list(v) for v in graph.vertices],
        "edges": [list(e) for e in graph.edges()],
    }


def export_json(graph: IdealGraph) -> str:
    return json.dumps(graph_to_dict(graph))


def export(graph: IdealGraph, fmt: str) -> str:
    if fmt == "dot":
        return export_dot(graph)
    if fmt == "json":
        return export_json(graph)
    raise ValueError(f"unknown graph format {fmt!r}; expected dot or json")


def graph_from_json(text: str) -> IdealGraph:
    """Inverse of :func:`export_json`; the edge list is taken as given."""
    data = json.loads(text)
    spec = RingSpec(tuple(data["spec"]))
    vertices = tuple(tuple(v) for v in data["vertices"])
    n = len(vertices)
    adjacency = np.zeros((n, n), dtype=bool)
    for u, v in data["edges"]:
        adjacency[u, v] = adjacency[v, u] = True
    return IdealGraph(spec, vertices, adjacency)
