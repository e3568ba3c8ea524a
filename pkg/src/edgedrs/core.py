"""Core graph primitives: canonical edge lists, line graphs, BFS distances.

A :class:`Graph` is immutable once built. The all-pairs distance matrix of
the graph and of its line graph are computed lazily and cached on the graph
object, so every metric query against the same instance reuses one table.
Distances are exact small integers stored densely; every graph handled here
has at most a few hundred line-graph vertices, so O(1) lookups beat any
cleverer storage.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]


class GraphError(Exception):
    """Base error for graph construction and lookups."""


class LoopEdgeError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same unordered vertex pair appears twice."""


class VertexOutOfRangeError(GraphError):
    """An edge references a vertex outside [0, order)."""


class DisconnectedError(GraphError):
    """The graph is disconnected, so distances are undefined."""


class EmptyEdgeSetError(GraphError):
    """The line graph of an edgeless graph is undefined."""


class EdgeNotInGraphError(GraphError):
    """A queried edge does not belong to the graph."""


def canonical_edge(u: int, v: int) -> Edge:
    """Return the endpoints as a (min, max) pair, rejecting loops."""
    if u == v:
        raise LoopEdgeError(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


class DistanceMatrix:
    """Dense symmetric all-pairs shortest-path table with integer entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        self.rows = tuple(tuple(row) for row in rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DistanceMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n})"


def _bfs_row(adjacency: Sequence[Sequence[int]], source: int) -> list[int]:
    dist = [-1] * len(adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adjacency[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


class Graph:
    """Simple, undirected graph with a canonical sorted edge list.

    Edges are canonicalized as (min endpoint, max endpoint) and ordered
    lexicographically; line-graph vertex ``i`` always means ``edges[i]``,
    which keeps search output reproducible across runs.
    """

    def __init__(self, order: int, edges: Iterable[tuple[int, int]]):
        if order < 1:
            raise VertexOutOfRangeError("a graph needs at least one vertex")
        seen: set[Edge] = set()
        for u, v in edges:
            e = canonical_edge(u, v)
            if e[0] < 0 or e[1] >= order:
                raise VertexOutOfRangeError(
                    f"edge {e} references a vertex outside [0, {order})"
                )
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
        self.order = order
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(order)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(nbrs)) for nbrs in adj
        )
        self._edge_index: dict[Edge, int] = {e: i for i, e in enumerate(self.edges)}

    @property
    def size(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self._edge_index

    def edge_index(self, edge: tuple[int, int]) -> int:
        """Index of an edge in the canonical order (= its line-graph vertex)."""
        e = canonical_edge(*edge)
        try:
            return self._edge_index[e]
        except KeyError:
            raise EdgeNotInGraphError(f"edge {e} is not in the graph") from None

    @cached_property
    def is_connected(self) -> bool:
        return all(d >= 0 for d in _bfs_row(self.adjacency, 0))

    @cached_property
    def distance_matrix(self) -> DistanceMatrix:
        """BFS from every vertex; raises ``DisconnectedError`` if unreachable."""
        rows = []
        for v in range(self.order):
            row = _bfs_row(self.adjacency, v)
            if any(d < 0 for d in row):
                raise DisconnectedError("graph is disconnected")
            rows.append(row)
        return DistanceMatrix(rows)

    @cached_property
    def line_map(self) -> "LineGraphMap":
        return line_graph(self)

    @cached_property
    def line_distance_matrix(self) -> DistanceMatrix:
        return self.line_map.graph.distance_matrix

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"


@dataclass(frozen=True)
class LineGraphMap:
    """A line graph plus the canonical edge order it was built from.

    ``graph`` has one vertex per edge of the base graph, vertex ``i``
    standing for ``base_edges[i]``; two vertices are adjacent exactly when
    the corresponding base edges share an endpoint.
    """

    base_edges: tuple[Edge, ...]
    graph: Graph

    def index_of(self, edge: tuple[int, int]) -> int:
        e = canonical_edge(*edge)
        try:
            return self.base_edges.index(e)
        except ValueError:
            raise EdgeNotInGraphError(f"edge {e} is not a base edge") from None


def build_graph(
    order: int,
    edge_list: Iterable[tuple[int, int]],
    require_connected: bool = False,
) -> Graph:
    """Validate and build a graph; optionally reject disconnected input.

    Metric operations assume connectivity, so callers that will take
    distances should pass ``require_connected=True`` to fail early.
    """
    g = Graph(order, edge_list)
    if require_connected and not g.is_connected:
        raise DisconnectedError("graph is disconnected")
    return g


def line_graph(g: Graph) -> LineGraphMap:
    """Build the line graph of ``g``.

    Vertices of the result are the edges of ``g`` in canonical order; an
    adjacency means the two base edges share exactly one endpoint (a simple
    graph cannot share two).
    """
    if not g.edges:
        raise EmptyEdgeSetError("line graph of an edgeless graph is undefined")
    incident: list[list[int]] = [[] for _ in range(g.order)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    line_edges: set[Edge] = set()
    for ids in incident:
        # edge ids in `ids` are ascending, so combinations are canonical
        line_edges.update(combinations(ids, 2))
    return LineGraphMap(g.edges, Graph(len(g.edges), sorted(line_edges)))


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    return g.distance_matrix


def edge_distance(g: Graph, f: tuple[int, int], h: tuple[int, int]) -> int:
    """Distance between two edges of ``g`` measured in its line graph."""
    i = g.edge_index(f)
    j = g.edge_index(h)
    return g.line_distance_matrix[i][j]


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def graph_to_json_dict(
    g: Graph, labels: Mapping[str, Edge] | None = None
) -> dict:
    """Graph JSON: ``{"order": n, "edges": [[u, v], ...], "labels": {...}}``."""
    payload: dict = {"order": g.order, "edges": [list(e) for e in g.edges]}
    if labels:
        payload["labels"] = {
            name: list(labels[name]) for name in sorted(labels)
        }
    return payload


def graph_from_json_dict(
    data: Mapping, require_connected: bool = False
) -> tuple[Graph, dict[str, Edge] | None]:
    try:
        order = int(data["order"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    g = build_graph(order, edges, require_connected=require_connected)
    labels = None
    if "labels" in data and data["labels"] is not None:
        labels = {}
        for name, pair in data["labels"].items():
            e = canonical_edge(int(pair[0]), int(pair[1]))
            if e not in g._edge_index:
                raise GraphError(f"label {name!r} points at missing edge {e}")
            labels[str(name)] = e
    return g, labels


def graph_to_dot(
    g: Graph,
    name: str = "G",
    edge_labels: Mapping[Edge, str] | None = None,
) -> str:
    """Render the graph in DOT format, labelling edges when names are known."""
    lines = [f'graph "{name}" {{']
    for v in range(g.order):
        lines.append(f"  {v};")
    for e in g.edges:
        u, v = e
        if edge_labels and e in edge_labels:
            lines.append(f'  {u} -- {v} [label="{edge_labels[e]}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def line_graph_to_dot(
    lm: LineGraphMap,
    name: str = "L",
    edge_labels: Mapping[Edge, str] | None = None,
) -> str:
    """Render a line graph in DOT format; vertices carry base-edge names."""

    def vertex_name(i: int) -> str:
        e = lm.base_edges[i]
        if edge_labels and e in edge_labels:
            return edge_labels[e]
        return f"{e[0]}-{e[1]}"

    lines = [f'graph "{name}" {{']
    for i in range(lm.graph.order):
        lines.append(f'  "{vertex_name(i)}";')
    for a, b in lm.graph.edges:
        lines.append(f'  "{vertex_name(a)}" -- "{vertex_name(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
