"""Shared oracles and random-graph strategies.

The oracles here deliberately use different algorithms and enumeration
orders than the library so that agreement is meaningful: frontier-set BFS
instead of queue BFS, pairwise endpoint tests instead of incidence lists,
descending bitmask powerset scans instead of level-wise lexicographic
search.
"""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from edgedrs import Graph, build_graph


def frontier_bfs(adjacency, source: int) -> dict[int, int]:
    """Layer-by-layer BFS over frontier sets; returns reached: distance."""
    dist = {source: 0}
    frontier = {source}
    d = 0
    while frontier:
        d += 1
        nxt = set()
        for u in frontier:
            for w in adjacency[u]:
                if w not in dist:
                    dist[w] = d
                    nxt.add(w)
        frontier = nxt
    return dist


def naive_line_graph_edges(edges) -> set[tuple[int, int]]:
    """Line-graph adjacencies by testing every edge pair for a shared endpoint."""
    out = set()
    for i, j in combinations(range(len(edges)), 2):
        if set(edges[i]) & set(edges[j]):
            out.add((i, j))
    return out


def dm_row_multiset(g: Graph):
    """Canonical multiset of sorted distance rows; equal for isomorphic graphs."""
    return sorted(tuple(sorted(row)) for row in g.distance_matrix.rows)


def girth(g: Graph) -> int:
    """Length of a shortest cycle: per edge, shortest path avoiding that edge."""
    best = None
    for u, v in g.edges:
        dist = {u: 0}
        frontier = {u}
        d = 0
        while frontier and v not in dist:
            d += 1
            nxt = set()
            for a in frontier:
                for b in g.adjacency[a]:
                    if (a, b) in ((u, v), (v, u)):
                        continue
                    if b not in dist:
                        dist[b] = d
                        nxt.add(b)
            frontier = nxt
        if v in dist and (best is None or dist[v] + 1 < best):
            best = dist[v] + 1
    assert best is not None, "acyclic graph has no girth"
    return best


def powerset_min_size(dm, check, minimum: int) -> int:
    """Smallest passing subset size by scanning all bitmasks in descending order."""
    n = dm.n
    best = None
    for mask in range(2**n - 1, 0, -1):
        subset = tuple(i for i in range(n) if mask >> i & 1)
        if len(subset) < minimum or (best is not None and len(subset) >= best):
            continue
        if check(dm, subset).ok:
            best = len(subset)
    assert best is not None
    return best


def random_connected_graph(rng, min_order=2, max_order=12) -> Graph:
    """Random spanning tree plus extra edges; connected by construction."""
    n = rng.randint(min_order, max_order)
    edges = {(rng.randint(0, v - 1), v) for v in range(1, n)}
    for _ in range(rng.randint(0, n)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return build_graph(n, edges, require_connected=True)


@st.composite
def connected_graphs(draw, min_order=2, max_order=12):
    n = draw(st.integers(min_order, max_order))
    edges = set()
    for v in range(1, n):
        edges.add((draw(st.integers(0, v - 1)), v))
    extras = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
            max_size=n,
        )
    )
    for u, v in extras:
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return build_graph(n, edges, require_connected=True)
