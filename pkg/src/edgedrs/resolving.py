"""Resolving and doubly resolving set predicates plus exact minimum search.

All predicates read an immutable :class:`~edgedrs.core.DistanceMatrix`; for
edge versions that matrix belongs to the line graph, so an element index is
a line-graph vertex (= an edge of the base graph in canonical order).

A landmark set is doubly resolving when, for every element pair ``(u, v)``,
the difference vector ``(d(u, x) - d(v, x))`` over the landmarks ``x`` is
not constant.  This is equivalent to the usual "some two landmarks tell the
pair apart" phrasing: two landmarks x, y give different differences exactly
when the vector takes two values, and a constant vector means no pair of
landmarks does.  Checking non-constancy is O(|landmarks|) per pair.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Literal, Mapping, Sequence

from .core import DistanceMatrix, Graph
from .families import LabeledGraph

RESOLVING: Literal["resolving"] = "resolving"
DOUBLY_RESOLVING: Literal["doubly-resolving"] = "doubly-resolving"

Predicate = Literal["resolving", "doubly-resolving"]

DEFAULT_BUDGET = 10**8


class BudgetExceededError(Exception):
    """The search examined more candidate subsets than the budget allows."""

    def __init__(self, budget: int, cardinality: int):
        super().__init__(
            f"subset budget {budget} exhausted while testing {cardinality}-subsets"
        )
        self.budget = budget
        self.cardinality = cardinality


@dataclass(frozen=True)
class ResolveReport:
    """Verdict of a set check; a witness pair is present exactly on failure."""

    ok: bool
    witness: tuple[int, int] | None = None


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exact minimum-cardinality search."""

    cardinality: int
    best_set: tuple[int, ...]
    all_optima: tuple[tuple[int, ...], ...] | None
    subsets_examined: int
    elapsed: float

    def to_json_dict(
        self,
        labels: Sequence[str] | None = None,
        include_timing: bool = True,
    ) -> dict:
        def name(i: int):
            return labels[i] if labels is not None else i

        payload: dict = {
            "cardinality": self.cardinality,
            "set": [name(i) for i in self.best_set],
            "subsets_examined": self.subsets_examined,
        }
        if self.all_optima is not None:
            payload["all_optima"] = [[name(i) for i in s] for s in self.all_optima]
        if include_timing:
            payload["elapsed_ms"] = round(self.elapsed * 1000.0, 3)
        return payload


def _check_element(dm: DistanceMatrix, i: int) -> None:
    if not 0 <= i < dm.n:
        raise IndexError(f"element index {i} outside [0, {dm.n})")


def _check_landmarks(dm: DistanceMatrix, landmarks: Sequence[int], minimum: int) -> None:
    if len(landmarks) < minimum:
        raise ValueError(f"need at least {minimum} landmark(s), got {len(landmarks)}")
    if len(set(landmarks)) != len(landmarks):
        raise ValueError("landmark elements must be distinct")
    for x in landmarks:
        _check_element(dm, x)


def representation(
    dm: DistanceMatrix, element: int, landmarks: Sequence[int]
) -> tuple[int, ...]:
    """Coordinate vector of ``element``: its distance to each landmark in order."""
    _check_element(dm, element)
    _check_landmarks(dm, landmarks, 1)
    row = dm[element]
    return tuple(row[x] for x in landmarks)


def is_resolving(dm: DistanceMatrix, landmarks: Sequence[int]) -> ResolveReport:
    """Do all elements get distinct coordinate vectors?

    On failure the witness is the lexicographically first colliding pair.
    """
    _check_landmarks(dm, landmarks, 1)
    classes: dict[tuple[int, ...], list[int]] = {}
    for e in range(dm.n):
        row = dm[e]
        classes.setdefault(tuple(row[x] for x in landmarks), []).append(e)
    collided = [members for members in classes.values() if len(members) > 1]
    if not collided:
        return ResolveReport(True)
    first = min(collided, key=lambda members: members[0])
    return ResolveReport(False, (first[0], first[1]))


def doubly_resolves(dm: DistanceMatrix, x: int, y: int, u: int, v: int) -> bool:
    """Do landmarks ``x, y`` tell the pair ``u, v`` apart by distance differences?"""
    if x == y:
        raise ValueError("doubly resolving needs two distinct landmarks")
    for i in (x, y, u, v):
        _check_element(dm, i)
    return dm[u][x] - dm[u][y] != dm[v][x] - dm[v][y]


def is_doubly_resolving(dm: DistanceMatrix, landmarks: Sequence[int]) -> ResolveReport:
    """Is every element pair's difference vector over the landmarks non-constant?

    On failure the witness is the lexicographically first pair whose
    difference vector is constant.
    """
    _check_landmarks(dm, landmarks, 2)
    first = landmarks[0]
    rest = landmarks[1:]
    for u in range(dm.n):
        row_u = dm[u]
        for v in range(u + 1, dm.n):
            row_v = dm[v]
            d0 = row_u[first] - row_v[first]
            if all(row_u[x] - row_v[x] == d0 for x in rest):
                return ResolveReport(False, (u, v))
    return ResolveReport(True)


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------

def _resolving_tester(dm: DistanceMatrix) -> Callable[[tuple[int, ...]], bool]:
    rows = dm.rows
    n = dm.n

    def passes(subset: tuple[int, ...]) -> bool:
        return len(set(zip(*(rows[x] for x in subset)))) == n

    return passes


def _doubly_resolving_tester(dm: DistanceMatrix) -> Callable[[tuple[int, ...]], bool]:
    # For landmarks x, y let EQ[x][y] be the bitmask of element pairs whose
    # distance differences agree at x and y.  A subset fails exactly when
    # some pair agrees across all its landmarks, i.e. when the intersection
    # of EQ[first][other] over the other landmarks is nonempty.
    n = dm.n
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    cols = []
    for x in range(n):
        cols.append([dm[u][x] - dm[v][x] for u, v in pairs])
    npairs = len(pairs)
    eq = [[0] * n for _ in range(n)]
    for x in range(n):
        cx = cols[x]
        for y in range(x + 1, n):
            cy = cols[y]
            mask = 0
            bit = 1
            for p in range(npairs):
                if cx[p] == cy[p]:
                    mask |= bit
                bit <<= 1
            eq[x][y] = mask
            eq[y][x] = mask

    def passes(subset: tuple[int, ...]) -> bool:
        first = subset[0]
        eq_first = eq[first]
        acc = eq_first[subset[1]]
        for x in subset[2:]:
            if acc == 0:
                return True
            acc &= eq_first[x]
        return acc == 0

    return passes


def min_cardinality_search(
    dm: DistanceMatrix,
    predicate: Predicate,
    start_k: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    all_optima: bool = False,
) -> SearchResult:
    """Smallest landmark set passing the predicate, by level-wise enumeration.

    Level ``k`` enumerates all k-subsets in lexicographic order, so the
    returned set is the lexicographically first optimum and no smaller set
    passes.  ``subsets_examined`` counts predicate evaluations across all
    levels; crossing ``budget`` raises :class:`BudgetExceededError`.
    """
    if predicate == RESOLVING:
        minimum = 1
        passes = _resolving_tester(dm)
    elif predicate == DOUBLY_RESOLVING:
        minimum = 2
        passes = _doubly_resolving_tester(dm)
    else:
        raise ValueError(f"unknown predicate {predicate!r}")
    k0 = max(minimum, start_k if start_k is not None else minimum)
    started = time.perf_counter()
    examined = 0
    for k in range(k0, dm.n + 1):
        hits: list[tuple[int, ...]] = []
        for subset in combinations(range(dm.n), k):
            examined += 1
            if examined > budget:
                raise BudgetExceededError(budget, k)
            if passes(subset):
                if not all_optima:
                    return SearchResult(
                        k, subset, None, examined, time.perf_counter() - started
                    )
                hits.append(subset)
        if hits:
            return SearchResult(
                k, hits[0], tuple(hits), examined, time.perf_counter() - started
            )
    raise ValueError(
        f"no {predicate} set exists; the matrix has only {dm.n} element(s)"
    )


def metric_dimension(g: Graph, **kwargs) -> SearchResult:
    """Minimum resolving set size over the graph's vertices."""
    return min_cardinality_search(g.distance_matrix, RESOLVING, **kwargs)


def edge_metric_dimension(g: Graph, **kwargs) -> SearchResult:
    """Minimum resolving set size over edges, i.e. in the line graph."""
    return min_cardinality_search(g.line_distance_matrix, RESOLVING, **kwargs)


def psi(g: Graph, *, start_at_dimension: bool = False, **kwargs) -> SearchResult:
    """Minimum doubly resolving set size over vertices (always >= 2).

    With ``start_at_dimension`` the search starts at max(2, metric
    dimension), a valid lower bound since a doubly resolving set resolves.
    """
    if g.order < 2:
        raise ValueError("doubly resolving sets need at least 2 vertices")
    start_k = 2
    if start_at_dimension:
        start_k = max(2, metric_dimension(g, **kwargs).cardinality)
    return min_cardinality_search(
        g.distance_matrix, DOUBLY_RESOLVING, start_k, **kwargs
    )


def psi_edge(g: Graph, *, start_at_dimension: bool = False, **kwargs) -> SearchResult:
    """Minimum doubly resolving set size over edges, i.e. in the line graph."""
    if g.size < 2:
        raise ValueError("edge doubly resolving sets need at least 2 edges")
    start_k = 2
    if start_at_dimension:
        start_k = max(2, edge_metric_dimension(g, **kwargs).cardinality)
    return min_cardinality_search(
        g.line_distance_matrix, DOUBLY_RESOLVING, start_k, **kwargs
    )


# ---------------------------------------------------------------------------
# Greedy upper bound
# ---------------------------------------------------------------------------

def greedy_doubly_resolving(dm: DistanceMatrix) -> tuple[int, ...]:
    """Set-cover style heuristic: a doubly resolving set, pruned to minimality.

    Each step adds the landmark that newly separates the most still-constant
    pairs (ties to the lowest index), then single-element removals that keep
    the set valid are applied.  The result always passes
    :func:`is_doubly_resolving`; it is an upper bound for the exact optimum.
    """
    n = dm.n
    if n < 2:
        raise ValueError("need at least 2 elements")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen: list[int] = []
    # pair index -> common difference over chosen landmarks; resolved pairs drop out
    pending: dict[int, int] = {}
    unseeded = True
    while True:
        if not unseeded and not pending:
            break
        best_x = -1
        best_gain = -1
        for x in range(n):
            if x in chosen:
                continue
            if unseeded:
                gain = 0
            else:
                gain = 0
                for p, common in pending.items():
                    u, v = pairs[p]
                    if dm[u][x] - dm[v][x] != common:
                        gain += 1
            if gain > best_gain:
                best_gain = gain
                best_x = x
        if unseeded:
            chosen.append(best_x)
            for p, (u, v) in enumerate(pairs):
                pending[p] = dm[u][best_x] - dm[v][best_x]
            unseeded = False
            continue
        assert best_gain > 0, "greedy stalled; full element set must resolve"
        chosen.append(best_x)
        for p in [p for p, common in pending.items()
                  if dm[pairs[p][0]][best_x] - dm[pairs[p][1]][best_x] != common]:
            del pending[p]
    result = sorted(chosen)
    for x in list(result):
        if len(result) > 2:
            trial = [y for y in result if y != x]
            if is_doubly_resolving(dm, trial).ok:
                result = trial
    return tuple(result)


# ---------------------------------------------------------------------------
# Label-level helpers for family instances
# ---------------------------------------------------------------------------

def labeled_set_report(lg: LabeledGraph, labels: Sequence[str]) -> ResolveReport:
    """Run the edge doubly-resolving check on a set given by edge labels."""
    dm = lg.graph.line_distance_matrix
    return is_doubly_resolving(dm, lg.line_indices(labels))


def labels_doubly_resolve_pair(
    lg: LabeledGraph, landmark_labels: Sequence[str], pair: Sequence[str]
) -> bool:
    """Does some landmark pair separate the two named edges?

    Used to confirm a claimed witness: the claim holds when this is False.
    """
    dm = lg.graph.line_distance_matrix
    lm = lg.line_indices(landmark_labels)
    u, v = lg.line_indices(pair)
    d0 = dm[u][lm[0]] - dm[v][lm[0]]
    return any(dm[u][x] - dm[v][x] != d0 for x in lm[1:])


def witness_labels(lg: LabeledGraph, report: ResolveReport) -> tuple[str, str] | None:
    """Translate a line-graph witness pair back to edge labels."""
    if report.witness is None:
        return None
    u, v = report.witness
    return lg.label_of_line_index(u), lg.label_of_line_index(v)
