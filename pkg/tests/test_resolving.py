import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgedrs import (
    DOUBLY_RESOLVING,
    RESOLVING,
    BudgetExceededError,
    build_graph,
    doubly_resolves,
    edge_metric_dimension,
    greedy_doubly_resolving,
    is_doubly_resolving,
    is_resolving,
    labeled_set_report,
    labels_doubly_resolve_pair,
    make_path,
    make_prism,
    make_sunlet,
    metric_dimension,
    min_cardinality_search,
    psi,
    psi_edge,
    representation,
    witness_labels,
)

from conftest import connected_graphs, powerset_min_size, random_connected_graph


K3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])


# ---------------------------------------------------------------------------
# representation
# ---------------------------------------------------------------------------

def test_representation_zero_at_self():
    dm = K3.distance_matrix
    assert representation(dm, 1, (0, 1, 2)) == (1, 0, 1)


def test_representation_sunlet8_table_row():
    s = make_sunlet(8)
    dm = s.graph.line_distance_matrix
    lm = s.line_indices(("e0", "e1", "e4"))
    assert representation(dm, s.line_index("f3"), lm) == (4, 3, 1)


def test_representation_prism8_table_row():
    p = make_prism(8)
    dm = p.graph.line_distance_matrix
    lm = p.line_indices(("e0", "e3", "f5"))
    assert representation(dm, p.line_index("f0"), lm) == (1, 4, 4)


def test_representation_validates_indices():
    dm = K3.distance_matrix
    with pytest.raises(IndexError):
        representation(dm, 5, (0,))
    with pytest.raises(ValueError):
        representation(dm, 0, ())


# ---------------------------------------------------------------------------
# is_resolving
# ---------------------------------------------------------------------------

def test_full_set_is_resolving():
    for g in (K3, make_sunlet(5).graph):
        dm = g.distance_matrix
        assert is_resolving(dm, tuple(range(dm.n))).ok


def test_single_landmark_fails_on_triangle():
    report = is_resolving(K3.distance_matrix, (0,))
    assert not report.ok
    assert report.witness == (1, 2)


def test_sunlet4_line_pair_e0_e1_checked_by_brute_force():
    # dim_E(sunlet 4) is 2, but not every 2-set works; recompute from scratch.
    s = make_sunlet(4)
    dm = s.graph.line_distance_matrix
    lm = s.line_indices(("e0", "e1"))
    reps = {}
    for e in range(dm.n):
        reps.setdefault(tuple(dm[e][x] for x in lm), []).append(e)
    collides = any(len(v) > 1 for v in reps.values())
    report = is_resolving(dm, lm)
    assert report.ok == (not collides)
    assert not report.ok  # e2 and f1 share the vector (2, 1)
    u, v = report.witness
    assert tuple(dm[u][x] for x in lm) == tuple(dm[v][x] for x in lm)
    # the search still certifies dimension 2 with some other pair
    best = min_cardinality_search(dm, RESOLVING)
    assert best.cardinality == 2
    assert is_resolving(dm, best.best_set).ok


def test_resolving_witness_is_lexicographically_first():
    # representations wrt a single landmark on a star collide heavily
    star = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    report = is_resolving(star.distance_matrix, (0,))
    assert report.witness == (1, 2)


# ---------------------------------------------------------------------------
# doubly_resolves / is_doubly_resolving
# ---------------------------------------------------------------------------

def test_doubly_resolves_identical_pair_false():
    dm = K3.distance_matrix
    assert not doubly_resolves(dm, 0, 1, 2, 2)


def test_doubly_resolves_landmarks_equal_pair_true():
    dm = make_sunlet(5).graph.distance_matrix
    assert doubly_resolves(dm, 0, 4, 0, 4)


def test_doubly_resolves_requires_distinct_landmarks():
    with pytest.raises(ValueError):
        doubly_resolves(K3.distance_matrix, 1, 1, 0, 2)


def test_sunlet8_antipodal_pair_not_doubly_resolved():
    # pair {e4, e5} is blind to landmark sets {e0, ei} with 4 < i <= 7
    s = make_sunlet(8)
    dm = s.graph.line_distance_matrix
    e = {name: s.line_index(name) for name in s.line_label_order()}
    for i in (5, 6, 7):
        assert not doubly_resolves(dm, e["e0"], e[f"e{i}"], e["e4"], e["e5"])


def test_full_edge_set_is_doubly_resolving():
    for lg in (make_sunlet(5), make_prism(4)):
        dm = lg.graph.line_distance_matrix
        assert is_doubly_resolving(dm, tuple(range(dm.n))).ok


def test_sunlet8_pair_e0_e2_fails_with_confirmed_pair():
    s = make_sunlet(8)
    report = labeled_set_report(s, ("e0", "e2"))
    assert not report.ok
    # the claimed blind pair for this family of sets is {e0, e7}
    assert not labels_doubly_resolve_pair(s, ("e0", "e2"), ("e0", "e7"))
    labels = witness_labels(s, report)
    assert labels is not None
    assert not labels_doubly_resolve_pair(s, ("e0", "e2"), labels)


def test_sunlet8_reference_triple_passes():
    assert labeled_set_report(make_sunlet(8), ("e0", "e1", "e4")).ok


def test_sunlet9_reference_triple_passes():
    assert labeled_set_report(make_sunlet(9), ("e0", "e1", "e5")).ok


def test_is_doubly_resolving_needs_two_landmarks():
    with pytest.raises(ValueError):
        is_doubly_resolving(K3.distance_matrix, (0,))


# ---------------------------------------------------------------------------
# exact search
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [5, 8])
def test_path_doubly_resolving_is_the_two_ends(n):
    g = make_path(n).graph
    res = min_cardinality_search(g.distance_matrix, DOUBLY_RESOLVING)
    assert res.cardinality == 2
    assert res.best_set == (0, n - 1)
    res_e = psi_edge(g)
    assert res_e.cardinality == 2
    assert res_e.best_set == (0, n - 2)  # end edges of the path


def test_sunlet6_psi_edge_is_3():
    assert psi_edge(make_sunlet(6).graph).cardinality == 3


def test_prism6_psi_edge_is_3():
    assert psi_edge(make_prism(6).graph).cardinality == 3


def test_edge_metric_dimension_examples():
    assert edge_metric_dimension(make_sunlet(5).graph).cardinality == 3
    assert edge_metric_dimension(make_prism(7).graph).cardinality == 3
    assert psi_edge(make_sunlet(4).graph).cardinality == 3


def test_gp_5_2_edge_invariants():
    # no closed-form value exists for this one; 4 was frozen from an
    # independent exhaustive scan over all subset sizes
    from edgedrs import make_generalized_petersen

    g = make_generalized_petersen(5, 2).graph
    assert edge_metric_dimension(g).cardinality == 4
    assert psi_edge(g).cardinality == 4


def test_psi_requires_enough_elements():
    with pytest.raises(ValueError):
        psi(build_graph(1, []))
    with pytest.raises(ValueError):
        psi_edge(build_graph(2, [(0, 1)]))


def test_psi_start_at_dimension_matches():
    g = make_sunlet(8).graph
    assert psi_edge(g).cardinality == psi_edge(g, start_at_dimension=True).cardinality


def test_budget_exceeded():
    g = make_prism(8).graph
    with pytest.raises(BudgetExceededError):
        psi_edge(g, budget=10)


def test_all_optima_collects_every_optimum():
    dm = make_sunlet(6).graph.line_distance_matrix
    res = min_cardinality_search(dm, DOUBLY_RESOLVING, all_optima=True)
    assert res.all_optima[0] == res.best_set
    for s in res.all_optima:
        assert is_doubly_resolving(dm, s).ok
    # level-wise lexicographic order
    assert list(res.all_optima) == sorted(res.all_optima)
    # recount independently
    expected = sum(
        1
        for c in combinations(range(dm.n), res.cardinality)
        if is_doubly_resolving(dm, c).ok
    )
    assert len(res.all_optima) == expected


def test_search_counts_subsets():
    g = make_path(8).graph
    res = min_cardinality_search(g.distance_matrix, DOUBLY_RESOLVING)
    # pairs (0,1) .. (0,7) are tested in order; the seventh passes
    assert res.subsets_examined == 7


def test_search_result_json_shape():
    s = make_sunlet(6)
    res = psi_edge(s.graph)
    payload = res.to_json_dict(labels=s.line_label_order())
    assert payload["cardinality"] == 3
    assert set(payload) == {"cardinality", "set", "subsets_examined", "elapsed_ms"}
    assert all(isinstance(x, str) for x in payload["set"])
    assert "elapsed_ms" not in res.to_json_dict(include_timing=False)


# ---------------------------------------------------------------------------
# greedy upper bound
# ---------------------------------------------------------------------------

def test_greedy_always_passes_and_bounds_exact():
    rng = random.Random(7)
    for _ in range(25):
        g = random_connected_graph(rng, min_order=3, max_order=10)
        dm = g.distance_matrix
        picked = greedy_doubly_resolving(dm)
        assert is_doubly_resolving(dm, picked).ok
        exact = min_cardinality_search(dm, DOUBLY_RESOLVING).cardinality
        assert len(picked) >= exact


def test_greedy_vs_exact_on_prism8():
    dm = make_prism(8).graph.line_distance_matrix
    picked = greedy_doubly_resolving(dm)
    assert is_doubly_resolving(dm, picked).ok
    exact = min_cardinality_search(dm, DOUBLY_RESOLVING).cardinality
    assert exact == 3
    assert 3 <= len(picked) <= 5


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@settings(max_examples=60)
@given(connected_graphs(max_order=9), st.randoms(use_true_random=False))
def test_doubly_resolving_implies_resolving(g, rng):
    dm = g.distance_matrix
    size = rng.randint(2, dm.n)
    lm = tuple(sorted(rng.sample(range(dm.n), size)))
    if is_doubly_resolving(dm, lm).ok:
        assert is_resolving(dm, lm).ok


@settings(max_examples=50, deadline=None)
@given(connected_graphs(max_order=9), st.randoms(use_true_random=False))
def test_superset_monotonicity(g, rng):
    dm = g.distance_matrix
    # shrink the full set to a random passing set, then regrow a superset
    for check in (is_resolving, is_doubly_resolving):
        minimum = 1 if check is is_resolving else 2
        current = list(range(dm.n))
        for x in rng.sample(range(dm.n), dm.n):
            if len(current) > minimum:
                trial = [y for y in current if y != x]
                if rng.random() < 0.7 and check(dm, trial).ok:
                    current = trial
        extras = [x for x in range(dm.n) if x not in current]
        superset = sorted(current + rng.sample(extras, rng.randint(0, len(extras))))
        assert check(dm, superset).ok


@settings(max_examples=60)
@given(connected_graphs(max_order=9), st.randoms(use_true_random=False))
def test_permutation_invariance(g, rng):
    dm = g.distance_matrix
    size = rng.randint(2, dm.n)
    lm = rng.sample(range(dm.n), size)
    shuffled = lm[:]
    rng.shuffle(shuffled)
    assert is_resolving(dm, lm).ok == is_resolving(dm, shuffled).ok
    assert is_doubly_resolving(dm, lm).ok == is_doubly_resolving(dm, shuffled).ok


@settings(max_examples=60)
@given(connected_graphs(max_order=9), st.randoms(use_true_random=False))
def test_failure_witness_is_valid(g, rng):
    dm = g.distance_matrix
    size = rng.randint(2, dm.n)
    lm = tuple(rng.sample(range(dm.n), size))
    report = is_doubly_resolving(dm, lm)
    if not report.ok:
        u, v = report.witness
        for x, y in combinations(lm, 2):
            assert not doubly_resolves(dm, x, y, u, v)
    rep2 = is_resolving(dm, lm)
    if not rep2.ok:
        u, v = rep2.witness
        assert representation(dm, u, lm) == representation(dm, v, lm)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_order=2, max_order=5))
def test_search_agrees_with_powerset_oracle(g):
    if g.size > 8:
        return
    dm = g.distance_matrix
    assert (
        min_cardinality_search(dm, RESOLVING).cardinality
        == powerset_min_size(dm, is_resolving, 1)
    )
    if dm.n >= 2:
        assert (
            min_cardinality_search(dm, DOUBLY_RESOLVING).cardinality
            == powerset_min_size(dm, is_doubly_resolving, 2)
        )


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_order=2, max_order=7))
def test_best_set_is_minimal(g):
    dm = g.distance_matrix
    res = min_cardinality_search(dm, DOUBLY_RESOLVING)
    if res.cardinality <= 4:
        for smaller in combinations(res.best_set, res.cardinality - 1):
            if len(smaller) >= 2:
                assert not is_doubly_resolving(dm, smaller).ok
    assert is_doubly_resolving(dm, res.best_set).ok


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_order=2, max_order=7))
def test_dim_at_most_psi(g):
    dim = metric_dimension(g).cardinality
    p = psi(g).cardinality
    assert dim <= p
    assert p >= 2
