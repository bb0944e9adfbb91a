import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psl.corpus import complete, path
from psl.graph import build_graph
from psl.labeling import (
    ANY_RATIO,
    DisconnectedGraphError,
    InvalidLabelingError,
    Labeling,
    NotProgressionError,
    PredictionError,
    characteristic_index,
    classify,
    edge_label,
    is_geometric,
    is_isogeometric,
    is_like_geometric,
    is_set_indexer,
    is_strong,
    is_strong_via_quotients,
    is_uniform,
    predicted_edge_size,
    size_partition,
    validate_labeling,
)

from conftest import HAND_C4_GRAPH, HAND_C4_LABELS


def K2(a, b):
    return Labeling({"a": a, "b": b})


def brute_size(a, b):
    return len({x * y for x in a for y in b})


# validation --------------------------------------------------------------------

def test_validate_examples(k2):
    assert validate_labeling(k2, K2([1, 2], [3, 6])).ok
    res = validate_labeling(k2, {"a": [1, 2], "b": [1, 2]})
    assert [d.code for d in res.diagnostics] == ["duplicate_label"]
    assert res.diagnostics[0].vertices == ("a", "b")
    res = validate_labeling(k2, {"a": [1, 2]})
    assert [d.code for d in res.diagnostics] == ["missing_vertex"]


def test_validate_lists_every_problem(p3):
    res = validate_labeling(p3, {"a": ["1", "x"], "b": [], "z": [4]})
    codes = sorted(d.code for d in res.diagnostics)
    assert codes == ["malformed_label", "malformed_label", "missing_vertex", "unknown_vertex"]


def test_predicates_reject_invalid(k2):
    bad = Labeling({"a": [1, 2], "b": [1, 2]})
    for fn in (is_set_indexer, is_uniform, is_strong, is_strong_via_quotients, is_geometric, is_isogeometric):
        with pytest.raises(InvalidLabelingError):
            fn(k2, bad)


# edge labels, indexers, uniformity -----------------------------------------------

def test_edge_label_examples():
    assert edge_label(Labeling({"u": [1, 2], "v": [1, 4]}), "u", "v").elements == (1, 2, 4, 8)
    assert edge_label(Labeling({"u": [1], "v": [3, 6]}), "u", "v").elements == (3, 6)
    assert edge_label(Labeling({"u": [2, 4], "v": [3, 6]}), "u", "v").elements == (6, 12, 24)
    with pytest.raises(KeyError):
        edge_label(Labeling({"u": [1]}), "u", "v")


def test_set_indexer_examples(k2, p3):
    assert is_set_indexer(k2, K2([1, 2], [3, 6]))
    f = Labeling({"a": [2], "b": [3], "c": [2, 3]})
    assert [edge_label(f, u, v).elements for u, v in p3.edges] == [(6,), (6, 9)]
    assert is_set_indexer(p3, f)
    with pytest.raises(InvalidLabelingError):
        is_set_indexer(p3, Labeling({"a": [2], "b": [5], "c": [2]}))


def test_set_indexer_detects_repeated_edge_label():
    # distinct labels, equal products: {1}*{6} == {2}*{3}
    g = build_graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
    f = Labeling({"a": [1], "b": [6], "c": [2], "d": [3]})
    assert not is_set_indexer(g, f)


def test_uniform_examples(k2, p3):
    assert is_uniform(HAND_C4_GRAPH, Labeling(HAND_C4_LABELS)) == 4
    assert is_uniform(k2, K2([1, 2], [3, 6])) == 3
    f = Labeling({"a": [1], "b": [2, 3], "c": [4, 5, 7]})
    assert [brute_size(f[u], f[v]) for u, v in p3.edges] == [2, 6]
    assert is_uniform(p3, f) is None


# strong ------------------------------------------------------------------------

@pytest.mark.parametrize(
    "a, b, strong",
    [([2, 3], [5, 7], True), ([2, 4], [3, 6], False), ([1], [9], True)],
)
def test_strong_examples(k2, a, b, strong):
    f = K2(a, b)
    assert (brute_size(a, b) == len(a) * len(b)) == strong
    assert is_strong(k2, f) == strong
    assert is_strong_via_quotients(k2, f) == strong


label_sets = st.sets(st.integers(1, 60), min_size=1, max_size=4)


@settings(max_examples=300)
@given(st.lists(label_sets, min_size=3, max_size=3, unique_by=lambda s: tuple(sorted(s))))
def test_strong_routes_agree_on_triangles(labels):
    g = complete(3)
    f = Labeling(dict(zip(g.vertices, labels)))
    assert is_strong(g, f) == is_strong_via_quotients(g, f)


@settings(max_examples=300)
@given(label_sets, label_sets)
def test_edge_size_within_bounds(a, b):
    if set(a) == set(b):
        return
    rep = classify(build_graph(["a", "b"], [("a", "b")]), K2(sorted(a), sorted(b)))
    e = rep.per_edge[0]
    assert e.lower_bound <= e.label_size <= e.upper_bound
    assert e.label_size == brute_size(a, b)


# geometric ---------------------------------------------------------------------

@pytest.mark.parametrize(
    "a, b, geometric",
    [([2, 4], [3, 12, 48], True), ([2, 4], [3, 24], False), ([5], [7], True)],
)
def test_geometric_examples(k2, a, b, geometric):
    assert is_geometric(k2, K2(a, b)) == geometric


def test_geometric_example_expansions():
    assert edge_label(K2([2, 4], [3, 12, 48]), "a", "b").elements == (6, 12, 24, 48, 96, 192)
    assert edge_label(K2([2, 4], [3, 24]), "a", "b").elements == (6, 12, 48, 96)


@pytest.mark.parametrize(
    "a, b, k",
    [([2, 4], [3, 12, 48], 2), ([2, 4], [3, 6], 1), ([2, 4], [5, 60], None), ([7], [3, 9], 1)],
)
def test_characteristic_index_examples(a, b, k):
    f = K2(a, b)
    assert characteristic_index(f, "a", "b") == k
    assert characteristic_index(f, "b", "a") == k


def test_characteristic_index_needs_progressions():
    with pytest.raises(NotProgressionError):
        characteristic_index(K2([2, 4, 7], [3, 6]), "a", "b")


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("m", range(2, 6))
@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("k", range(1, 8))
def test_edge_is_gp_iff_index_at_most_size(r, m, n, k):
    a = [r**i for i in range(m)]
    b = [5 * r ** (k * j) for j in range(n)]
    edge = sorted({x * y for x in a for y in b})
    brute_gp = all(edge[i + 1] * edge[0] == edge[i] * edge[1] for i in range(1, len(edge) - 1))
    assert brute_gp == (k <= m)
    assert is_geometric(build_graph(["a", "b"], [("a", "b")]), K2(a, b)) == (k <= m)
    if k <= m:
        assert len(edge) == m + k * (n - 1)
        assert predicted_edge_size(K2(a, b), "a", "b") == len(edge)


# isogeometric / like-geometric ---------------------------------------------------

def test_isogeometric_examples(k2, k3):
    f = Labeling({"a": [1, 2], "b": [3, 6], "c": [5, 10]})
    assert [edge_label(f, u, v).elements for u, v in k3.edges] == [(3, 6, 12), (5, 10, 20), (15, 30, 60)]
    assert is_isogeometric(k3, f) == Fraction(2)
    assert is_isogeometric(k2, K2([2, 4], [3, 12, 48])) is None
    assert is_isogeometric(k2, K2([1, 2], [3, 6])) == Fraction(2)


def test_isogeometric_singletons(k2):
    assert is_isogeometric(k2, K2([5], [7])) is ANY_RATIO
    assert is_isogeometric(k2, K2([5], [3, 6])) == Fraction(2)


def test_like_geometric_examples(k2, k3):
    assert is_like_geometric(HAND_C4_GRAPH, Labeling(HAND_C4_LABELS)) == 2
    assert is_like_geometric(k3, Labeling({"a": [1, 2], "b": [3, 6], "c": [5, 10]})) is None
    assert is_like_geometric(k2, K2([2, 4], [5, 60])) is None


def test_isogeometric_implies_minimal_edges():
    rng = random.Random(5)
    for _ in range(50):
        g = complete(rng.randint(2, 5))
        sizes = {v: rng.randint(1, 4) for v in g.vertices}
        f = Labeling({v: [(2 * i + 1) * 3**j for j in range(sizes[v])] for i, v in enumerate(g.vertices)})
        assert is_isogeometric(g, f) in (Fraction(3), ANY_RATIO)
        for u, v in g.edges:
            assert len(edge_label(f, u, v)) == sizes[u] + sizes[v] - 1
            assert characteristic_index(f, u, v) == 1


# edge-size formula ---------------------------------------------------------------

def test_predicted_edge_size_examples():
    f = Labeling({"u": [1, 2, 4, 8], "v": [3, 12]})
    assert edge_label(f, "u", "v").elements == (3, 6, 12, 24, 48, 96)
    assert predicted_edge_size(f, "u", "v") == 6
    f = Labeling({"u": [1, 2], "v": [1, 4]})
    assert predicted_edge_size(f, "u", "v") == 4 == brute_size([1, 2], [1, 4])
    f = Labeling({"u": [2, 4], "v": [3, 6]})
    assert predicted_edge_size(f, "u", "v") == 3 == brute_size([2, 4], [3, 6])


def test_predicted_edge_size_errors():
    with pytest.raises(PredictionError) as e:
        predicted_edge_size(Labeling({"u": [2, 4], "v": [5, 60]}), "u", "v")
    assert e.value.reason == "no_index"
    with pytest.raises(PredictionError) as e:
        predicted_edge_size(Labeling({"u": [2, 4], "v": [3, 24]}), "u", "v")
    assert e.value.reason == "index_exceeds_size"
    with pytest.raises(PredictionError) as e:
        predicted_edge_size(Labeling({"u": [3, 12], "v": [1, 2]}), "u", "v")
    assert e.value.reason == "orientation"


def test_predicted_edge_size_singletons():
    assert predicted_edge_size(Labeling({"u": [7], "v": [1, 3, 9]}), "u", "v") == 3
    assert predicted_edge_size(Labeling({"u": [1, 3, 9], "v": [7]}), "u", "v") == 3


# classify ----------------------------------------------------------------------

def test_classify_hand_written_c4():
    rep = classify(HAND_C4_GRAPH, HAND_C4_LABELS)
    assert rep.valid and rep.strong and rep.strong_via_quotients and rep.geometric
    assert rep.uniform == 4 and rep.like_geometric == 2 and rep.isogeometric is None
    assert [e.characteristic_index for e in rep.per_edge] == [2, 2, 2, 2]
    assert rep.diagnostics == ()


def test_classify_isogeometric_k3(k3):
    rep = classify(k3, {"a": [1, 2], "b": [3, 6], "c": [5, 10]})
    assert rep.valid and rep.geometric and rep.uniform == 3 and not rep.strong
    assert rep.isogeometric == Fraction(2)
    assert rep.to_json()["isogeometric"] == "2/1"


def test_classify_invalid(k2):
    rep = classify(k2, {"a": [1, 2], "b": [1, 2]})
    assert not rep.valid and rep.diagnostics
    j = rep.to_json()
    assert j["uniform"] is None and j["isogeometric"] is None and not j["strong"]


def test_classify_is_deterministic(k3):
    labels = {"a": [1, 2], "b": [3, 6], "c": [5, 10]}
    assert classify(k3, labels) == classify(k3, dict(reversed(list(labels.items()))))


def test_classify_flags_disconnected():
    g = build_graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
    rep = classify(g, {"a": [1], "b": [2], "c": [3], "d": [5]})
    assert rep.valid
    assert [d.code for d in rep.diagnostics] == ["disconnected_graph"]


def test_report_invariants_random():
    rng = random.Random(9)
    for _ in range(300):
        g = path(rng.randint(2, 5))
        pool = [tuple(sorted(rng.sample(range(1, 30), rng.randint(1, 3)))) for _ in range(20)]
        pool = list(dict.fromkeys(pool))
        if len(pool) < len(g.vertices):
            continue
        f = dict(zip(g.vertices, rng.sample(pool, len(g.vertices))))
        rep = classify(g, f)
        assert rep.strong == rep.strong_via_quotients
        if rep.isogeometric is not None or rep.like_geometric is not None:
            assert rep.geometric
        if rep.strong:
            assert all(e.label_size == e.upper_bound for e in rep.per_edge)


# vertex-size pattern -----------------------------------------------------------

def test_size_partition():
    g = path(3)
    assert size_partition(g, Labeling({"a": [1, 2], "b": [3, 6], "c": [5, 10]})) == "equal"
    assert size_partition(g, Labeling({"a": [1, 2], "b": [3, 6, 12], "c": [5, 10]})) == "bipartite"
    assert size_partition(g, Labeling({"a": [1], "b": [3, 6, 12], "c": [5, 10]})) is None
    with pytest.raises(DisconnectedGraphError):
        size_partition(build_graph("abcd", [("a", "b"), ("c", "d")]), Labeling({v: [i + 1] for i, v in enumerate("abcd")}))


def test_isogeometric_uniform_iff_size_pattern():
    # exhaustive over sizes 1..3 on small connected graphs
    from itertools import product

    for g in (path(3), path(4), complete(3), build_graph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])):
        for sizes in product(range(1, 4), repeat=len(g.vertices)):
            f = Labeling({v: [(2 * i + 1) * 2**j for j in range(s)] for i, (v, s) in enumerate(zip(g.vertices, sizes))})
            assert is_isogeometric(g, f) is not None
            assert (is_uniform(g, f) is not None) == (size_partition(g, f) is not None), sizes


def test_like_geometric_uniformity_needs_two_ratio_classes():
    """Like-geometric labelings whose ratios climb 2, 4, 16 along a path.

    Uniformity then does not follow the per-side size pattern: sizes 4, 2, 3
    give a uniform labeling without constant sides, and sizes 3, 2, 3 keep
    the sides constant but are not uniform. The pattern only governs
    labelings with one ratio per side, as built by the constructors.
    """
    g = path(3)
    f = Labeling({"a": [2**i for i in range(4)], "b": [3 * 4**j for j in range(2)], "c": [5 * 16**j for j in range(3)]})
    assert is_like_geometric(g, f) == 2
    assert is_uniform(g, f) == 6
    assert size_partition(g, f) is None

    f = Labeling({"a": [2**i for i in range(3)], "b": [3 * 4**j for j in range(2)], "c": [5 * 16**j for j in range(3)]})
    assert is_like_geometric(g, f) == 2
    assert size_partition(g, f) == "bipartite"
    assert is_uniform(g, f) is None
    assert [len(edge_label(f, u, v)) for u, v in g.edges] == [5, 6]
