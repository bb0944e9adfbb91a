import json
from fractions import Fraction
from itertools import combinations

import pytest

from psl import oracle
from psl.corpus import complete, cycle, path, star
from psl.graph import build_graph
from psl.oracle import (
    OracleVerdict,
    SearchBudget,
    check_geometric_characterization,
    check_prop3,
    check_thm1,
    check_thm2,
    check_thm3,
    check_thm4,
    enumerate_label_sets,
    enumerate_progressions,
    replay,
    search_like_geometric,
)
from psl.labeling import Labeling, is_like_geometric
from psl.setalgebra import LabelSet, is_minimal_product_pair, same_ratio_progressions


def nonstrict_quotient(a):
    """Quotient set built from pairs with x >= y, so 1 is always present."""
    return frozenset(Fraction(x, y) for x in a for y in a if x >= y)


def off_by_one_bounds(a, b):
    return len(a) + len(b), len(a) * len(b)


# budgets and enumeration -------------------------------------------------------

def test_budget_validation():
    for kw in ({"universe_max": 1, "max_set_size": 1}, {"universe_max": 5, "max_set_size": 0},
               {"universe_max": 5, "max_set_size": 2, "min_set_size": 3},
               {"universe_max": 5, "max_set_size": 2, "max_samples": -1}):
        with pytest.raises(ValueError):
            SearchBudget(**kw)


def test_enumerate_examples():
    assert [s.elements for s in enumerate_label_sets(SearchBudget(3, 1))] == [(1,), (2,), (3,)]
    assert len(list(enumerate_label_sets(SearchBudget(3, 3)))) == 7
    assert len(list(enumerate_label_sets(SearchBudget(4, 2)))) == 10
    out = [s.elements for s in enumerate_label_sets(SearchBudget(4, 3, min_set_size=2))]
    assert out == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


@pytest.mark.parametrize("universe, lo, hi", [(30, 1, 4), (64, 2, 5), (20, 3, 3)])
def test_enumerate_progressions_matches_subsets(universe, lo, hi):
    got = sorted(d.expand().elements for d in enumerate_progressions(universe, lo, hi))
    assert len(got) == len(set(got))
    want = []
    for size in range(lo, min(hi, universe) + 1):
        for c in combinations(range(1, universe + 1), size):
            if all(c[i + 1] * c[0] == c[i] * c[1] for i in range(1, size - 1)):
                want.append(c)
    assert got == sorted(want)


# pass at small budgets ---------------------------------------------------------

def test_bounds_sweep_small():
    v = check_thm1(SearchBudget(6, 3))
    n = 6 + 15 + 20
    assert v.passed and v.checked == n * (n + 1) // 2
    assert v.details["mode"] == "exhaustive"


def test_bounds_sweep_sampled_is_seeded():
    b = SearchBudget(200, 5, max_samples=500, seed=3)
    a, c = check_thm1(b), check_thm1(b)
    assert a.passed and a.checked == 500
    assert json.dumps(a.to_json(stable=True)) == json.dumps(c.to_json(stable=True))


def test_minimal_pair_examples():
    for x, y in (([2, 4], [3, 6]), ([2, 4], [3, 9])):
        x, y = LabelSet(x), LabelSet(y)
        assert is_minimal_product_pair(x, y) == same_ratio_progressions(x, y)
    assert is_minimal_product_pair(LabelSet([2, 4]), LabelSet([3, 6]))
    assert not is_minimal_product_pair(LabelSet([2, 4]), LabelSet([3, 9]))


def test_minimal_pair_sweep_small_and_sampled():
    v = check_thm2(SearchBudget(12, 4, min_set_size=1))
    n = sum(len(list(combinations(range(12), k))) for k in range(1, 5))
    assert v.passed and v.checked == n * (n + 1) // 2
    assert check_thm2(SearchBudget(100, 4, max_samples=2000, seed=1)).passed


@pytest.mark.parametrize("g", [build_graph("ab", [("a", "b")]), path(3), cycle(3)], ids=["K2", "P3", "C3"])
def test_quotient_sweep_small(g):
    v = check_thm3(SearchBudget(7, 3), g)
    assert v.passed
    n = 7 + 21 + 35
    expected = 1
    for i in range(len(g.vertices)):
        expected *= n - i
    assert v.checked == expected


def test_quotient_sweep_sampled_c3():
    v = check_thm3(oracle.DEFAULT_BUDGETS["thm3_sampled"], cycle(3))
    assert v.passed and v.checked == 10_000 and v.details["mode"] == "sampled"


def test_geometric_checks():
    v = check_geometric_characterization()
    assert v.passed and v.checked > 2 * 4 * 4 * 7
    assert check_thm4().passed


def test_geomchar_examples():
    fam = {(r, m, n, k): f for r, m, n, k, f in oracle.geometric_family((2,), 3, 3, 3)}
    g = build_graph(["u", "v"], [("u", "v")])
    from psl.labeling import classify

    rep = classify(g, fam[(2, 2, 3, 2)])
    assert rep.geometric and rep.strong
    assert not classify(g, fam[(2, 2, 2, 3)]).geometric
    ctl = Labeling({"u": [2, 4], "v": [5, 60]})
    assert not classify(g, ctl).geometric


def test_edge_size_sweep_small():
    v = check_prop3(SearchBudget(40, 4))
    assert v.passed and v.checked > 1000 and v.details["skipped"] > 0


# like-geometric search ---------------------------------------------------------

def test_search_k2_and_c4():
    v = search_like_geometric(build_graph("ab", [("a", "b")]))
    assert v.passed and v.details["found"]
    v = search_like_geometric(cycle(4), exponent_max=2, size_max=2)
    assert v.passed and v.details["found"]
    f = Labeling(v.details["witness"]["assignments"])
    assert is_like_geometric(cycle(4), f) == v.details["like_geometric_index"]


def test_search_c3_none():
    v = search_like_geometric(cycle(3))
    assert v.passed and not v.details["found"] and v.details["complete"]
    assert v.checked == 9**3
    assert v.details["odd_cycle"] == ["a", "b", "c"]


def test_search_budget_exhaustion_is_reported():
    v = search_like_geometric(cycle(3), max_candidates=10)
    assert v.verdict == "inconclusive" and not v.details["complete"] and v.checked == 10


def test_search_finds_star():
    assert search_like_geometric(star(3), exponent_max=2, size_max=2).details["found"]


# negative controls -------------------------------------------------------------

def test_corrupted_bounds_fail_and_replay():
    v = check_thm1(SearchBudget(6, 2), bounds=off_by_one_bounds)
    assert v.verdict == "fail"
    assert v.counterexample["inputs"] == {"a": ["1"], "b": ["1"]}
    assert replay(v, bounds=off_by_one_bounds)
    assert not replay(v)


def test_nonstrict_quotient_fails_and_replays():
    v = check_thm3(SearchBudget(5, 2), build_graph("ab", [("a", "b")]), quotient=nonstrict_quotient)
    assert v.verdict == "fail"
    assert v.counterexample["expected"] == {"strong": True}
    assert v.counterexample["actual"] == {"quotient_sets_disjoint": False}
    assert replay(v, quotient=nonstrict_quotient)
    assert not replay(v)


def test_nonstrict_quotient_fails_sampled():
    b = SearchBudget(10, 3, max_samples=100, seed=7)
    assert check_thm3(b, cycle(3), quotient=nonstrict_quotient).verdict == "fail"


def test_no_phantom_counterexamples():
    fake = OracleVerdict("thm2", 1, "fail", {"inputs": {"a": ["2", "4"], "b": ["3", "6"]}})
    assert not replay(fake)
    fake = OracleVerdict("thm3", 1, "fail", {"inputs": {"graph": {"vertices": ["a", "b"], "edges": [["a", "b"]]},
                                                        "labeling": {"assignments": {"a": ["1"], "b": ["2"]}}}})
    assert not replay(fake)
    assert not replay(check_thm1(SearchBudget(4, 2)))


def test_verdict_invariant():
    with pytest.raises(ValueError):
        OracleVerdict("thm1", 1, "fail")
    with pytest.raises(ValueError):
        OracleVerdict("thm1", 1, "pass", {"inputs": {}})


# determinism -------------------------------------------------------------------

@pytest.mark.parametrize(
    "run",
    [
        lambda: check_thm1(SearchBudget(8, 2)),
        lambda: check_thm2(SearchBudget(10, 3)),
        lambda: check_thm3(SearchBudget(10, 3, max_samples=300, seed=11), complete(4)),
        lambda: check_prop3(SearchBudget(30, 3, max_samples=200, seed=5)),
        lambda: search_like_geometric(path(3), exponent_max=2, size_max=2),
        lambda: check_thm3(SearchBudget(5, 2), build_graph("ab", [("a", "b")]), quotient=nonstrict_quotient),
    ],
    ids=["bounds", "minimal-pairs", "quotients-sampled", "edge-size-sampled", "like-geometric-search", "quotient-control"],
)
def test_stable_json(run):
    a, b = run(), run()
    assert json.dumps(a.to_json(stable=True), sort_keys=True) == json.dumps(b.to_json(stable=True), sort_keys=True)
    assert a.to_json(stable=True)["elapsed_ms"] is None
