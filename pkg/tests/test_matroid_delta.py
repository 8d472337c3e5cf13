import pytest

from multimatroid import expansions as ex
from multimatroid.core import MultimatroidError
from multimatroid.generators import random_delta_matroid, random_matroid
from multimatroid.matroid_delta import (
    DeltaMatroid,
    Matroid,
    delta_from_lift,
    delta_weights,
    kochol_cocompatible_agreement,
    lift_delta,
    lift_matroid,
    partition_report,
    project,
    tutte_via_transition,
)
from multimatroid.poly import Polynomial

x, y, w, t = (Polynomial.var(v) for v in ("x", "y", "w", "t"))


def sets(*groups):
    return {frozenset(g) for g in groups}


def test_u12(example):
    M = example("u12")
    assert M.tutte_rank_def() == x + y
    assert M.tutte_activities() == x + y
    assert M.kochol_expansion() == x + y
    assert M.kochol_sets() == sets("", "ab")


def test_triangle(example):
    M = example("triangle")
    want = x * x + x + y
    for order in (None, ["c", "b", "a"], ["b", "a", "c"]):
        assert M.tutte_activities(order) == want
        assert M.kochol_expansion(order) == want
        assert len(M.kochol_sets(order)) == len(M.bases())
    assert M.tutte_rank_def() == want
    assert M.circuits() == sets("abc")
    assert M.dual().bases() == sets("a", "b", "c")


def test_coloop_and_loop():
    M = Matroid(["a", "b"], [["a"]])
    assert M.tutte_rank_def() == x * y
    assert M.tutte_activities() == x * y


def test_matroid_activities(example):
    M = example("triangle")
    i, e = M.activities(["a", "b"], ["a", "b", "c"])
    assert i == {"a", "b"} and e == set()
    i, e = M.activities(["b", "c"], ["a", "b", "c"])
    assert i == set() and e == {"a"}


def test_crapo_intervals_partition(example):
    M = example("triangle")
    rep = partition_report(M.elements, M.crapo_intervals())
    assert rep["passed"] and rep["covered"] == 8


def test_tutte_identity(example):
    for name in ("u12", "triangle"):
        assert tutte_via_transition(example(name))["passed"]


def test_kochol_agrees_with_cocompatible(example):
    assert kochol_cocompatible_agreement(example("triangle"), ["b", "c", "a"])


def test_matroid_validation():
    with pytest.raises(MultimatroidError):
        Matroid(["a", "b", "c"], [["a"], ["b", "c"]])
    with pytest.raises(MultimatroidError):
        Matroid(["a"], [])


def test_small_delta_polynomial(example):
    D = example("small_delta")
    want = x ** 3 + 3 * w * x * x * t + w * w * x * t * t + 2 * w * w * x + w ** 3 * t
    assert D.delta_transition() == want
    assert D.morse_expansion(["a", "b", "c"]) == want
    assert ex.transition_direct(lift_delta(D), delta_weights(D)) == want


def test_small_delta_activities_and_intervals(example):
    D = example("small_delta")
    order = ["a", "b", "c"]
    assert D.activities(["a", "b", "c"], order) == ({"a", "b"}, set())
    assert D.activities(["a"], order) == ({"a"}, set())
    assert D.activities(["b"], order) == (set(), {"a"})
    got = {iv.anchor: set(iv.members()) for iv in D.intervals(order)}
    assert got == {
        frozenset("abc"): sets("abc", "bc", "ac", "c"),
        frozenset("a"): sets("a", ""),
        frozenset("b"): sets("ab", "b"),
    }
    assert partition_report(D.elements, D.intervals(order))["passed"]


def test_small_delta_projection(example):
    Z = example("small_2matroid")
    assert project(Z, ["a.", "b.", "c."]) == example("small_delta")
    assert delta_from_lift(Z) == example("small_delta")
    assert lift_delta(example("small_delta")).same_bases(Z)


def test_distance(example):
    D = example("small_delta")
    assert D.distance(["c"]) == 2
    assert D.distance(["a"]) == 0
    Z = lift_delta(D)
    for m, n in Z.transversal_nullities.items():
        X = [lab[0] for lab in Z.carrier.labels_of(m) if lab.endswith(".")]
        assert D.distance(X) == n


def test_twist_and_exchange():
    D = DeltaMatroid(["a", "b"], [[], ["a", "b"]])
    assert D.delta_check()
    assert D.twist(["a"]).feasible() == sets("a", "b")
    with pytest.raises(MultimatroidError):
        DeltaMatroid(["a", "b", "c"], [[], ["a", "b", "c"]])


def test_matroid_lift_is_a_delta_lift(rng):
    for _ in range(20):
        M = random_matroid(rng)
        assert lift_matroid(M).same_bases(lift_delta(M.as_delta()))
        assert lift_matroid(M).check_axioms().valid


def test_random_delta_matroids_are_valid(rng):
    for _ in range(30):
        D = random_delta_matroid(rng)
        assert D.delta_check()
        assert D.morse_expansion() == D.delta_transition()


def test_json_round_trip(example):
    D = example("small_delta")
    assert DeltaMatroid.from_json(D.to_json()) == D
    M = example("triangle")
    assert Matroid.from_json(M.to_json()) == M
