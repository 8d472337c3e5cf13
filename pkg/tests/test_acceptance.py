"""End-to-end acceptance criteria, one test per criterion."""

import random
import time

import pytest

from multimatroid import expansions as ex
from multimatroid import generators as gen
from multimatroid.core import Carrier, Multimatroid
from multimatroid.matroid_delta import (
    lift_delta,
    lift_matroid,
    partition_report,
    tutte_via_transition,
)
from multimatroid.poly import T, Polynomial
from multimatroid.ribbon import (
    lift_ribbon,
    ribbon_activities_expansion,
    state_summand,
    symbolic_ribbon_weights,
    topo_transition_direct,
    topo_transition_recursive,
)

ABC = ["a", "b", "c"]
SEED = 20261016
t = Polynomial.var(T)
x, y, w = (Polynomial.var(v) for v in "xyw")
Q11 = t * t + 10 * t + 16


def labels(*groups):
    return {frozenset(g.split()) for g in groups}


@pytest.fixture(autouse=True)
def time_budget():
    start = time.perf_counter()
    yield
    assert time.perf_counter() - start < 10, "criterion exceeded its 10 second budget"


def criterion(n, text):
    return pytest.mark.acceptance(title=f"criterion {n}: {text}")


@criterion(1, "golden polynomials and circuit sets")
def test_golden_values(example):
    Z = example("tight_3matroid")
    assert ex.transition_direct(Z) == Q11
    assert ex.transition_recursive(Z) == Q11
    assert ex.activities_expansion(Z, order=ABC) == Q11
    assert ex.cocompatible_expansion(Z, order=ABC) == Q11
    assert ex.transition_direct(example("mixed_carrier")) == 4 * t + 8
    assert example("mixed_carrier").circuits() == labels("d g i", "e h i", "f j")
    assert Z.circuits() == labels("a- b-", "a- c.", "b- c.", "a. b. c-", "a^ b^ c-", "a^ b. c^", "a. b^ c^")


@criterion(2, "activities ledger of the tight 3-matroid")
def test_activity_ledger(example):
    Z = example("tight_3matroid")
    by_active = {}
    for b in Z.bases():
        by_active.setdefault(ex.basis_activities(Z, b, ABC).active, set()).add(b)
    assert by_active[frozenset("ab")] == labels("a. b. c.", "a^ b. c.", "a. b^ c.", "a^ b^ c.")
    assert len(by_active[frozenset("a")]) == 12
    assert set(by_active) == {frozenset("ab"), frozenset("a")}
    half = t / 2 + 1
    assert ex.activities_expansion(Z, order=ABC) == 4 * half ** 2 + 12 * half


@criterion(3, "interval cover multiplicities")
def test_interval_cover(example):
    Z = example("tight_3matroid")
    assert ex.interval_multiplicity(Z, ["a-", "b-", "c."], ABC) == 4
    for m, n in Z.transversal_nullities.items():
        if n == 1:
            assert ex.interval_multiplicity(Z, Z.carrier.labels_of(m), ABC) == 2
    rng = random.Random(SEED)
    sizes = set()
    for _ in range(100):
        R = gen.random_multimatroid(rng, max_classes=5, max_size=4)
        assert len(R.carrier) <= 5
        sizes.update(R.carrier.sizes)
        rep = ex.cover_multiplicity_check(R, gen.random_order(rng, R.carrier.names))
        assert rep["passed"], rep["mismatches"][:3]
    assert sizes == {2, 3, 4}


@criterion(4, "basis equivalence classes")
def test_equivalence_classes(example):
    Z = example("tight_3matroid")
    assert sorted(len(c.members) for c in ex.basis_classes(Z, ABC)) == [2] * 6 + [4]
    assert ex.a_coefficients(Z, ABC) == [7, 8, 1, 0]
    assert ex.class_expansion(Z, ABC) == (t + 2) ** 2 + 6 * (t + 2) == Q11
    rng = random.Random(SEED + 4)
    for _ in range(60):
        R = gen.random_multimatroid(rng, max_classes=5, max_size=4)
        c = R.carrier
        for bc in ex.basis_classes(R, gen.random_order(rng, c.names)):
            expected = 1
            for name in bc.active:
                expected *= len(c.classes[c.class_index[name]]) - 1
            assert len(bc.members) == expected


@criterion(5, "cocompatible transversals")
def test_cocompatible_suite(example):
    Z = example("tight_3matroid")
    cc = ex.cocompatible_transversals(Z, ABC)
    assert sorted(Z.nullity_mask(m) for m in cc) == [1, 1, 1, 1, 1, 1, 2]
    assert sum(((t + 2) ** Z.nullity_mask(m) for m in cc), Polynomial()) == Q11
    rng = random.Random(SEED + 5)
    for _ in range(60):
        R = gen.random_multimatroid(rng, max_classes=4, max_size=4)
        order = gen.random_order(rng, R.carrier.names)
        for m in R.carrier.transversals():
            cl = ex.cocompatible_closure(R, R.carrier.labels_of(m), order)
            assert ex.is_cocompatible(R, cl, order)
            assert ex.cocompatible_closure(R, cl, order) == cl
        assert not ex.nullity_identity_failures(R, order)


@criterion(6, "matroid bridge to the Tutte polynomial")
def test_matroid_bridge(example):
    assert example("u12").tutte_rank_def() == x + y
    assert example("triangle").tutte_rank_def() == x * x + x + y
    rng = random.Random(SEED + 6)
    matroids = [example("u12"), example("triangle")] + [gen.random_matroid(rng, 6) for _ in range(50)]
    for M in matroids:
        want = M.tutte_rank_def()
        for _ in range(3):
            order = gen.random_order(rng, M.elements)
            assert M.tutte_activities(order) == want
            assert M.kochol_expansion(order) == want
            assert len(M.kochol_sets(order)) == len(M.bases())
            assert partition_report(M.elements, M.crapo_intervals(order))["passed"]
        assert tutte_via_transition(M)["passed"]


@criterion(7, "delta-matroid transition polynomial and intervals")
def test_delta_suite(example):
    D = example("small_delta")
    want = x ** 3 + 3 * w * x * x * t + w * w * x * t * t + 2 * w * w * x + w ** 3 * t
    assert D.delta_transition() == want
    assert D.morse_expansion(ABC) == want
    got = {iv.anchor: set(iv.members()) for iv in D.intervals(ABC)}
    assert got == {
        frozenset("abc"): labels("a b c", "b c", "a c", "c"),
        frozenset("a"): {frozenset("a"), frozenset()},
        frozenset("b"): labels("a b", "b"),
    }
    rng = random.Random(SEED + 7)
    for _ in range(50):
        R = gen.random_delta_matroid(rng, 6)
        assert R.morse_expansion(gen.random_order(rng, R.elements)) == R.delta_transition()
        Z = lift_delta(R)
        for m, n in Z.transversal_nullities.items():
            X = [lab[:-1] for lab in Z.carrier.labels_of(m) if lab.endswith(".")]
            assert R.distance(X) == n


@criterion(8, "ribbon graph quasi-tree expansion")
def test_ribbon_suite(example):
    G = example("quasi_tree")
    assert G.boundary_count() == 1
    assert lift_ribbon(G).same_bases(example("tight_3matroid"))
    assert topo_transition_direct(G) == t * Q11
    a, b, g = symbolic_ribbon_weights(G)

    def v(name, e):
        return Polynomial.var(f"{name}[{e}]")

    summand = state_summand(G, (frozenset("bc"), frozenset(), frozenset("a")), a, b, g, ABC)
    assert summand == v("alpha", "c") * (t * v("beta", "a") / 2 + v("gamma", "a")) \
        * (t * v("beta", "b") / 2 + v("alpha", "b"))

    pinned = {"bridge": "-", "trivial orientable loop": ".", "trivial nonorientable loop": "^"}
    rng = random.Random(SEED + 8)
    for _ in range(50):
        R = gen.random_ribbon_graph(rng, max_edges=5)
        order = gen.random_order(rng, R.edge_labels)
        d = topo_transition_direct(R)
        Z = lift_ribbon(R)
        assert topo_transition_recursive(R, order=order) == d
        assert ribbon_activities_expansion(R, order=order) == d
        assert Polynomial.var(T, R.connected_components()) * ex.transition_direct(Z) == d
        assert Z.check_axioms().valid
        assert Z.is_tight() or not R.edge_labels
        for e in R.edge_labels:
            kind = R.edge_kind(e)
            expected = {e + pinned[kind]} if kind in pinned else set()
            assert {s for s in Z.singular_elements() if s[:-1] == e} == expected
            assert R.contract(e).boundary_count() == R.boundary_count()


def _adjoin_stuck_class(Z):
    """Add a class {p, q, r} where only p ever appears; R2 fails at the empty set."""
    c = Z.carrier
    carrier = Carrier([list(cl) for cl in c.classes] + [["p", "q", "r"]], list(c.names) + ["new"])
    return Multimatroid(carrier, [list(b) + ["p"] for b in Z.bases()])


def _r2_value(Z, witness):
    r = lambda labs: max(len(b & set(labs)) for b in Z.bases())
    s = witness["set"]
    xx, yy = witness["pair"]
    return r(s + [xx]) + r(s + [yy]) - 2 * r(s)


@criterion(9, "axiom checking accepts lifts and rejects R2 violations")
def test_axiom_fuzzing():
    rng = random.Random(SEED + 9)
    lifts = []
    for _ in range(30):
        lifts.append(lift_matroid(gen.random_matroid(rng)))
        lifts.append(lift_delta(gen.random_delta_matroid(rng)))
        lifts.append(lift_ribbon(gen.random_ribbon_graph(rng)))
    for Z in lifts:
        assert Z.check_axioms().valid

    bad = [
        Multimatroid.from_lists([["x", "y", "z"]], [["x"]]),
        Multimatroid.from_lists([["a1", "a2", "a3"], ["b1", "b2"]], [["a1", "b1"], ["a1", "b2"]]),
    ] + [_adjoin_stuck_class(Z) for Z in lifts[:20]]
    for Z in bad:
        rep = Z.check_axioms()
        assert not rep.valid and rep.r2_violations
        witness = rep.r2_violations[0]
        assert _r2_value(Z, witness) < 1
