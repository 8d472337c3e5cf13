"""Invariants checked on generated objects."""

import random

from hypothesis import given
from hypothesis import strategies as st

from multimatroid import expansions as ex
from multimatroid import generators as gen
from multimatroid.matroid_delta import (
    delta_from_lift,
    kochol_cocompatible_agreement,
    lift_delta,
    partition_report,
    tutte_via_transition,
)
from multimatroid.poly import T, Polynomial
from multimatroid.ribbon import (
    lift_ribbon,
    ribbon_activities_expansion,
    ribbon_delta,
    topo_transition_direct,
    topo_transition_recursive,
)

seeds = st.integers(0, 2 ** 32)


def setup(seed):
    rng = random.Random(seed)
    return rng, gen.random_multimatroid(rng, max_classes=4)


@given(seeds)
def test_generated_multimatroids_satisfy_the_axioms(seed):
    _, Z = setup(seed)
    assert Z.check_axioms().valid


@given(seeds)
def test_rank_is_bounded_and_monotone(seed):
    rng, Z = setup(seed)
    c = Z.carrier
    for t in c.transversals():
        r = Z.rank_mask(t)
        assert 0 <= r <= len(c)
        for i in range(len(c.labels)):
            if t >> i & 1:
                assert Z.rank_mask(t & ~(1 << i)) in (r, r - 1)


@given(seeds)
def test_pipelines_agree_under_any_weights_and_order(seed):
    rng, Z = setup(seed)
    w = gen.random_weights(rng, Z.carrier.labels)
    order = gen.random_order(rng, Z.carrier.names)
    d = ex.transition_direct(Z, w)
    assert ex.transition_recursive(Z, w) == d
    assert ex.activities_expansion(Z, w, order) == d
    assert ex.cocompatible_expansion(Z, w, order) == d


@given(seeds)
def test_unweighted_polynomial_counts_transversals(seed):
    _, Z = setup(seed)
    total = 1
    for cl in Z.carrier.classes:
        total *= len(cl)
    assert ex.transition_direct(Z).evaluate({T: 1}) == total


@given(seeds)
def test_interval_cover_multiplicity(seed):
    rng, Z = setup(seed)
    assert ex.cover_multiplicity_check(Z, gen.random_order(rng, Z.carrier.names))["passed"]


@given(seeds)
def test_basis_class_sizes(seed):
    rng, Z = setup(seed)
    c = Z.carrier
    for bc in ex.basis_classes(Z, gen.random_order(rng, c.names)):
        size = 1
        for name in bc.active:
            size *= len(c.classes[c.class_index[name]]) - 1
        assert len(bc.members) == size


@given(seeds)
def test_cocompatible_closure(seed):
    rng, Z = setup(seed)
    order = gen.random_order(rng, Z.carrier.names)
    for m in Z.carrier.transversals():
        cl = ex.cocompatible_closure(Z, Z.carrier.labels_of(m), order)
        assert ex.is_cocompatible(Z, cl, order)
        assert ex.cocompatible_closure(Z, cl, order) == cl
    assert not ex.nullity_identity_failures(Z, order)


@given(seeds)
def test_minors_and_restrictions_stay_multimatroids(seed):
    rng, Z = setup(seed)
    label = rng.choice(Z.carrier.labels)
    assert Z.minor(label).check_axioms().valid
    assert Z.restriction(Z.class_name_of(label)).check_axioms().valid


@given(seeds)
def test_matroid_tutte_forms(seed):
    rng = random.Random(seed)
    M = gen.random_matroid(rng)
    order = gen.random_order(rng, M.elements)
    T_ = M.tutte_rank_def()
    assert M.tutte_activities(order) == T_
    assert M.kochol_expansion(order) == T_
    assert len(M.kochol_sets(order)) == len(M.bases())
    assert partition_report(M.elements, M.crapo_intervals(order))["passed"]
    assert tutte_via_transition(M)["passed"]
    assert kochol_cocompatible_agreement(M, order)


@given(seeds)
def test_delta_matroid_expansions(seed):
    rng = random.Random(seed)
    D = gen.random_delta_matroid(rng)
    order = gen.random_order(rng, D.elements)
    assert D.delta_check()
    assert D.morse_expansion(order) == D.delta_transition()
    assert partition_report(D.elements, D.intervals(order))["passed"]
    Z = lift_delta(D)
    assert Z.check_axioms().valid
    assert delta_from_lift(Z) == D


@given(seeds)
def test_ribbon_pipelines(seed):
    rng = random.Random(seed)
    G = gen.random_ribbon_graph(rng, max_edges=4)
    order = gen.random_order(rng, G.edge_labels)
    w = [gen.random_weights(rng, G.edge_labels) for _ in range(3)]
    d = topo_transition_direct(G, *w)
    assert topo_transition_recursive(G, *w, order=order) == d
    assert ribbon_activities_expansion(G, *w, order=order) == d
    k = G.connected_components()
    assert Polynomial.var(T, k) * ex.transition_direct(lift_ribbon(G)) == topo_transition_direct(G)
    assert ribbon_delta(G).delta_check()
    for e in G.edge_labels:
        assert G.contract(e).boundary_count() == G.boundary_count()


@given(seeds)
def test_partial_petrial_is_an_involution(seed):
    rng = random.Random(seed)
    G = gen.random_ribbon_graph(rng)
    A = [e for e in G.edge_labels if rng.random() < 0.5]
    assert G.partial_petrial(A).partial_petrial(A) == G
