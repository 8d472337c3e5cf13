import pytest

from multimatroid.core import MultimatroidError, PreconditionError
from multimatroid.expansions import basis_activities, transition_direct
from multimatroid.generators import random_ribbon_graph
from multimatroid.poly import T, Polynomial, named
from multimatroid.ribbon import (
    RibbonGraph,
    boundary_trace,
    classify_edges,
    lift_ribbon,
    multimatroid_weights,
    quasi_tree_states,
    ribbon_activities_expansion,
    ribbon_delta,
    state_summand,
    symbolic_ribbon_weights,
    topo_transition_direct,
    topo_transition_recursive,
)

ORDER = ["a", "b", "c"]
STATE = (frozenset("bc"), frozenset(), frozenset("a"))
t = Polynomial.var(T)


def sym(name, e):
    return Polynomial.var(named(f"{name}[{e}]"))


def plane_loop(twisted=False):
    return RibbonGraph([["h1", "h2"]], {"e": ("h1", "h2", twisted)})


def test_quasi_tree_graph_matches_the_3matroid(example):
    G = example("quasi_tree")
    assert G.boundary_count() == 1
    assert G.connected_components() == 1
    assert len(quasi_tree_states(G)) == 16
    assert lift_ribbon(G).same_bases(example("tight_3matroid"))


def test_quasi_tree_polynomials(example):
    G = example("quasi_tree")
    want = t ** 3 + 10 * t * t + 16 * t
    assert topo_transition_direct(G) == want
    assert topo_transition_recursive(G, order=ORDER) == want
    assert ribbon_activities_expansion(G, order=ORDER) == want


def test_summand_of_one_state(example):
    G = example("quasi_tree")
    a, b, g = symbolic_ribbon_weights(G)
    got = state_summand(G, STATE, a, b, g, ORDER)
    want = sym("alpha", "c") * (t * sym("beta", "a") / 2 + sym("gamma", "a")) \
        * (t * sym("beta", "b") / 2 + sym("alpha", "b"))
    assert got == want


def test_classification_of_one_state(example):
    cl = classify_edges(example("quasi_tree"), STATE, ORDER)
    assert cl.interlaced == {frozenset("ac"), frozenset("bc")}
    assert cl.orientable == {"a": True, "b": True, "c": False}
    assert {e: cl.category(e) for e in "abc"} == {"a": "AO", "b": "AO", "c": "IA"}


def test_classification_rejects_non_quasi_trees(example):
    G = example("quasi_tree")
    with pytest.raises(PreconditionError):
        classify_edges(G, (frozenset(), frozenset("abc"), frozenset()))


def test_active_sets_match_the_lift(example):
    G = example("quasi_tree")
    Z = lift_ribbon(G)
    slot = {0: ".", 1: "-", 2: "^"}
    for st in quasi_tree_states(G):
        basis = [e + slot[i] for i, block in enumerate(st) for e in block]
        rep = basis_activities(Z, basis, ORDER)
        cl = classify_edges(G, st, ORDER)
        assert rep.active == {e for e, v in cl.active.items() if v}


@pytest.mark.parametrize("twisted,kind,slot", [
    (False, "trivial orientable loop", "e."),
    (True, "trivial nonorientable loop", "e^"),
])
def test_trivial_loops(twisted, kind, slot):
    G = plane_loop(twisted)
    assert G.edge_kind("e") == kind
    assert lift_ribbon(G).singular_elements() == {slot}


def test_bridge():
    G = RibbonGraph([["h1"], ["h2"]], {"e": ("h1", "h2", False)})
    assert G.edge_kind("e") == "bridge"
    assert lift_ribbon(G).singular_elements() == {"e-"}
    assert G.contract("e").boundary_count() == G.boundary_count() == 1


def test_plane_loop_boundaries():
    assert plane_loop().boundary_count() == 2
    assert plane_loop(True).boundary_count() == 1
    assert plane_loop().partial_petrial(["e"]) == plane_loop(True)
    assert plane_loop().delete(["e"]).boundary_count() == 1


def test_boundary_trace_counts(example):
    G = example("quasi_tree")
    for Y, Z in [((), ()), ("a", "b"), ("abc", ())]:
        tr = boundary_trace(G, Y, Z)
        assert tr.count() == G.b_of_state(Y, Z)


def test_empty_graph():
    G = RibbonGraph([[]], {})
    assert G.boundary_count() == 1
    assert topo_transition_direct(G) == t
    assert topo_transition_recursive(G) == t


def test_invalid_graphs():
    with pytest.raises(MultimatroidError):
        RibbonGraph([["h1", "h1"]], {"e": ("h1", "h1", False)})
    with pytest.raises(MultimatroidError):
        RibbonGraph([["h1"]], {"e": ("h1", "h2", False)})


def test_ribbon_delta_matches_projection(example):
    D = ribbon_delta(example("quasi_tree"))
    assert D == example("small_delta")


def test_random_graphs_agree(rng):
    for _ in range(25):
        G = random_ribbon_graph(rng, max_edges=4)
        a, b, g = symbolic_ribbon_weights(G)
        d = topo_transition_direct(G, a, b, g)
        k = G.connected_components()
        assert topo_transition_recursive(G, a, b, g) == d
        assert ribbon_activities_expansion(G, a, b, g) == d
        lift = transition_direct(lift_ribbon(G), multimatroid_weights(G, a, b, g))
        assert Polynomial.var(T, k) * lift == d


def test_json_round_trip(example):
    G = example("quasi_tree")
    assert RibbonGraph.from_json(G.to_json()) == G
