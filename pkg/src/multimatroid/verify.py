"""Invariant suites returning JSON-ready pass/fail reports with witnesses."""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .core import DOT, Multimatroid
from .expansions import (
    activities_expansion,
    basis_classes,
    class_expansion,
    cocompatible_closure,
    cocompatible_expansion,
    cocompatible_transversals,
    cover_multiplicity_check,
    is_cocompatible,
    nullity_identity_failures,
    symbolic_weights,
    transition_direct,
    transition_recursive,
)
from .matroid_delta import (
    DeltaMatroid,
    Matroid,
    delta_weights,
    kochol_cocompatible_agreement,
    lift_delta,
    lift_matroid,
    partition_report,
    tutte_via_transition,
)
from .poly import T, Polynomial
from .ribbon import (
    RibbonGraph,
    lift_ribbon,
    multimatroid_weights,
    ribbon_activities_expansion,
    ribbon_delta,
    symbolic_ribbon_weights,
    topo_transition_direct,
    topo_transition_recursive,
)

Order = Sequence[str] | None
_PINNED = {"bridge": "-", "trivial orientable loop": ".", "trivial nonorientable loop": "^"}


def _check(name: str, passed: bool, **details) -> dict:
    out = {"name": name, "passed": bool(passed)}
    out.update(details)
    return out


def _report(kind: str, checks: list[dict]) -> dict:
    return {"kind": kind, "passed": all(c["passed"] for c in checks), "checks": checks}


def _agree(name: str, polys: dict[str, Polynomial]) -> dict:
    values = {k: str(p) for k, p in polys.items()}
    first = next(iter(polys.values()))
    return _check(name, all(p == first for p in polys.values()), values=values)


def _reverse(names) -> list[str]:
    return list(reversed(list(names)))


def verify_multimatroid(Z: Multimatroid, order: Order = None) -> dict:
    c = Z.carrier
    checks = []
    ax = Z.check_axioms()
    checks.append(_check("axioms", ax.valid, witnesses=ax.to_json()))
    if not ax.valid:
        # everything below presumes a multimatroid
        return _report("multimatroid", checks)
    circuits = Z.circuit_masks
    nested = [(c.sorted_labels(a), c.sorted_labels(b)) for a in circuits for b in circuits
              if a != b and a & b == a]
    checks.append(_check("circuits form an antichain", not nested, witnesses=nested[:5]))

    w = symbolic_weights(Z)
    polys = {
        "direct": transition_direct(Z, w),
        "recursive": transition_recursive(Z, w),
    }
    if not c.is_degenerate():
        polys["activities"] = activities_expansion(Z, w, order)
        polys["activities (reversed order)"] = activities_expansion(Z, w, _reverse(c.names))
        polys["cocompatible"] = cocompatible_expansion(Z, w, order)
    checks.append(_agree("weighted pipelines agree", polys))

    if not c.is_degenerate():
        cover = cover_multiplicity_check(Z, order)
        checks.append(_check("interval cover multiplicity", cover["passed"],
                             transversals=cover["transversals"], witnesses=cover["mismatches"][:5]))
        bad_sizes = []
        for bc in basis_classes(Z, order):
            expected = 1
            for name in bc.active:
                expected *= len(c.classes[c.class_index[name]]) - 1
            if len(bc.members) != expected:
                bad_sizes.append({"representative": sorted(bc.representative),
                                  "size": len(bc.members), "expected": expected})
        checks.append(_check("basis class sizes", not bad_sizes, witnesses=bad_sizes[:5]))
        if c.q():
            checks.append(_agree("class expansion", {
                "direct": transition_direct(Z), "classes": class_expansion(Z, order)}))
        checks.append(_cocompatible_checks(Z, order))
    return _report("multimatroid", checks)


def _cocompatible_checks(Z: Multimatroid, order: Order) -> dict:
    c = Z.carrier
    bad = []
    for m in c.transversals():
        labels = c.labels_of(m)
        cl = cocompatible_closure(Z, labels, order)
        if not is_cocompatible(Z, cl, order):
            bad.append({"transversal": sorted(labels), "problem": "closure not cocompatible"})
        elif cocompatible_closure(Z, cl, order) != cl:
            bad.append({"transversal": sorted(labels), "problem": "closure not idempotent"})
    for f in nullity_identity_failures(Z, order):
        bad.append(dict(f, problem="nullity identity"))
    return _check("cocompatible closure and nullity identity", not bad,
                  cocompatible=len(cocompatible_transversals(Z, order)), witnesses=bad[:5])


def verify_matroid(M: Matroid, order: Order = None) -> dict:
    checks = [_agree("Tutte polynomial pipelines agree", {
        "rank": M.tutte_rank_def(),
        "activities": M.tutte_activities(order),
        "kochol": M.kochol_expansion(order),
    })]
    nk, nb = len(M.kochol_sets(order)), len(M.bases())
    checks.append(_check("compatible sets match bases in number", nk == nb, compatible=nk, bases=nb))
    rep = partition_report(M.elements, M.crapo_intervals(order))
    checks.append(_check("Crapo intervals partition the subsets", rep["passed"], report=rep))
    tv = tutte_via_transition(M)
    checks.append(_check("Tutte polynomial from the transition polynomial", tv["passed"],
                         lhs=tv["lhs"], rhs=tv["rhs"]))
    checks.append(_check("compatible sets are the cocompatible transversals",
                         kochol_cocompatible_agreement(M, order)))
    ax = lift_matroid(M).check_axioms()
    checks.append(_check("lift satisfies the axioms", ax.valid, witnesses=ax.to_json()))
    return _report("matroid", checks)


def verify_delta(D: DeltaMatroid, order: Order = None) -> dict:
    checks = []
    viol = D.exchange_violations()
    checks.append(_check("symmetric exchange", not viol, witnesses=viol[:5]))
    Z = lift_delta(D)
    checks.append(_agree("transition polynomial pipelines agree", {
        "subsets": D.delta_transition(),
        "morse": D.morse_expansion(order),
        "lift": transition_direct(Z, delta_weights(D)),
    }))
    intervals = D.intervals(order)
    rep = partition_report(D.elements, intervals)
    checks.append(_check("intervals partition the subsets", rep["passed"], report=rep,
                         intervals=[iv.to_json() for iv in intervals]))
    bad = []
    c = Z.carrier
    for m, n in Z.transversal_nullities.items():
        X = [c.names[c.class_of[i]] for i in range(len(c.labels)) if m >> i & 1 and c.labels[i].endswith(DOT)]
        if D.distance(X) != n:
            bad.append({"subset": sorted(X), "distance": D.distance(X), "nullity": n})
    checks.append(_check("distance equals nullity in the lift", not bad, witnesses=bad[:5]))
    ax = Z.check_axioms()
    checks.append(_check("lift satisfies the axioms", ax.valid, witnesses=ax.to_json()))
    return _report("delta-matroid", checks)


def verify_ribbon(G: RibbonGraph, order: Order = None) -> dict:
    checks = []
    Z = lift_ribbon(G)
    a, b, g = symbolic_ribbon_weights(G)
    k = G.connected_components()
    checks.append(_agree("topological transition pipelines agree", {
        "direct": topo_transition_direct(G, a, b, g),
        "recursive": topo_transition_recursive(G, a, b, g, order),
        "activities": ribbon_activities_expansion(G, a, b, g, order),
        "lift": Polynomial.var(T, k) * transition_direct(Z, multimatroid_weights(G, a, b, g)),
    }))
    ax = Z.check_axioms()
    checks.append(_check("lift satisfies the axioms", ax.valid, witnesses=ax.to_json()))
    checks.append(_check("lift is tight", Z.is_tight()))
    bad = []
    singular = {lab for lab in Z.singular_elements()}
    for e in G.edge_labels:
        kind = G.edge_kind(e)
        expected = {e + _PINNED[kind]} if kind in _PINNED else set()
        got = {lab for lab in singular if lab[:-1] == e}
        if got != expected:
            bad.append({"edge": e, "kind": kind, "singular": sorted(got)})
    checks.append(_check("singular classes are bridges and trivial loops", not bad, witnesses=bad))
    bad = [e for e in G.edge_labels if G.contract(e).boundary_count() != G.boundary_count()]
    checks.append(_check("contraction preserves boundary components", not bad, witnesses=bad))
    D = ribbon_delta(G)
    checks.append(_check("ribbon delta-matroid satisfies exchange", D.delta_check()))
    return _report("ribbon-graph", checks)


SUITES: dict[str, Callable] = {
    "multimatroid": verify_multimatroid,
    "matroid": verify_matroid,
    "delta-matroid": verify_delta,
    "ribbon-graph": verify_ribbon,
}


def verify(kind: str, obj, order: Order = None) -> dict:
    return SUITES[kind](obj, order)


def random_suite(kind: str, count: int, seed: int = 0) -> dict:
    """Run the suite for ``kind`` on ``count`` generated objects with shuffled orders."""
    from . import generators as gen

    rng = random.Random(seed)
    make = {
        "multimatroid": lambda: gen.random_multimatroid(rng),
        "matroid": lambda: gen.random_matroid(rng),
        "delta-matroid": lambda: gen.random_delta_matroid(rng),
        "ribbon-graph": lambda: gen.random_ribbon_graph(rng),
    }[kind]
    failures = []
    for i in range(count):
        obj = make()
        names = obj.carrier.names if kind == "multimatroid" else (
            obj.edge_labels if kind == "ribbon-graph" else obj.elements)
        rep = verify(kind, obj, gen.random_order(rng, names))
        if not rep["passed"]:
            failures.append({"index": i, "object": obj.to_json(),
                             "failed": [c["name"] for c in rep["checks"] if not c["passed"]]})
    return {"kind": kind, "seed": seed, "count": count, "passed": not failures, "failures": failures[:3]}
