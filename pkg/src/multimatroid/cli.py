"""Command-line front end: ``compute``, ``verify``, ``enumerate`` and ``convert``.

Exit status is 0 on success, 1 when a verification fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import expansions as ex
from . import io
from .core import MultimatroidError, PreconditionError
from .matroid_delta import lift_delta, lift_matroid
from .poly import Polynomial
from .ribbon import (
    classify_edges,
    lift_ribbon,
    quasi_tree_states,
    ribbon_activities_expansion,
    ribbon_delta,
    symbolic_ribbon_weights,
    topo_transition_direct,
    topo_transition_recursive,
)
from .verify import SUITES, random_suite, verify

PIPELINES = ("direct", "recursive", "activities", "classes", "cocompatible", "tutte", "morse")
_ALLOWED = {
    "multimatroid": ("direct", "recursive", "activities", "classes", "cocompatible"),
    "matroid": ("tutte", "activities", "cocompatible", "direct"),
    "delta-matroid": ("direct", "morse", "activities"),
    "ribbon-graph": ("direct", "recursive", "activities"),
}
_DEFAULT = {"multimatroid": "direct", "matroid": "tutte", "delta-matroid": "direct", "ribbon-graph": "direct"}
_ENUMERABLE = {
    "multimatroid": ("bases", "circuits", "activities", "intervals", "classes", "cocompatible"),
    "matroid": ("bases", "circuits", "activities", "intervals", "compatible"),
    "delta-matroid": ("feasible", "activities", "intervals"),
    "ribbon-graph": ("states", "bases", "classifications"),
}
_TARGETS = {
    "matroid": ("multimatroid",),
    "delta-matroid": ("multimatroid",),
    "ribbon-graph": ("multimatroid", "delta-matroid"),
    "multimatroid": (),
}


class InputError(Exception):
    pass


# argument handling

def _load(args):
    if args.input in (None, "-"):
        data = io.read_document(sys.stdin)
    else:
        data = io.read_document(args.input)
    kind, obj = io.load_object(data)
    if args.strict:
        Z = obj if kind == "multimatroid" else _lift(kind, obj)
        report = Z.check_axioms()
        if not report.valid:
            raise InputError("axiom check failed: " + json.dumps(report.to_json(), sort_keys=True))
    return kind, obj


def _lift(kind, obj):
    return {"matroid": lift_matroid, "delta-matroid": lift_delta, "ribbon-graph": lift_ribbon}[kind](obj)


def _order(args):
    if args.order is None:
        return None
    text = args.order.strip()
    if text.startswith("["):
        try:
            names = json.loads(text)
        except json.JSONDecodeError:
            raise InputError(f"bad --order {args.order!r}") from None
    else:
        names = [s.strip() for s in text.split(",") if s.strip()]
    if not all(isinstance(n, str) for n in names):
        raise InputError("--order must list labels")
    return names


def _weights_doc(args):
    if args.weights is None:
        return None
    text = args.weights
    if text == "symbolic":
        return text
    path = Path(text)
    if not text.lstrip().startswith("{") and path.is_file():
        text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"--weights is neither JSON nor a readable file: {args.weights!r}") from None
    if not isinstance(doc, dict):
        raise InputError("--weights must be a JSON object")
    return doc


def _scalar_map(doc, known) -> dict:
    out = {}
    for k, v in doc.items():
        if k not in known:
            raise InputError(f"weight given for unknown label {k!r}")
        out[k] = io.parse_scalar(v)
    return out


def _multimatroid_weights(Z, doc):
    if doc is None:
        return None
    if doc == "symbolic":
        return ex.symbolic_weights(Z)
    return _scalar_map(doc, set(Z.carrier.labels))


def _ribbon_weights(G, doc):
    if doc is None:
        return None, None, None
    if doc == "symbolic":
        return symbolic_ribbon_weights(G)
    extra = set(doc) - {"alpha", "beta", "gamma"}
    if extra:
        raise InputError(f"ribbon weights take 'alpha', 'beta', 'gamma'; got {sorted(extra)}")
    edges = set(G.edge_labels)
    return tuple(
        _scalar_map(doc[name], edges) if name in doc else None for name in ("alpha", "beta", "gamma")
    )


# verbs

def _compute(kind, obj, args) -> Polynomial:
    pipeline = args.pipeline or _DEFAULT[kind]
    if pipeline not in _ALLOWED[kind]:
        raise InputError(f"pipeline {pipeline!r} does not apply to a {kind}; "
                         f"choose from {', '.join(_ALLOWED[kind])}")
    order = _order(args)
    doc = _weights_doc(args)
    if kind == "multimatroid":
        w = _multimatroid_weights(obj, doc)
        if pipeline == "classes":
            if w is not None:
                raise InputError("the classes pipeline is unweighted")
            return ex.class_expansion(obj, order)
        fn = {
            "direct": lambda: ex.transition_direct(obj, w),
            "recursive": lambda: ex.transition_recursive(obj, w),
            "activities": lambda: ex.activities_expansion(obj, w, order),
            "cocompatible": lambda: ex.cocompatible_expansion(obj, w, order),
        }[pipeline]
        return fn()
    if kind == "ribbon-graph":
        a, b, g = _ribbon_weights(obj, doc)
        if pipeline == "direct":
            return topo_transition_direct(obj, a, b, g)
        if pipeline == "recursive":
            return topo_transition_recursive(obj, a, b, g, order)
        return ribbon_activities_expansion(obj, a, b, g, order)
    if kind == "matroid" and pipeline == "direct":
        Z = lift_matroid(obj)
        return ex.transition_direct(Z, _multimatroid_weights(Z, doc))
    if doc is not None:
        raise InputError(f"--weights does not apply to the {pipeline} pipeline of a {kind}")
    if kind == "matroid":
        return {
            "tutte": obj.tutte_rank_def,
            "activities": lambda: obj.tutte_activities(order),
            "cocompatible": lambda: obj.kochol_expansion(order),
        }[pipeline]()
    if pipeline == "direct":
        return obj.delta_transition()
    return obj.morse_expansion(order)


def _enumerate(kind, obj, what, order) -> list:
    if what not in _ENUMERABLE[kind]:
        raise InputError(f"cannot enumerate {what!r} for a {kind}; "
                         f"choose from {', '.join(_ENUMERABLE[kind])}")
    if kind == "ribbon-graph":
        states = quasi_tree_states(obj)
        if what == "states":
            return [{"X": sorted(X), "Y": sorted(Y), "Z": sorted(Z)} for X, Y, Z in states]
        if what == "bases":
            return lift_ribbon(obj).sorted_bases()
        return [classify_edges(obj, st, order).to_json() for st in states]
    if kind == "multimatroid":
        Z = obj
        if what == "bases":
            return Z.sorted_bases()
        if what == "circuits":
            return sorted(sorted(c) for c in Z.circuits())
        if what == "activities":
            return [ex.basis_activities(Z, b, order).to_json() for b in Z.sorted_bases()]
        if what == "intervals":
            return [iv.to_json() for iv in ex.interval_family(Z, order)]
        if what == "classes":
            return [bc.to_json() for bc in ex.basis_classes(Z, order)]
        return [{"transversal": Z.carrier.sorted_labels(m), "nullity": Z.nullity_mask(m)}
                for m in ex.cocompatible_transversals(Z, order)]
    if kind == "matroid":
        M = obj
        if what == "bases":
            return sorted(sorted(b) for b in M.bases())
        if what == "circuits":
            return sorted(sorted(c) for c in M.circuits())
        if what == "activities":
            out = []
            for b in sorted(sorted(b) for b in M.bases()):
                i, e = M.activities(b, order)
                out.append({"basis": b, "internal": sorted(i), "external": sorted(e)})
            return out
        if what == "intervals":
            return [iv.to_json() for iv in M.crapo_intervals(order)]
        return sorted(sorted(a) for a in M.kochol_sets(order))
    D = obj
    if what == "feasible":
        return sorted(sorted(f) for f in D.feasible())
    if what == "activities":
        out = []
        for f in sorted(sorted(f) for f in D.feasible()):
            i, e = D.activities(f, order)
            out.append({"feasible": f, "internal": sorted(i), "external": sorted(e)})
        return out
    return [iv.to_json() for iv in D.intervals(order)]


def _convert(kind, obj, target):
    if target not in _TARGETS[kind]:
        raise InputError(f"cannot convert a {kind} to a {target}")
    if target == "delta-matroid":
        return io.dump_object(target, ribbon_delta(obj))
    return io.dump_object(target, _lift(kind, obj))


# output

def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _print_report(rep: dict) -> None:
    title = rep.get("source", rep["kind"])
    print(f"{'PASS' if rep['passed'] else 'FAIL'} {title}")
    for chk in rep.get("checks", []):
        print(f"  [{'pass' if chk['passed'] else 'FAIL'}] {chk['name']}")
        if "intervals" in chk:
            rp = chk["report"]
            print(f"      {len(chk['intervals'])} intervals covering {rp['covered']} of {rp['subsets']} subsets")
            for iv in chk["intervals"]:
                print(f"      [{{{','.join(iv['lower'])}}}, {{{','.join(iv['upper'])}}}]")
        if not chk["passed"]:
            extra = {k: v for k, v in chk.items() if k not in ("name", "passed")}
            print("      " + json.dumps(extra, sort_keys=True))
    for f in rep.get("failures", []):
        print("  failure " + json.dumps(f, sort_keys=True))


def _run_compute(args) -> int:
    kind, obj = _load(args)
    p = _compute(kind, obj, args)
    if args.format == "json":
        _emit({"kind": kind, "pipeline": args.pipeline or _DEFAULT[kind],
               "polynomial": str(p), "terms": p.to_json()})
    else:
        print(p)
    return 0


def _run_verify(args) -> int:
    reports = []
    if args.input is not None or args.random is None:
        kind, obj = _load(args)
        rep = verify(kind, obj, _order(args))
        rep["source"] = args.input or "<stdin>"
        reports.append(rep)
        kinds = [kind]
    else:
        kinds = [args.kind] if args.kind else list(SUITES)
    if args.random:
        for k in ([args.kind] if args.kind else kinds):
            reports.append(random_suite(k, args.random, args.seed))
    if args.format == "json":
        _emit(reports if len(reports) > 1 else reports[0])
    else:
        for rep in reports:
            if "count" in rep:
                rep["source"] = f"{rep['count']} random {rep['kind']} objects, seed {rep['seed']}"
            _print_report(rep)
    return 0 if all(r["passed"] for r in reports) else 1


def _run_enumerate(args) -> int:
    kind, obj = _load(args)
    items = _enumerate(kind, obj, args.what, _order(args))
    if args.format == "json":
        _emit(items)
    else:
        for item in items:
            if isinstance(item, list) and all(isinstance(x, str) for x in item):
                print(" ".join(item) if item else "{}")
            else:
                print(json.dumps(item, sort_keys=True))
    return 0


def _run_convert(args) -> int:
    kind, obj = _load(args)
    _emit(_convert(kind, obj, args.to))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", help="labels least first, comma separated or a JSON list")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--strict", action="store_true", help="check the axioms while loading")

    parser = argparse.ArgumentParser(prog="multimatroid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("compute", parents=[common], help="print a polynomial")
    p.add_argument("input", nargs="?", help="JSON document, or - for standard input")
    p.add_argument("--pipeline", choices=PIPELINES)
    p.add_argument("--weights", help="JSON object (or file), or 'symbolic'")
    p.set_defaults(func=_run_compute)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("input", nargs="?")
    p.add_argument("--all", action="store_true", help="run every suite for the object (the default)")
    p.add_argument("--random", type=int, metavar="N", help="also check N generated objects")
    p.add_argument("--kind", choices=io.KINDS, help="kind of generated objects")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_run_verify)

    p = sub.add_parser("enumerate", parents=[common], help="list derived structures")
    p.add_argument("what", choices=sorted({w for ws in _ENUMERABLE.values() for w in ws}))
    p.add_argument("input", nargs="?")
    p.set_defaults(func=_run_enumerate)

    p = sub.add_parser("convert", parents=[common], help="apply a lift")
    p.add_argument("input", nargs="?")
    p.add_argument("--to", required=True, choices=("multimatroid", "delta-matroid"))
    p.set_defaults(func=_run_convert)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MultimatroidError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
