"""Time the compiled kernels against the pure-Python ones on identical inputs.

    python benchmarks/bench_kernels.py [--edges 7] [--classes 8] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import timeit

from multimatroid import _pykernels, kernels
from multimatroid.generators import random_multimatroid, random_ribbon_graph

try:
    from multimatroid import _ckernels
except ImportError:
    _ckernels = None


def _ribbon_input(edges: int, seed: int):
    rng = random.Random(seed)
    G = random_ribbon_graph(rng, max_edges=edges, min_edges=edges, max_vertices=3)
    vstart, rot, edge_of, mate, twist, _ = G._layout()
    return (vstart, rot, edge_of, mate, twist, edges)


def _rank_input(classes: int, seed: int):
    rng = random.Random(seed)
    while True:
        Z = random_multimatroid(rng, max_classes=classes, max_size=3)
        if len(Z.carrier) == classes:
            break
    return list(Z.basis_masks), list(Z.carrier.transversals())


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--edges", type=int, default=7)
    ap.add_argument("--classes", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"selected backend: {kernels.BACKEND}")
    if _ckernels is None:
        print("compiled extension not built; nothing to compare")
        return

    rib = _ribbon_input(args.edges, args.seed)
    bases, queries = _rank_input(args.classes, args.seed)
    cases = [
        (f"state_boundary_counts ({3 ** args.edges} states)", "state_boundary_counts", rib),
        (f"max_intersections ({len(bases)} bases x {len(queries)} transversals)",
         "max_intersections", (bases, queries)),
    ]
    for title, fn, inputs in cases:
        py = getattr(_pykernels, fn)
        cy = getattr(_ckernels, fn)
        assert py(*inputs) == cy(*inputs), f"backends disagree on {fn}"
        tp = min(timeit.repeat(lambda: py(*inputs), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: cy(*inputs), number=1, repeat=args.repeat))
        print(f"{title}\n  python {tp * 1e3:9.2f} ms   cython {tc * 1e3:9.2f} ms   speedup {tp / tc:6.1f}x")


if __name__ == "__main__":
    main()
